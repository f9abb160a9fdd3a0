#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace modsign {

/// CDF of the Sato-Tate measure (2/pi) sqrt(1 - t^2) dt on [-1, 1].
double st_cdf(double x);
/// Right-continuous CDF of (1/2pi) dt/sqrt(1 - t^2) + (1/2) delta_0 on [-1, 1].
double cm_cdf(double x);
/// Left limit F(x-) of cm_cdf.
double cm_cdf_left(double x);

/// A reference law on the line given by its CDF, left limits and atom locations.
struct ReferenceDistribution {
  std::string name;
  std::function<double(double)> cdf;
  std::function<double(double)> cdf_left;
  std::vector<double> atoms;
};

ReferenceDistribution sato_tate_distribution();
ReferenceDistribution cm_distribution();
ReferenceDistribution uniform_distribution(double lo, double hi);

/// sup_x |F_n(x) - F(x)|, comparing both one-sided limits at every sample
/// value and at every atom of the reference. Sample order is irrelevant.
/// Throws EmptySampleError on an empty sample.
double ks_statistic(std::span<const double> samples, const ReferenceDistribution& reference);

/// q * pi with q = num/den.
struct PiMultiple {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const;
  friend bool operator==(const PiMultiple& a, const PiMultiple& b) { return a.num * b.den == b.num * a.den; }
  friend bool operator<(const PiMultiple& a, const PiMultiple& b) { return a.num * b.den < b.num * a.den; }
};

struct OpenInterval {
  PiMultiple lo;
  PiMultiple hi;
};

/// Disjoint sorted open subintervals of [0, pi].
class IntervalUnion {
 public:
  IntervalUnion() = default;
  /// Throws DomainError unless intervals are inside [0, pi], non-empty, sorted and disjoint.
  explicit IntervalUnion(std::vector<OpenInterval> intervals);

  const std::vector<OpenInterval>& intervals() const noexcept { return intervals_; }
  bool empty() const noexcept { return intervals_.empty(); }
  bool contains(const PiMultiple& x) const;
  bool contains(double theta) const;

 private:
  std::vector<OpenInterval> intervals_;
};

struct SignIntervals {
  IntervalUnion positive;  // sin((nu+1) theta) > 0
  IntervalUnion negative;  // sin((nu+1) theta) < 0
};

/// Sign regions of sin((nu+1) theta) on (0, pi) for odd nu. DomainError for even nu.
SignIntervals sign_interval_union(unsigned nu);

enum class MeasureKind { sato_tate, cm };

/// Measure of U in the angle coordinate: (2/pi) sin^2(theta) d theta for
/// Sato-Tate; (1/2pi) d theta + (1/2) delta_{pi/2} for CM, the atom counted only
/// when pi/2 is interior to one of the intervals.
double measure_of_union(const IntervalUnion& u, MeasureKind kind);

}  // namespace modsign

#include "modsign/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modsign/errors.hpp"

namespace modsign {
namespace {

void check_unit_interval(double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("CDF argument outside [-1, 1]");
}

}  // namespace

double st_cdf(double x) {
  check_unit_interval(x);
  return 0.5 + (x * std::sqrt(1.0 - x * x) + std::asin(x)) / std::numbers::pi;
}

namespace {

double cm_continuous_part(double x) {
  check_unit_interval(x);
  return (std::asin(x) + std::numbers::pi / 2.0) / (2.0 * std::numbers::pi);
}

}  // namespace

double cm_cdf(double x) { return cm_continuous_part(x) + (x >= 0.0 ? 0.5 : 0.0); }

double cm_cdf_left(double x) { return cm_continuous_part(x) + (x > 0.0 ? 0.5 : 0.0); }

ReferenceDistribution sato_tate_distribution() {
  return {"sato-tate", st_cdf, st_cdf, {}};
}

ReferenceDistribution cm_distribution() {
  return {"cm", cm_cdf, cm_cdf_left, {0.0}};
}

ReferenceDistribution uniform_distribution(double lo, double hi) {
  if (!(hi > lo)) throw DomainError("uniform distribution needs lo < hi");
  auto f = [lo, hi](double x) { return std::clamp((x - lo) / (hi - lo), 0.0, 1.0); };
  return {"uniform", f, f, {}};
}

double ks_statistic(std::span<const double> samples, const ReferenceDistribution& reference) {
  if (samples.empty()) throw EmptySampleError("ks_statistic: empty sample");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const auto n = static_cast<double>(s.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < s.size()) {
    const double v = s[i];
    std::size_t j = i;
    while (j < s.size() && s[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(j) / n - reference.cdf(v)));
    d = std::max(d, std::abs(static_cast<double>(i) / n - reference.cdf_left(v)));
    i = j;
  }
  for (const double a : reference.atoms) {
    const auto le = static_cast<double>(std::upper_bound(s.begin(), s.end(), a) - s.begin());
    const auto lt = static_cast<double>(std::lower_bound(s.begin(), s.end(), a) - s.begin());
    d = std::max(d, std::abs(le / n - reference.cdf(a)));
    d = std::max(d, std::abs(lt / n - reference.cdf_left(a)));
  }
  return d;
}

double PiMultiple::value() const {
  return std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
}

IntervalUnion::IntervalUnion(std::vector<OpenInterval> intervals) : intervals_(std::move(intervals)) {
  const PiMultiple zero{0, 1};
  const PiMultiple pi{1, 1};
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (iv.lo.den <= 0 || iv.hi.den <= 0) throw DomainError("interval endpoint with non-positive denominator");
    if (iv.lo < zero || pi < iv.hi || !(iv.lo < iv.hi)) throw DomainError("interval outside [0, pi] or empty");
    if (i > 0 && iv.lo < intervals_[i - 1].hi) throw DomainError("intervals overlap or are unsorted");
  }
}

bool IntervalUnion::contains(const PiMultiple& x) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const OpenInterval& iv) { return iv.lo < x && x < iv.hi; });
}

bool IntervalUnion::contains(double theta) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const OpenInterval& iv) { return iv.lo.value() < theta && theta < iv.hi.value(); });
}

SignIntervals sign_interval_union(unsigned nu) {
  if (nu == 0 || nu % 2 == 0) throw DomainError("sign_interval_union: nu must be a positive odd integer");
  const auto den = static_cast<std::int64_t>(nu + 1);
  std::vector<OpenInterval> pos;
  std::vector<OpenInterval> neg;
  for (std::int64_t j = 1; j <= den / 2; ++j) {
    pos.push_back({{2 * j - 2, den}, {2 * j - 1, den}});
    neg.push_back({{2 * j - 1, den}, {2 * j, den}});
  }
  return {IntervalUnion(std::move(pos)), IntervalUnion(std::move(neg))};
}

double measure_of_union(const IntervalUnion& u, MeasureKind kind) {
  double total = 0.0;
  for (const auto& iv : u.intervals()) {
    const double a = iv.lo.value();
    const double b = iv.hi.value();
    if (kind == MeasureKind::sato_tate) {
      // integral of (2/pi) sin^2 = (1/pi) (theta - sin(2 theta)/2)
      total += ((b - a) - (std::sin(2.0 * b) - std::sin(2.0 * a)) / 2.0) / std::numbers::pi;
    } else {
      total += (b - a) / (2.0 * std::numbers::pi);
    }
  }
  if (kind == MeasureKind::cm && u.contains(PiMultiple{1, 2})) total += 0.5;
  return total;
}

}  // namespace modsign

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "modsign/hecke.hpp"
#include "modsign/measures.hpp"
#include "modsign/predict.hpp"
#include "modsign/shimura.hpp"

namespace modsign {

struct HalfPlaneQuery {
  Direction phi;
  unsigned nu = 1;
};

/// Sign counts of a half-plane experiment. Ratios are relative to the
/// classified indices (total minus excluded).
struct DensityEstimate {
  std::uint64_t count_pos = 0;
  std::uint64_t count_neg = 0;
  std::uint64_t count_zero = 0;
  std::uint64_t count_excluded = 0;
  std::uint64_t total = 0;
  /// Predicted densities relative to all classified indices.
  std::optional<SignDensities> predicted;
  /// Predicted share of positives among nonzero classifications.
  std::optional<mpq_class> predicted_pos_of_nonzero;

  std::uint64_t classified() const noexcept { return total - count_excluded; }
  std::uint64_t nonzero() const noexcept { return count_pos + count_neg; }
  double ratio_pos() const;
  double ratio_neg() const;
  double ratio_zero() const;
  double ratio_nonzero() const;
  /// count_pos / nonzero(); empty when nothing was nonzero.
  std::optional<double> pos_of_nonzero() const;
  bool trivial() const noexcept { return nonzero() == 0; }
  void add(Sign s);
};

/// Sign of Re(a(p^nu) e^{-i phi}) over primes p <= x. Primes dividing N and
/// boundary angles are counted as excluded. Throws EmptySampleError when x < 2,
/// NotAvailableError when a needed a(p) is missing.
DensityEstimate empirical_density_primes(const NewformData& data, const HalfPlaneQuery& query, std::uint64_t x,
                                         ZetaMode mode = ZetaMode::sqrt_of_character, unsigned threads = 1);

/// Sign of Re(a(t p^2) e^{-i phi}) over primes p <= x, primes dividing N excluded.
DensityEstimate empirical_density_tp2(const ShimuraFamily& fam, const Direction& phi, std::uint64_t x,
                                      unsigned threads = 1);

/// Sign of sin((nu+1) theta) Re(zeta^nu e^{-i phi}) for 1 <= nu <= nu_max, exact
/// when the angle carries exact turns. DomainError for boundary angles.
DensityEstimate fixed_prime_density(const PrimeAngle& angle, const Direction& phi, std::uint64_t nu_max);
DensityEstimate fixed_prime_density(const NewformData& data, std::uint64_t p, const Direction& phi,
                                    std::uint64_t nu_max, ZetaMode mode = ZetaMode::sqrt_of_character);

enum class OscillationVerdict { oscillating_evidence, trivial, inconclusive };

std::string to_string(OscillationVerdict v);

struct OscillationCertificate {
  /// Positions i where the classification of entry i differs from the previous nonzero one.
  std::vector<std::size_t> sign_changes;
  std::size_t examined = 0;
  std::size_t nonzero = 0;
  OscillationVerdict verdict = OscillationVerdict::inconclusive;
};

/// Classifies seq(0), ..., seq(horizon - 1) by the sign of Re(v e^{-i phi}),
/// treating |Re| < 1e-9 * scale(i) as zero for inexact values. DomainError when horizon < 2.
OscillationCertificate oscillation_certificate(const std::function<CoefficientValue(std::size_t)>& seq,
                                               const Direction& phi, std::size_t horizon,
                                               const std::function<double(std::size_t)>& scale = {});

enum class ComplexPart { real, imaginary };

/// Positive share among nonzero Re (or Im) of a(n) e^{-i phi} over ingested n <= x.
/// Throws EmptySampleError when no index n <= x is present.
DensityEstimate conjecture_ratio(const std::map<std::uint64_t, CoefficientValue>& half_coeffs, const Direction& phi,
                                 std::uint64_t x, ComplexPart part);

struct EquidistributionResult {
  std::size_t sample_size = 0;
  double ks = 0.0;
  /// Share of samples at the atom (vanishing a(p)); 0 for Sato-Tate.
  std::size_t atom_count = 0;
  double atom_fraction = 0.0;
};

/// KS distance of normalized values cos(theta_p) to mu_ST (kind sato_tate) or mu_CM (kind cm).
EquidistributionResult equidistribution_test(const std::vector<PrimeAngle>& angles, MeasureKind kind);

/// KS distance of the angles of non-vanishing coefficients to the uniform law on [0, pi].
EquidistributionResult continuous_angle_test(const std::vector<PrimeAngle>& angles);

}  // namespace modsign

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "modsign/characters.hpp"
#include "modsign/phase.hpp"

namespace modsign {

/// Exact natural densities of the positive, negative and nonzero slices.
struct SignDensities {
  mpq_class pos;
  mpq_class neg;
  mpq_class nonzero;

  friend bool operator==(const SignDensities&, const SignDensities&) = default;
};

/// The half-plane densities for a(p^nu) over primes, nu odd and phi = q pi exact.
/// Each character value xi contributes 1/r (1/(2r) for CM forms) when
/// Re(zeta^nu e^{-i phi}) != 0, split evenly between the two signs.
/// Throws DomainError for even nu or an inexact direction.
SignDensities predicted_density_thm1(const DirichletCharacter& eps, unsigned nu, const Direction& phi,
                                     bool cm);
/// Same, with eps given only through its order r (its image is the r-th roots of unity).
SignDensities predicted_density_thm1(std::int64_t r, unsigned nu, const Direction& phi, bool cm);

/// Per-value density 1/(2r) (non-CM) or 1/(4r) (CM) of each positive and negative set.
mpq_class lemma2_predicted(std::int64_t r, bool cm);

enum class CmCase { non_cm, cm_other, cm_trivial, cm_field };

/// Accepts "noncm", "cm-other", "cm-triv", "cm-f" (case-insensitive).
CmCase parse_cm_case(const std::string& text);
std::string to_string(CmCase c);

struct PosNeg {
  mpq_class pos;
  mpq_class neg;
};

/// Densities of {p : eps(p) = zeta, A_zeta(p) > 0} and {... < 0}.
PosNeg lemma3_predicted(std::int64_t r, CmCase c);

/// Half-plane densities for a(t p^2) over primes with zeta = eps(p).
SignDensities predicted_density_thm3(const DirichletCharacter& eps, const Direction& phi, CmCase c);
SignDensities predicted_density_thm3(std::int64_t r, const Direction& phi, CmCase c);

/// Period of nu -> zeta^nu for zeta = e^{pi i j / r}: 2 r' when j / gcd(r, j) is odd, else r',
/// where r' = r / gcd(r, j).
std::int64_t t_epsilon(std::int64_t r, std::int64_t j);

struct RationalCasePrediction {
  mpq_class pos;
  mpq_class neg;
  mpq_class nonzero;
  /// pos / nonzero; empty when every term vanishes.
  std::optional<mpq_class> ratio;
  /// Length of the enumerated window of nu.
  std::uint64_t period = 0;
};

/// Limiting sign frequencies of sin((nu+1) theta) Re(zeta^nu e^{-i phi}) over nu >= 1
/// for theta = 2 pi n/m and zeta = e^{pi i j/r} (r even) or e^{2 pi i j/r} (r odd).
/// Requires gcd(n, m) = 1, 0 < n/m < 1/2, 1 <= j <= r and an exact direction.
RationalCasePrediction rational_case_prediction(std::int64_t n, std::int64_t m, std::int64_t r, std::int64_t j,
                                                const Direction& phi);

/// The root zeta used by rational_case_prediction.
ExactPhase rational_case_zeta(std::int64_t r, std::int64_t j);

/// "num/den", or "num" for integers.
std::string rational_string(const mpq_class& q);

}  // namespace modsign

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "modsign/newform.hpp"

namespace modsign {

/// How the root of unity zeta attached to a prime is chosen.
enum class ZetaMode {
  sqrt_of_character,  // zeta^2 = eps(p), integral-weight convention
  character_direct,   // zeta = eps(p), Shimura-family convention
};

/// a(p) = 2 zeta p^{(k-1)/2} cos(theta), theta in [0, pi].
struct PrimeAngle {
  std::uint64_t p = 0;
  ExactPhase zeta;
  double theta = 0.0;
  /// Re(a(p) / (2 p^{(k-1)/2} zeta)) before clamping.
  double normalized = 0.0;
  /// theta within tolerance of 0 or pi.
  bool boundary = false;
  /// a(p) = 0 (exactly, or within tolerance for inexact data).
  bool vanishing = false;
  /// theta / (2 pi) when known exactly (synthetic angles).
  std::optional<ExactPhase> exact_turns;

  /// Angle with rational theta/(2 pi) = turns, for synthetic experiments.
  static PrimeAngle synthetic(const ExactPhase& turns, const ExactPhase& zeta, std::uint64_t p = 0);
};

inline constexpr double kBoundaryTol = 1e-9;
inline constexpr double kDeligneSlack = 1e-6;

/// zeta for prime p in the given mode. p must not divide the level.
ExactPhase zeta_for_prime(const NewformData& data, std::uint64_t p, ZetaMode mode);

/// a(p^nu) from a(p^{nu+1}) = a(p) a(p^nu) - eps(p) p^{k-1} a(p^{nu-1}), a(1) = 1.
/// Exact whenever a(p) is exact and eps(p) is in {0, +-1, +-i}.
CoefficientValue hecke_power(const NewformData& data, std::uint64_t p, unsigned nu);

/// The whole run a(1), a(p), ..., a(p^{nu_max}).
std::vector<CoefficientValue> hecke_power_sequence(const NewformData& data, std::uint64_t p, unsigned nu_max);

/// theta_p with zeta chosen by mode. DomainError when p | N, ValidationError when
/// the normalized ratio exceeds 1 + kDeligneSlack.
PrimeAngle extract_angle(const NewformData& data, std::uint64_t p, ZetaMode mode);

/// Angles for every prime p <= x with p not dividing N, in prime order.
std::vector<PrimeAngle> extract_angles(const NewformData& data, std::uint64_t x, ZetaMode mode,
                                       unsigned threads = 1);

/// sin((nu+1) theta)/sin(theta) * zeta^nu, with the limits (nu+1) zeta^nu at
/// theta = 0 and (-1)^nu (nu+1) zeta^nu at theta = pi.
CoefficientValue lemma1_eval(double theta, const ExactPhase& zeta, unsigned nu);

/// a(n) from prime-power values by multiplicativity.
CoefficientValue multiplicative_extend(const NewformData& data, std::uint64_t n);

struct CmScan {
  std::uint64_t inert_primes = 0;       // kronecker(d, p) = -1
  std::uint64_t inert_vanishing = 0;    // ... and a(p) = 0
  std::uint64_t vanishing_primes = 0;   // a(p) = 0
  std::uint64_t vanishing_inert = 0;    // ... and inert
  /// inert_vanishing / inert_primes; empty when no inert prime was seen.
  std::optional<double> inert_vanishing_fraction;
  /// vanishing_inert / vanishing_primes; empty when no prime had a(p) = 0.
  std::optional<double> vanishing_inert_fraction;
  /// True when every inert prime had a(p) = 0 and all tests were exact.
  bool cm_consistent = false;
};

/// Empirical check of the twist condition a(p) = chi_d(p) a(p) over p <= x, p not dividing N.
CmScan cm_vanishing_scan(const NewformData& data, std::int64_t d, std::uint64_t x);

/// Primes p not dividing N with |a(p)| > 2 p^{(k-1)/2} (relative slack rel_tol for inexact values).
std::vector<std::uint64_t> deligne_violations(const NewformData& data, double rel_tol = 1e-9);

/// Primes p not dividing N for which a(p)/zeta is not real (zeta^2 = eps(p)).
std::vector<std::uint64_t> reality_violations(const NewformData& data, double rel_tol = 1e-9);

/// Throws ValidationError naming the first prime that breaks either check.
void validate_newform(const NewformData& data);

}  // namespace modsign

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modsign/hecke.hpp"

namespace modsign {

/// Coefficients a(n) of a half-integral weight form of weight k + 1/2, keyed by n.
struct HalfIntegralData {
  int k = 1;
  std::uint64_t level = 4;
  DirichletCharacter character = DirichletCharacter::trivial(4);
  std::map<std::uint64_t, CoefficientValue> coeffs;
  std::string source;
};

/// The family a(t n^2) of a half-integral weight eigenform with a(t) = 1,
/// driven by its integral-weight lift of weight 2k and character eps^2.
class ShimuraFamily {
 public:
  /// Throws ConstructionError when t is not a positive square-free integer,
  /// 4 does not divide N, the lift weight is not 2k, or the lift character
  /// differs from eps^2.
  ShimuraFamily(std::uint64_t t, int k, std::uint64_t level, DirichletCharacter character,
                std::shared_ptr<const NewformData> lift);

  std::uint64_t t() const noexcept { return t_; }
  int k() const noexcept { return k_; }
  std::uint64_t level() const noexcept { return level_; }
  const DirichletCharacter& character() const noexcept { return character_; }
  const NewformData& lift() const noexcept { return *lift_; }
  std::shared_ptr<const NewformData> lift_ptr() const noexcept { return lift_; }

  /// chi_0(d) = ((-1)^k N^2 t / d).
  int chi0(std::uint64_t d) const;
  /// eps_{t,N}(d) = eps(d) chi_0(d); nullopt when it vanishes.
  std::optional<ExactPhase> twisted_character(std::uint64_t d) const;
  /// eps_{t,N}(d) as a coefficient value.
  CoefficientValue twisted_value(std::uint64_t d) const;
  /// A_t(n), the lift coefficient.
  CoefficientValue lift_coeff(std::uint64_t n) const;

 private:
  std::uint64_t t_;
  int k_;
  std::uint64_t level_;
  DirichletCharacter character_;
  std::shared_ptr<const NewformData> lift_;
};

/// a(t n^2) = sum_{d | n} mu(d) eps_{t,N}(d) d^{k-1} A_t(n/d).
CoefficientValue family_coeff(const ShimuraFamily& fam, std::uint64_t n);

/// a(t p^{2 nu}) = A_t(p^nu) - p^{k-1} eps_{t,N}(p) A_t(p^{nu-1}), and 1 at nu = 0.
CoefficientValue family_prime_power(const ShimuraFamily& fam, std::uint64_t p, unsigned nu);

/// The run a(t), a(t p^2), ..., a(t p^{2 nu_max}).
std::vector<CoefficientValue> family_prime_power_sequence(const ShimuraFamily& fam, std::uint64_t p,
                                                          unsigned nu_max);

struct ForwardDiscrepancy {
  std::uint64_t n = 0;
  double magnitude = 0.0;  // |lhs - rhs|
};

struct ForwardReport {
  std::uint64_t checked = 0;
  std::vector<std::uint64_t> missing;  // half-integral indices t m^2 that were needed but absent
  std::vector<ForwardDiscrepancy> discrepancies;
  double max_discrepancy = 0.0;
  bool exact = true;  // every comparison used exact arithmetic
  bool ok() const { return discrepancies.empty(); }
};

/// Checks A_t(n) = sum_{d | n} eps_{t,N}(d) d^{k-1} a(t (n/d)^2) for 1 <= n <= n_max.
/// Values n whose inputs are missing are skipped and their indices reported.
ForwardReport forward_shimura_check(const ShimuraFamily& fam,
                                    const std::map<std::uint64_t, CoefficientValue>& half_coeffs,
                                    std::uint64_t n_max, double rel_tol = 1e-9);

struct NormalizedAB {
  double b = 0.0;  // A_t(p) / (2 p^{k-1/2} zeta)
  double a = 0.0;  // a(t p^2) / (2 p^{k-1/2} zeta) = b - chi_0(p)/(2 sqrt p)
  double b_imag = 0.0;
  double a_imag = 0.0;
  ExactPhase zeta;
};

/// Normalized values with zeta = eps(p). DomainError when p | N.
NormalizedAB normalized_AB(const ShimuraFamily& fam, std::uint64_t p);

struct GeneratingFunctionReport {
  std::uint64_t p = 0;
  unsigned terms = 0;
  std::vector<unsigned> mismatches;  // exponents nu where the two sides differ
  bool exact = true;
  double max_rel_diff = 0.0;
  bool ok() const { return mismatches.empty(); }
};

/// Expands (1 - eps_{t,N}(p) p^{k-1} X) / (1 - lambda_p X + eps(p)^2 p^{2k-1} X^2)
/// with lambda_p = A_t(p) and compares term by term with family_prime_power.
GeneratingFunctionReport generating_function_check(const ShimuraFamily& fam, std::uint64_t p,
                                                   unsigned n_terms, double rel_tol = 1e-9);

/// a(t n^2) for n = 1..n_max as a half-integral coefficient table keyed by t n^2.
HalfIntegralData synthesize_half_integral(const ShimuraFamily& fam, std::uint64_t n_max);

}  // namespace modsign

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "modsign/characters.hpp"
#include "modsign/coefficient.hpp"

namespace modsign {

/// Weight, level, nebentypus and prime-indexed coefficients a(p) of one
/// eigenform. Coefficients are stored unnormalized (f = sum a(n) q^n); the
/// normalized view a(p)/p^{(k-1)/2} is computed on demand.
class NewformData {
 public:
  using PrimeTable = std::map<std::uint64_t, CoefficientValue>;

  NewformData(int weight, std::uint64_t level, DirichletCharacter character, PrimeTable prime_coeffs,
              bool source_normalized = false, std::string source = {});

  int weight() const noexcept { return weight_; }
  std::uint64_t level() const noexcept { return level_; }
  const DirichletCharacter& character() const noexcept { return character_; }
  const PrimeTable& prime_coeffs() const noexcept { return prime_coeffs_; }
  /// Whether the ingested source used the normalized convention.
  bool source_normalized() const noexcept { return source_normalized_; }
  const std::string& source() const noexcept { return source_; }

  bool has(std::uint64_t p) const { return prime_coeffs_.contains(p); }
  /// a(p); throws NotAvailableError when p is absent.
  const CoefficientValue& at(std::uint64_t p) const;
  /// Largest stored prime, 0 when empty.
  std::uint64_t max_prime() const;
  bool divides_level(std::uint64_t p) const { return level_ % p == 0; }

  /// p^{(k-1)/2}.
  double half_weight_scale(std::uint64_t p) const;

 private:
  int weight_;
  std::uint64_t level_;
  DirichletCharacter character_;
  PrimeTable prime_coeffs_;
  bool source_normalized_;
  std::string source_;
};

}  // namespace modsign

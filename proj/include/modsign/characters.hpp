#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modsign/phase.hpp"

namespace modsign {

/// One cyclic factor of (Z/NZ)^*: the subgroup of the prime-power component
/// p^a generated by `generator`, of order `order`.
struct UnitGenerator {
  std::uint64_t prime = 0;
  unsigned exponent = 0;     // a in p^a
  std::uint64_t modulus = 0; // p^a
  std::int64_t generator = 0; // representative mod p^a (may be -1 for 2-power components)
  std::int64_t order = 0;
};

/// Canonical generators of (Z/NZ)^*: CRT over prime powers; odd p^a uses its
/// smallest primitive root, 4 uses -1, 2^a (a >= 3) uses -1 and 5, and the
/// components 1 and 2 contribute nothing.
std::vector<UnitGenerator> unit_group_generators(std::uint64_t modulus);

/// Dirichlet character mod N given by exponents on the canonical generators:
/// chi(g_i) = e^{2 pi i e_i / ord(g_i)}. Immutable once built.
class DirichletCharacter {
 public:
  /// Throws ConstructionError when exponents.size() differs from the generator count.
  DirichletCharacter(std::uint64_t modulus, std::vector<std::int64_t> exponents);

  static DirichletCharacter trivial(std::uint64_t modulus = 1);

  std::uint64_t modulus() const noexcept { return modulus_; }
  const std::vector<std::int64_t>& exponents() const noexcept { return exponents_; }
  const std::vector<UnitGenerator>& generators() const noexcept { return generators_; }
  /// r_eps: least r with chi^r trivial.
  std::int64_t order() const noexcept { return order_; }
  bool is_trivial() const noexcept { return order_ == 1; }

  /// chi(n), or nullopt when gcd(n, N) > 1.
  std::optional<ExactPhase> evaluate(std::int64_t n) const;

  /// The cyclic group of values, sorted by turn; size equals order().
  std::vector<ExactPhase> image() const;

  /// chi^e.
  DirichletCharacter power(std::int64_t e) const;

  /// True when both characters agree on every n coprime to both moduli.
  bool same_function_as(const DirichletCharacter& other) const;

  std::string to_string() const;

 private:
  struct Component {
    // discrete log table per residue mod p^a; -1 for non-units. For 2^a with
    // a >= 3 the two generators share the component, encoded as s*half + t.
    std::vector<std::int64_t> log;
  };

  std::uint64_t modulus_;
  std::vector<std::int64_t> exponents_;
  std::vector<UnitGenerator> generators_;
  std::int64_t order_ = 1;
  std::vector<Component> components_;
  std::vector<std::size_t> component_of_generator_;
};

/// Square root of xi in the normalization used throughout: with r odd, the unique square
/// root inside the group of r-th roots of unity, xi^{(r+1)/2}; with r even and
/// xi = e^{2 pi i m / r}, 1 <= m <= r, the root e^{pi i m / r}.
/// Throws DomainError unless xi is an r-th root of unity.
ExactPhase sqrt_convention(const ExactPhase& xi, std::int64_t r);

}  // namespace modsign

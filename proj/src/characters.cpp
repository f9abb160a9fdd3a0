#include "modsign/characters.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "modsign/arith.hpp"
#include "modsign/errors.hpp"

namespace modsign {
namespace {

std::uint64_t smallest_primitive_root(std::uint64_t p, unsigned a, std::uint64_t pa) {
  const std::uint64_t phi = pa / p * (p - 1);
  const auto fac = factorize(phi);
  for (std::uint64_t g = 2; g < pa; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (const auto& [q, e] : fac) {
      if (pow_mod(g, phi / q, pa) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  (void)a;
  throw DomainError("no primitive root mod " + std::to_string(pa));
}

}  // namespace

std::vector<UnitGenerator> unit_group_generators(std::uint64_t modulus) {
  if (modulus == 0) throw ConstructionError("modulus must be positive");
  std::vector<UnitGenerator> gens;
  for (const auto& [p, a] : factorize(modulus)) {
    std::uint64_t pa = 1;
    for (unsigned i = 0; i < a; ++i) pa *= p;
    if (p == 2) {
      if (a == 1) continue;
      gens.push_back({2, a, pa, -1, 2});
      if (a >= 3) gens.push_back({2, a, pa, 5, static_cast<std::int64_t>(pa / 4)});
      continue;
    }
    const std::uint64_t g = smallest_primitive_root(p, a, pa);
    gens.push_back({p, a, pa, static_cast<std::int64_t>(g), static_cast<std::int64_t>(pa / p * (p - 1))});
  }
  return gens;
}

DirichletCharacter::DirichletCharacter(std::uint64_t modulus, std::vector<std::int64_t> exponents)
    : modulus_(modulus), exponents_(std::move(exponents)), generators_(unit_group_generators(modulus)) {
  if (exponents_.size() != generators_.size())
    throw ConstructionError("character mod " + std::to_string(modulus) + " needs " +
                            std::to_string(generators_.size()) + " exponents, got " +
                            std::to_string(exponents_.size()));
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    exponents_[i] = mod_floor(exponents_[i], generators_[i].order);
    const std::int64_t ord_i = generators_[i].order / std::gcd(exponents_[i], generators_[i].order);
    order_ = std::lcm(order_, ord_i);
  }

  // Discrete-log tables, one per prime-power component.
  std::size_t i = 0;
  while (i < generators_.size()) {
    const UnitGenerator& g = generators_[i];
    const auto pa = static_cast<std::int64_t>(g.modulus);
    Component comp;
    comp.log.assign(static_cast<std::size_t>(pa), -1);
    if (g.prime == 2 && i + 1 < generators_.size() && generators_[i + 1].prime == 2) {
      // (-1)^s 5^t, encoded s * half + t with half = 2^{a-2}.
      const std::int64_t half = generators_[i + 1].order;
      std::int64_t x = 1;
      for (std::int64_t t = 0; t < half; ++t) {
        comp.log[static_cast<std::size_t>(x)] = t;
        comp.log[static_cast<std::size_t>(pa - x)] = half + t;
        x = x * 5 % pa;
      }
      components_.push_back(std::move(comp));
      component_of_generator_.push_back(components_.size() - 1);
      component_of_generator_.push_back(components_.size() - 1);
      i += 2;
      continue;
    }
    const std::int64_t gen = mod_floor(g.generator, pa);
    std::int64_t x = 1;
    for (std::int64_t e = 0; e < g.order; ++e) {
      comp.log[static_cast<std::size_t>(x)] = e;
      x = x * gen % pa;
    }
    components_.push_back(std::move(comp));
    component_of_generator_.push_back(components_.size() - 1);
    ++i;
  }
}

DirichletCharacter DirichletCharacter::trivial(std::uint64_t modulus) {
  return DirichletCharacter(modulus, std::vector<std::int64_t>(unit_group_generators(modulus).size(), 0));
}

std::optional<ExactPhase> DirichletCharacter::evaluate(std::int64_t n) const {
  const auto N = static_cast<std::int64_t>(modulus_);
  const std::int64_t r = mod_floor(n, N);
  if (std::gcd(r, N) != 1 && N != 1) return std::nullopt;
  ExactPhase value;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const UnitGenerator& g = generators_[i];
    const auto pa = static_cast<std::int64_t>(g.modulus);
    const std::int64_t lg = components_[component_of_generator_[i]].log[static_cast<std::size_t>(mod_floor(r, pa))];
    std::int64_t k = lg;
    if (g.prime == 2 && g.exponent >= 3) {
      const std::int64_t half = static_cast<std::int64_t>(g.modulus / 4);
      k = (g.generator == -1) ? lg / half : lg % half;
    }
    value *= ExactPhase(exponents_[i], g.order).pow(k);
  }
  return value;
}

std::vector<ExactPhase> DirichletCharacter::image() const {
  std::vector<ExactPhase> out;
  out.reserve(static_cast<std::size_t>(order_));
  for (std::int64_t j = 0; j < order_; ++j) out.emplace_back(j, order_);
  return out;
}

DirichletCharacter DirichletCharacter::power(std::int64_t e) const {
  std::vector<std::int64_t> ex = exponents_;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    const std::int64_t ord = generators_[i].order;
    ex[i] = static_cast<std::int64_t>(static_cast<__int128>(ex[i]) * mod_floor(e, ord) % ord);
  }
  return DirichletCharacter(modulus_, std::move(ex));
}

bool DirichletCharacter::same_function_as(const DirichletCharacter& other) const {
  const auto M = std::lcm(static_cast<std::int64_t>(modulus_), static_cast<std::int64_t>(other.modulus_));
  for (std::int64_t n = 1; n <= M; ++n) {
    auto a = evaluate(n);
    auto b = other.evaluate(n);
    if (!a || !b) continue;
    if (*a != *b) return false;
  }
  return true;
}

std::string DirichletCharacter::to_string() const {
  std::string s = "chi mod " + std::to_string(modulus_) + " [";
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exponents_[i]);
  }
  return s + "] order " + std::to_string(order_);
}

ExactPhase sqrt_convention(const ExactPhase& xi, std::int64_t r) {
  if (r <= 0 || r % xi.den() != 0)
    throw DomainError("sqrt_convention: " + xi.to_string() + " is not a root of unity of order dividing " +
                      std::to_string(r));
  if (r % 2 == 1) return xi.pow((r + 1) / 2);
  std::int64_t m = xi.num() * (r / xi.den());
  if (m == 0) m = r;
  return ExactPhase(m, 2 * r);
}

}  // namespace modsign

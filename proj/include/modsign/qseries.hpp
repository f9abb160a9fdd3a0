#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "modsign/newform.hpp"

namespace modsign {

/// Truncated power series sum c_n q^n, 0 <= n < length(), with exact integer coefficients.
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::size_t length) : coeffs_(length) {}
  explicit PowerSeries(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t length() const noexcept { return coeffs_.size(); }
  const mpz_class& operator[](std::size_t n) const { return coeffs_[n]; }
  mpz_class& operator[](std::size_t n) { return coeffs_[n]; }
  const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }

  /// Sum truncated to the shorter length.
  PowerSeries operator+(const PowerSeries& other) const;
  PowerSeries operator-(const PowerSeries& other) const;
  /// Product truncated to the shorter length.
  PowerSeries operator*(const PowerSeries& other) const;
  /// q^k * this, keeping length; negative k drops the lowest terms.
  PowerSeries shifted(std::int64_t k) const;

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  std::vector<mpz_class> coeffs_;
};

struct EtaFactor {
  std::uint64_t multiplier = 1;  // m in eta(m z)
  int exponent = 1;
};

/// prod eta(m_i z)^{e_i}.
struct EtaProductSpec {
  std::vector<EtaFactor> factors;

  /// Parses "m1:e1,m2:e2,...".
  static EtaProductSpec parse(const std::string& text);
  std::string to_string() const;

  int exponent_sum() const;
  /// Twice the weight, sum of exponents.
  int twice_weight() const { return exponent_sum(); }
  /// sum m_i e_i; the expansion starts at q^{this / 24}.
  std::uint64_t leading_exponent_times_24() const;
};

/// prod_{n >= 1} (1 - q^{mn}) to length n_max, from the pentagonal number
/// theorem: coefficients (-1)^k at q^{m k(3k-1)/2}, k in Z.
PowerSeries eta_expand(std::uint64_t m, std::size_t n_max);

/// Coefficients a(0), ..., a(n_max) of the eta product, indexed by the true
/// power of q. Throws DomainError unless sum m_i e_i is divisible by 24.
PowerSeries eta_product_expand(const EtaProductSpec& spec, std::size_t n_max, unsigned threads = 1);

/// Prime-indexed table a(p), p < series.length(), as a NewformData.
/// Throws DomainError when a(1) != 1.
NewformData series_to_newform(const PowerSeries& series, int weight, std::uint64_t level,
                              const DirichletCharacter& character, std::string source = {});

}  // namespace modsign

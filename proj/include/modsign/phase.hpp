#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace modsign {

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

constexpr Sign operator*(Sign a, Sign b) {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}

template <class T>
constexpr Sign sign_of(const T& v) {
  if (v > 0) return Sign::positive;
  if (v < 0) return Sign::negative;
  return Sign::zero;
}

/// A root of unity e^{2 pi i num/den}, stored as a reduced fraction of a turn
/// with 0 <= num < den. The group law (product of roots) is addition of turns.
class ExactPhase {
 public:
  constexpr ExactPhase() = default;
  ExactPhase(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  /// Multiplicative order of the root of unity.
  std::int64_t order() const noexcept { return den_; }

  ExactPhase operator*(const ExactPhase& other) const;
  ExactPhase& operator*=(const ExactPhase& other) { return *this = *this * other; }
  ExactPhase pow(std::int64_t e) const;
  ExactPhase inverse() const;

  bool is_one() const noexcept { return num_ == 0; }
  double turns() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::complex<double> value() const;

  /// Exact value when it lies in {1, i, -1, -i}: (re, im) with entries in {-1,0,1}.
  std::optional<std::pair<int, int>> gaussian_value() const;

  Sign real_sign() const noexcept;
  Sign imag_sign() const noexcept;

  std::string to_string() const;

  friend bool operator==(const ExactPhase&, const ExactPhase&) = default;
  friend auto operator<=>(const ExactPhase& a, const ExactPhase& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A direction e^{i phi} in the plane used to slice by the line Re(z e^{-i phi}) = 0.
/// Directions given as rational multiples of pi keep an exact phase; free real
/// directions carry only the radian value.
struct Direction {
  std::optional<ExactPhase> exact;
  double radians = 0.0;

  /// phi = (num/den) * pi.
  static Direction pi_fraction(std::int64_t num, std::int64_t den);
  static Direction from_radians(double phi);
  static Direction from_phase(const ExactPhase& e);
  /// phi + pi/2, turns Im(z e^{-i phi}) into Re(z e^{-i(phi + pi/2)}).
  Direction quarter_turn() const;
  /// Parses "a/b" (phi = (a/b) pi) or a decimal radian value prefixed with "rad:".
  static Direction parse(const std::string& text);
  std::string to_string() const;
};

/// Sign of Re(rho * e^{-i phi}) for a root of unity rho, exact when phi is.
Sign rotated_real_sign(const ExactPhase& rho, const Direction& phi, double tol = 1e-9);

}  // namespace modsign

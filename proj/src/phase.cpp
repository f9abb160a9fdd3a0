#include "modsign/phase.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "modsign/arith.hpp"
#include "modsign/errors.hpp"

namespace modsign {

ExactPhase::ExactPhase(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw DomainError("ExactPhase denominator must be positive");
  num = mod_floor(num, den);
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

ExactPhase ExactPhase::operator*(const ExactPhase& other) const {
  const std::int64_t g = std::gcd(den_, other.den_);
  const std::int64_t den = den_ / g * other.den_;
  const __int128 num = static_cast<__int128>(num_) * (other.den_ / g) +
                       static_cast<__int128>(other.num_) * (den_ / g);
  return ExactPhase(static_cast<std::int64_t>(num % den), den);
}

ExactPhase ExactPhase::pow(std::int64_t e) const {
  const std::int64_t r = mod_floor(e, den_);
  const __int128 num = static_cast<__int128>(num_) * r;
  return ExactPhase(static_cast<std::int64_t>(num % den_), den_);
}

ExactPhase ExactPhase::inverse() const { return ExactPhase(-num_, den_); }

std::complex<double> ExactPhase::value() const {
  if (auto g = gaussian_value()) return {static_cast<double>(g->first), static_cast<double>(g->second)};
  return std::polar(1.0, 2.0 * std::numbers::pi * turns());
}

std::optional<std::pair<int, int>> ExactPhase::gaussian_value() const {
  if (4 % den_ != 0) return std::nullopt;
  switch (num_ * (4 / den_)) {
    case 0: return std::pair{1, 0};
    case 1: return std::pair{0, 1};
    case 2: return std::pair{-1, 0};
    default: return std::pair{0, -1};
  }
}

Sign ExactPhase::real_sign() const noexcept {
  // cos(2 pi t): positive on [0,1/4) and (3/4,1), zero at 1/4 and 3/4.
  const __int128 q = static_cast<__int128>(num_) * 4;
  if (q == den_ || q == 3 * static_cast<__int128>(den_)) return Sign::zero;
  if (q < den_ || q > 3 * static_cast<__int128>(den_)) return Sign::positive;
  return Sign::negative;
}

Sign ExactPhase::imag_sign() const noexcept {
  const __int128 q = static_cast<__int128>(num_) * 2;
  if (num_ == 0 || q == den_) return Sign::zero;
  return q < den_ ? Sign::positive : Sign::negative;
}

std::string ExactPhase::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Direction Direction::pi_fraction(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw DomainError("direction denominator must be positive");
  Direction d;
  d.exact = ExactPhase(num, 2 * den);
  d.radians = std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return d;
}

Direction Direction::from_radians(double phi) {
  Direction d;
  d.radians = phi;
  return d;
}

Direction Direction::from_phase(const ExactPhase& e) {
  Direction d;
  d.exact = e;
  d.radians = 2.0 * std::numbers::pi * e.turns();
  return d;
}

Direction Direction::quarter_turn() const {
  if (exact) return from_phase(*exact * ExactPhase(1, 4));
  return from_radians(radians + std::numbers::pi / 2.0);
}

Direction Direction::parse(const std::string& text) {
  if (text.rfind("rad:", 0) == 0) {
    try {
      std::size_t used = 0;
      const double v = std::stod(text.substr(4), &used);
      if (used != text.size() - 4) throw ParseError("trailing characters");
      return from_radians(v);
    } catch (const std::exception&) {
      throw ParseError("bad radian direction '" + text + "'");
    }
  }
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    const std::string num_text = text.substr(0, slash);
    const std::int64_t num = std::stoll(num_text, &used);
    if (used != num_text.size()) throw ParseError("trailing characters");
    std::int64_t den = 1;
    if (slash != std::string::npos) {
      const std::string den_text = text.substr(slash + 1);
      den = std::stoll(den_text, &used);
      if (used != den_text.size()) throw ParseError("trailing characters");
    }
    if (den <= 0) throw ParseError("non-positive denominator");
    return pi_fraction(num, den);
  } catch (const std::exception&) {
    throw ParseError("bad direction '" + text + "', expected a/b meaning (a/b)*pi");
  }
}

std::string Direction::to_string() const {
  if (exact) {
    // exact holds phi/(2 pi); print phi/pi.
    const ExactPhase& e = *exact;
    std::int64_t num = 2 * e.num();
    std::int64_t den = e.den();
    const std::int64_t g = std::gcd(num, den);
    return std::to_string(num / g) + "/" + std::to_string(den / g);
  }
  return "rad:" + std::to_string(radians);
}

Sign rotated_real_sign(const ExactPhase& rho, const Direction& phi, double tol) {
  if (phi.exact) return (rho * phi.exact->inverse()).real_sign();
  const double v = std::cos(2.0 * std::numbers::pi * rho.turns() - phi.radians);
  if (std::abs(v) < tol) return Sign::zero;
  return sign_of(v);
}

}  // namespace modsign

#include "modsign/coefficient.hpp"

#include <cmath>
#include <numbers>

namespace modsign {

std::optional<ComplexRational> exact_root_of_unity(const ExactPhase& z) {
  if (auto g = z.gaussian_value()) return ComplexRational(mpq_class(g->first), mpq_class(g->second));
  return std::nullopt;
}

CoefficientValue CoefficientValue::of_root(const ExactPhase& z) {
  if (auto e = exact_root_of_unity(z)) return CoefficientValue(*e);
  return CoefficientValue(z.value());
}

bool CoefficientValue::is_zero(double scale, double tol) const {
  if (exact_) return exact_->is_zero();
  return std::abs(approx_) < tol * scale;
}

CoefficientValue operator+(const CoefficientValue& a, const CoefficientValue& b) {
  if (a.exact_ && b.exact_) return CoefficientValue(*a.exact_ + *b.exact_);
  return CoefficientValue(a.approx_ + b.approx_);
}

CoefficientValue operator-(const CoefficientValue& a, const CoefficientValue& b) {
  if (a.exact_ && b.exact_) return CoefficientValue(*a.exact_ - *b.exact_);
  return CoefficientValue(a.approx_ - b.approx_);
}

CoefficientValue operator*(const CoefficientValue& a, const CoefficientValue& b) {
  if (a.exact_ && b.exact_) return CoefficientValue(*a.exact_ * *b.exact_);
  return CoefficientValue(a.approx_ * b.approx_);
}

CoefficientValue operator-(const CoefficientValue& a) {
  if (a.exact_) return CoefficientValue(-*a.exact_);
  return CoefficientValue(-a.approx_);
}

std::string CoefficientValue::to_string() const {
  if (exact_) {
    std::string s = exact_->re.get_str();
    if (!exact_->is_real()) s += (sgn(exact_->im) > 0 ? "+" : "") + exact_->im.get_str() + "i";
    return s;
  }
  return std::to_string(approx_.real()) + (approx_.imag() >= 0 ? "+" : "") + std::to_string(approx_.imag()) + "i";
}

Sign rotated_real_sign(const CoefficientValue& v, const Direction& phi, double scale, double tol) {
  if (v.is_exact()) {
    const ComplexRational& z = *v.exact();
    // Re(z e^{-i phi}) = x cos(phi) + y sin(phi).
    Sign cos_sign;
    Sign sin_sign;
    bool diagonal = false;
    if (phi.exact) {
      const ExactPhase& e = *phi.exact;
      cos_sign = e.real_sign();
      sin_sign = e.imag_sign();
      diagonal = e.pow(8).is_one() && !e.pow(4).is_one();
    } else {
      const double c = std::cos(phi.radians);
      const double s = std::sin(phi.radians);
      cos_sign = std::abs(c) < 1e-15 ? Sign::zero : sign_of(c);
      sin_sign = std::abs(s) < 1e-15 ? Sign::zero : sign_of(s);
    }
    const Sign s1 = sign_of(sgn(z.re)) * cos_sign;
    const Sign s2 = sign_of(sgn(z.im)) * sin_sign;
    if (s1 == Sign::zero) return s2;
    if (s2 == Sign::zero || s1 == s2) return s1;
    // Opposite signs: compare |x cos| with |y sin|.
    if (diagonal) {
      const int c = cmp(abs(z.re), abs(z.im));
      if (c == 0) return Sign::zero;
      return c > 0 ? s1 : s2;
    }
    // For exact phi off the diagonals tan(phi) is irrational, so no exact zero.
    const mpq_class ratio = abs(z.re) / abs(z.im);
    const long double t = std::fabs(std::tan(static_cast<long double>(phi.radians)));
    return static_cast<long double>(ratio.get_d()) > t ? s1 : s2;
  }
  const std::complex<double> w = v.approx() * std::polar(1.0, -phi.radians);
  if (std::abs(w.real()) < tol * scale) return Sign::zero;
  return sign_of(w.real());
}

}  // namespace modsign

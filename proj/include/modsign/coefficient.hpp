#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>

#include "modsign/phase.hpp"

namespace modsign {

/// x + iy with x, y exact rationals.
struct ComplexRational {
  mpq_class re;
  mpq_class im;

  ComplexRational() = default;
  ComplexRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  mpq_class norm() const { return re * re + im * im; }
  ComplexRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Exact value of a root of unity when it lies in {+-1, +-i}.
std::optional<ComplexRational> exact_root_of_unity(const ExactPhase& z);

/// A coefficient value: an optional exact complex rational together with a
/// double-precision approximation that is always present.
class CoefficientValue {
 public:
  CoefficientValue() : exact_(ComplexRational{}), approx_(0.0) {}
  CoefficientValue(long v) : CoefficientValue(ComplexRational(mpq_class(v))) {}
  explicit CoefficientValue(ComplexRational exact)
      : exact_(std::move(exact)), approx_(exact_->to_complex()) {}
  explicit CoefficientValue(std::complex<double> approx) : approx_(approx) {}

  static CoefficientValue integer(const mpz_class& v) { return CoefficientValue(ComplexRational(mpq_class(v))); }
  static CoefficientValue of_root(const ExactPhase& z);

  bool is_exact() const noexcept { return exact_.has_value(); }
  const std::optional<ComplexRational>& exact() const noexcept { return exact_; }
  std::complex<double> approx() const noexcept { return approx_; }

  /// Exact zero test when exact, else |z| < tol * scale.
  bool is_zero(double scale = 1.0, double tol = 1e-9) const;

  friend CoefficientValue operator+(const CoefficientValue& a, const CoefficientValue& b);
  friend CoefficientValue operator-(const CoefficientValue& a, const CoefficientValue& b);
  friend CoefficientValue operator*(const CoefficientValue& a, const CoefficientValue& b);
  friend CoefficientValue operator-(const CoefficientValue& a);

  std::string to_string() const;

 private:
  std::optional<ComplexRational> exact_;
  std::complex<double> approx_;
};

/// Sign of Re(v * e^{-i phi}). Exact values with an exact direction are
/// classified without rounding (tan(phi) is irrational unless phi is a multiple
/// of pi/4, so only those directions can produce an exact zero); otherwise a
/// value with |Re| < tol * scale is reported as zero.
Sign rotated_real_sign(const CoefficientValue& v, const Direction& phi, double scale = 1.0,
                       double tol = 1e-9);

}  // namespace modsign

#include "modsign/predict.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "modsign/arith.hpp"
#include "modsign/errors.hpp"

namespace modsign {
namespace {

void require_exact(const Direction& phi) {
  if (!phi.exact) throw DomainError("exact predictors need phi given as a rational multiple of pi");
}

std::vector<ExactPhase> roots_of_unity(std::int64_t r) {
  if (r < 1) throw DomainError("character order must be positive");
  std::vector<ExactPhase> out;
  out.reserve(static_cast<std::size_t>(r));
  for (std::int64_t j = 0; j < r; ++j) out.emplace_back(j, r);
  return out;
}

SignDensities thm1_from_image(const std::vector<ExactPhase>& image, unsigned nu, const Direction& phi, bool cm) {
  if (nu == 0 || nu % 2 == 0) throw DomainError("the odd-nu density prediction does not cover even nu");
  require_exact(phi);
  const auto r = static_cast<std::int64_t>(image.size());
  std::int64_t count = 0;
  for (const auto& xi : image) {
    const ExactPhase zeta = sqrt_convention(xi, r);
    if (rotated_real_sign(zeta.pow(nu), phi) != Sign::zero) ++count;
  }
  const mpq_class half = lemma2_predicted(r, cm);
  SignDensities d;
  d.pos = half * count;
  d.neg = half * count;
  d.nonzero = d.pos + d.neg;
  return d;
}

SignDensities thm3_from_image(const std::vector<ExactPhase>& image, const Direction& phi, CmCase c) {
  require_exact(phi);
  const auto r = static_cast<std::int64_t>(image.size());
  const PosNeg table = lemma3_predicted(r, c);
  SignDensities d;
  for (const auto& zeta : image) {
    const Sign s = rotated_real_sign(zeta, phi);
    if (s == Sign::positive) {
      d.pos += table.pos;
      d.neg += table.neg;
    } else if (s == Sign::negative) {
      d.pos += table.neg;
      d.neg += table.pos;
    }
  }
  d.nonzero = d.pos + d.neg;
  return d;
}

}  // namespace

mpq_class lemma2_predicted(std::int64_t r, bool cm) {
  if (r < 1) throw DomainError("character order must be positive");
  mpq_class q(1, static_cast<unsigned long>(cm ? 4 * r : 2 * r));
  q.canonicalize();
  return q;
}

SignDensities predicted_density_thm1(const DirichletCharacter& eps, unsigned nu, const Direction& phi, bool cm) {
  return thm1_from_image(eps.image(), nu, phi, cm);
}

SignDensities predicted_density_thm1(std::int64_t r, unsigned nu, const Direction& phi, bool cm) {
  return thm1_from_image(roots_of_unity(r), nu, phi, cm);
}

CmCase parse_cm_case(const std::string& text) {
  std::string s;
  for (const char ch : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (s == "noncm" || s == "non-cm") return CmCase::non_cm;
  if (s == "cm-other") return CmCase::cm_other;
  if (s == "cm-triv" || s == "cm-trivial") return CmCase::cm_trivial;
  if (s == "cm-f" || s == "cm-field") return CmCase::cm_field;
  throw ParseError("unknown CM case label: " + text);
}

std::string to_string(CmCase c) {
  switch (c) {
    case CmCase::non_cm: return "noncm";
    case CmCase::cm_other: return "cm-other";
    case CmCase::cm_trivial: return "cm-triv";
    case CmCase::cm_field: return "cm-f";
  }
  return "?";
}

PosNeg lemma3_predicted(std::int64_t r, CmCase c) {
  if (r < 1) throw DomainError("character order must be positive");
  const auto q = [r](long num, long den_factor) {
    mpq_class v(num, static_cast<unsigned long>(den_factor * r));
    v.canonicalize();
    return v;
  };
  switch (c) {
    case CmCase::non_cm:
    case CmCase::cm_other: return {q(1, 2), q(1, 2)};
    case CmCase::cm_trivial: return {q(1, 4), q(3, 4)};
    case CmCase::cm_field: return {q(3, 4), q(1, 4)};
  }
  throw DomainError("unknown CM case");
}

SignDensities predicted_density_thm3(const DirichletCharacter& eps, const Direction& phi, CmCase c) {
  return thm3_from_image(eps.image(), phi, c);
}

SignDensities predicted_density_thm3(std::int64_t r, const Direction& phi, CmCase c) {
  return thm3_from_image(roots_of_unity(r), phi, c);
}

std::int64_t t_epsilon(std::int64_t r, std::int64_t j) {
  if (r < 1 || j < 1 || j > r) throw DomainError("t_epsilon needs 1 <= j <= r");
  const std::int64_t g = std::gcd(r, j);
  const std::int64_t rp = r / g;
  return (j / g) % 2 == 1 ? 2 * rp : rp;
}

ExactPhase rational_case_zeta(std::int64_t r, std::int64_t j) {
  if (r < 1 || j < 1 || j > r) throw DomainError("zeta index needs 1 <= j <= r");
  return r % 2 == 0 ? ExactPhase(j, 2 * r) : ExactPhase(j, r);
}

RationalCasePrediction rational_case_prediction(std::int64_t n, std::int64_t m, std::int64_t r, std::int64_t j,
                                                const Direction& phi) {
  require_exact(phi);
  if (n <= 0 || m <= 0 || std::gcd(n, m) != 1 || 2 * n >= m)
    throw DomainError("rational angle needs gcd(n, m) = 1 and 0 < n/m < 1/2");
  const ExactPhase zeta = rational_case_zeta(r, j);
  // sin((nu+1) theta) has period m in nu; zeta^nu has period order(zeta).
  const std::int64_t period = std::lcm(m, zeta.order());
  std::int64_t pos = 0;
  std::int64_t neg = 0;
  for (std::int64_t nu = 1; nu <= period; ++nu) {
    const Sign s_sin = ExactPhase(((nu + 1) % m) * n % m, m).imag_sign();
    const Sign s = s_sin * rotated_real_sign(zeta.pow(nu), phi);
    if (s == Sign::positive) ++pos;
    if (s == Sign::negative) ++neg;
  }
  RationalCasePrediction out;
  out.period = static_cast<std::uint64_t>(period);
  out.pos = mpq_class(pos, static_cast<unsigned long>(period));
  out.neg = mpq_class(neg, static_cast<unsigned long>(period));
  out.pos.canonicalize();
  out.neg.canonicalize();
  out.nonzero = out.pos + out.neg;
  if (pos + neg > 0) out.ratio = mpq_class(out.pos / out.nonzero);
  return out;
}

std::string rational_string(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace modsign

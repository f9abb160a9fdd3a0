#include "modsign/shimura.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "modsign/arith.hpp"
#include "modsign/errors.hpp"

namespace modsign {
namespace {

CoefficientValue power_of(std::uint64_t base, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, static_cast<unsigned long>(e));
  return CoefficientValue::integer(r);
}

double relative_gap(const CoefficientValue& x, const CoefficientValue& y) {
  if (x.is_exact() && y.is_exact()) {
    if (*x.exact() == *y.exact()) return 0.0;
    const ComplexRational d = *x.exact() - *y.exact();
    const mpq_class sx = abs(x.exact()->re) + abs(x.exact()->im);
    const mpq_class sy = abs(y.exact()->re) + abs(y.exact()->im);
    mpq_class s = sx > sy ? sx : sy;
    if (s < 1) s = 1;
    return std::sqrt(mpq_class(d.norm() / (s * s)).get_d());
  }
  const double scale = std::max({std::abs(x.approx()), std::abs(y.approx()), 1.0});
  return std::abs(x.approx() - y.approx()) / scale;
}

bool same_value(const CoefficientValue& x, const CoefficientValue& y, double rel_tol, bool& exact) {
  if (x.is_exact() && y.is_exact()) return *x.exact() == *y.exact();
  exact = false;
  return relative_gap(x, y) <= rel_tol;
}

}  // namespace

ShimuraFamily::ShimuraFamily(std::uint64_t t, int k, std::uint64_t level, DirichletCharacter character,
                             std::shared_ptr<const NewformData> lift)
    : t_(t), k_(k), level_(level), character_(std::move(character)), lift_(std::move(lift)) {
  if (!lift_) throw ConstructionError("Shimura family needs a lift");
  if (t_ == 0 || !is_squarefree(t_)) throw ConstructionError("t must be a positive square-free integer");
  if (k_ < 1) throw ConstructionError("k must be at least 1");
  if (level_ % 4 != 0) throw ConstructionError("half-integral level must be divisible by 4");
  if (level_ % character_.modulus() != 0) throw ConstructionError("character modulus must divide the level");
  if (lift_->weight() != 2 * k_)
    throw ConstructionError("lift weight " + std::to_string(lift_->weight()) + " differs from 2k = " +
                            std::to_string(2 * k_));
  if (!character_.power(2).same_function_as(lift_->character()))
    throw ConstructionError("lift character differs from eps^2");
}

int ShimuraFamily::chi0(std::uint64_t d) const {
  // ((-1)^k N^2 t / d) = (N/d)^2 ((-1)^k t / d).
  if (std::gcd(d, level_) != 1) return 0;
  const std::int64_t top = (k_ % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(t_);
  return kronecker(top, static_cast<std::int64_t>(d));
}

std::optional<ExactPhase> ShimuraFamily::twisted_character(std::uint64_t d) const {
  const int c = chi0(d);
  if (c == 0) return std::nullopt;
  auto e = character_.evaluate(static_cast<std::int64_t>(d));
  if (!e) return std::nullopt;
  return c == 1 ? *e : *e * ExactPhase(1, 2);
}

CoefficientValue ShimuraFamily::twisted_value(std::uint64_t d) const {
  const auto e = twisted_character(d);
  return e ? CoefficientValue::of_root(*e) : CoefficientValue(0L);
}

CoefficientValue ShimuraFamily::lift_coeff(std::uint64_t n) const { return multiplicative_extend(*lift_, n); }

CoefficientValue family_coeff(const ShimuraFamily& fam, std::uint64_t n) {
  if (n == 0) throw DomainError("family_coeff: n must be positive");
  CoefficientValue sum(0L);
  for (const std::uint64_t d : divisors(n)) {
    const int mu = moebius(d);
    if (mu == 0) continue;
    const CoefficientValue tw = fam.twisted_value(d);
    if (tw.is_zero()) continue;
    CoefficientValue term = tw * power_of(d, fam.k() - 1) * fam.lift_coeff(n / d);
    sum = mu > 0 ? sum + term : sum - term;
  }
  return sum;
}

CoefficientValue family_prime_power(const ShimuraFamily& fam, std::uint64_t p, unsigned nu) {
  if (nu == 0) return CoefficientValue(1L);
  const CoefficientValue a_nu = hecke_power(fam.lift(), p, nu);
  const CoefficientValue a_prev = hecke_power(fam.lift(), p, nu - 1);
  return a_nu - power_of(p, fam.k() - 1) * fam.twisted_value(p) * a_prev;
}

std::vector<CoefficientValue> family_prime_power_sequence(const ShimuraFamily& fam, std::uint64_t p,
                                                          unsigned nu_max) {
  const auto lift_run = hecke_power_sequence(fam.lift(), p, nu_max);
  const CoefficientValue twist = power_of(p, fam.k() - 1) * fam.twisted_value(p);
  std::vector<CoefficientValue> out;
  out.reserve(nu_max + 1);
  out.emplace_back(1L);
  for (unsigned nu = 1; nu <= nu_max; ++nu) out.push_back(lift_run[nu] - twist * lift_run[nu - 1]);
  return out;
}

ForwardReport forward_shimura_check(const ShimuraFamily& fam,
                                    const std::map<std::uint64_t, CoefficientValue>& half_coeffs,
                                    std::uint64_t n_max, double rel_tol) {
  ForwardReport report;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    CoefficientValue rhs(0L);
    bool complete = true;
    for (const std::uint64_t d : divisors(n)) {
      const CoefficientValue tw = fam.twisted_value(d);
      if (tw.is_zero()) continue;
      const std::uint64_t m = n / d;
      const std::uint64_t index = fam.t() * m * m;
      auto it = half_coeffs.find(index);
      if (it == half_coeffs.end()) {
        report.missing.push_back(index);
        complete = false;
        continue;
      }
      rhs = rhs + tw * power_of(d, fam.k() - 1) * it->second;
    }
    if (!complete) continue;
    ++report.checked;
    const CoefficientValue lhs = fam.lift_coeff(n);
    if (!same_value(lhs, rhs, rel_tol, report.exact)) {
      const double gap = std::abs((lhs - rhs).approx());
      report.discrepancies.push_back({n, gap});
      report.max_discrepancy = std::max(report.max_discrepancy, gap);
    } else if (!(lhs.is_exact() && rhs.is_exact())) {
      report.max_discrepancy = std::max(report.max_discrepancy, std::abs(lhs.approx() - rhs.approx()));
    }
  }
  std::sort(report.missing.begin(), report.missing.end());
  report.missing.erase(std::unique(report.missing.begin(), report.missing.end()), report.missing.end());
  return report;
}

NormalizedAB normalized_AB(const ShimuraFamily& fam, std::uint64_t p) {
  const auto eps = fam.character().evaluate(static_cast<std::int64_t>(p));
  if (!eps || fam.level() % p == 0) throw DomainError("normalized_AB: p=" + std::to_string(p) + " divides N");
  NormalizedAB out;
  out.zeta = *eps;
  const double scale = 2.0 * std::pow(static_cast<double>(p), fam.k() - 0.5);
  const std::complex<double> b = fam.lift_coeff(p).approx() * std::conj(eps->value()) / scale;
  const std::complex<double> a = b - static_cast<double>(fam.chi0(p)) / (2.0 * std::sqrt(static_cast<double>(p)));
  out.b = b.real();
  out.b_imag = b.imag();
  out.a = a.real();
  out.a_imag = a.imag();
  return out;
}

GeneratingFunctionReport generating_function_check(const ShimuraFamily& fam, std::uint64_t p, unsigned n_terms,
                                                   double rel_tol) {
  if (n_terms < 2) throw DomainError("generating_function_check needs at least two terms");
  const auto eps = fam.character().evaluate(static_cast<std::int64_t>(p));
  if (!eps || fam.level() % p == 0) throw DomainError("generating_function_check: p divides N");

  const CoefficientValue lambda = fam.lift_coeff(p);
  const CoefficientValue quad = CoefficientValue::of_root(eps->pow(2)) * power_of(p, 2 * fam.k() - 1);
  const CoefficientValue lin = fam.twisted_value(p) * power_of(p, fam.k() - 1);

  // c_nu = num_nu + lambda c_{nu-1} - quad c_{nu-2}, numerator 1 - lin X.
  std::vector<CoefficientValue> series;
  series.reserve(n_terms);
  for (unsigned nu = 0; nu < n_terms; ++nu) {
    CoefficientValue c = nu == 0 ? CoefficientValue(1L) : (nu == 1 ? -lin : CoefficientValue(0L));
    if (nu >= 1) c = c + lambda * series[nu - 1];
    if (nu >= 2) c = c - quad * series[nu - 2];
    series.push_back(std::move(c));
  }

  GeneratingFunctionReport report;
  report.p = p;
  report.terms = n_terms;
  const auto direct = family_prime_power_sequence(fam, p, n_terms - 1);
  for (unsigned nu = 0; nu < n_terms; ++nu) {
    if (!same_value(series[nu], direct[nu], rel_tol, report.exact)) report.mismatches.push_back(nu);
    report.max_rel_diff = std::max(report.max_rel_diff, relative_gap(series[nu], direct[nu]));
  }
  return report;
}

HalfIntegralData synthesize_half_integral(const ShimuraFamily& fam, std::uint64_t n_max) {
  HalfIntegralData data;
  data.k = fam.k();
  data.level = fam.level();
  data.character = fam.character();
  data.source = "synthesized from lift (" + fam.lift().source() + "), t=" + std::to_string(fam.t());
  for (std::uint64_t n = 1; n <= n_max; ++n) data.coeffs.emplace(fam.t() * n * n, family_coeff(fam, n));
  return data;
}

}  // namespace modsign

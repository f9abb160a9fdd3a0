#include "modsign/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modsign/arith.hpp"
#include "modsign/errors.hpp"
#include "modsign/parallel.hpp"

namespace modsign {
namespace {

mpz_class mpz_pow(std::uint64_t base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

// eps(p) p^{k-1} as a coefficient value; zero when p | N.
CoefficientValue hecke_twist(const NewformData& data, std::uint64_t p) {
  const auto eps = data.character().evaluate(static_cast<std::int64_t>(p));
  if (!eps) return CoefficientValue(0L);
  const mpz_class pk = mpz_pow(p, static_cast<unsigned long>(data.weight() - 1));
  return CoefficientValue::of_root(*eps) * CoefficientValue::integer(pk);
}

}  // namespace

NewformData::NewformData(int weight, std::uint64_t level, DirichletCharacter character, PrimeTable prime_coeffs,
                         bool source_normalized, std::string source)
    : weight_(weight),
      level_(level),
      character_(std::move(character)),
      prime_coeffs_(std::move(prime_coeffs)),
      source_normalized_(source_normalized),
      source_(std::move(source)) {
  if (weight_ < 2) throw ConstructionError("newform weight must be at least 2");
  if (level_ == 0 || level_ % character_.modulus() != 0)
    throw ConstructionError("character modulus " + std::to_string(character_.modulus()) +
                            " does not divide level " + std::to_string(level_));
  for (const auto& [p, v] : prime_coeffs_)
    if (!is_prime(p)) throw ConstructionError("prime table index " + std::to_string(p) + " is not prime");
}

const CoefficientValue& NewformData::at(std::uint64_t p) const {
  auto it = prime_coeffs_.find(p);
  if (it == prime_coeffs_.end()) throw NotAvailableError(p);
  return it->second;
}

std::uint64_t NewformData::max_prime() const {
  return prime_coeffs_.empty() ? 0 : prime_coeffs_.rbegin()->first;
}

double NewformData::half_weight_scale(std::uint64_t p) const {
  return std::pow(static_cast<double>(p), (weight_ - 1) / 2.0);
}

PrimeAngle PrimeAngle::synthetic(const ExactPhase& turns, const ExactPhase& zeta, std::uint64_t p) {
  if (2 * turns.num() > turns.den()) throw DomainError("synthetic angle must lie in [0, pi]");
  PrimeAngle a;
  a.p = p;
  a.zeta = zeta;
  a.theta = 2.0 * std::numbers::pi * turns.turns();
  a.normalized = std::cos(a.theta);
  a.boundary = turns.num() == 0 || 2 * turns.num() == turns.den();
  a.exact_turns = turns;
  return a;
}

ExactPhase zeta_for_prime(const NewformData& data, std::uint64_t p, ZetaMode mode) {
  const auto eps = data.character().evaluate(static_cast<std::int64_t>(p));
  if (!eps) throw DomainError("prime " + std::to_string(p) + " divides the level");
  if (mode == ZetaMode::character_direct) return *eps;
  return sqrt_convention(*eps, data.character().order());
}

CoefficientValue hecke_power(const NewformData& data, std::uint64_t p, unsigned nu) {
  if (nu == 0) return CoefficientValue(1L);
  const CoefficientValue& ap = data.at(p);
  const CoefficientValue twist = hecke_twist(data, p);
  CoefficientValue prev(1L);
  CoefficientValue cur = ap;
  for (unsigned i = 1; i < nu; ++i) {
    CoefficientValue next = ap * cur - twist * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<CoefficientValue> hecke_power_sequence(const NewformData& data, std::uint64_t p, unsigned nu_max) {
  std::vector<CoefficientValue> out;
  out.reserve(nu_max + 1);
  out.emplace_back(1L);
  if (nu_max == 0) return out;
  const CoefficientValue& ap = data.at(p);
  const CoefficientValue twist = hecke_twist(data, p);
  out.push_back(ap);
  for (unsigned i = 2; i <= nu_max; ++i) out.push_back(ap * out[i - 1] - twist * out[i - 2]);
  return out;
}

PrimeAngle extract_angle(const NewformData& data, std::uint64_t p, ZetaMode mode) {
  if (data.divides_level(p)) throw DomainError("extract_angle: p=" + std::to_string(p) + " divides the level");
  const CoefficientValue& ap = data.at(p);
  PrimeAngle out;
  out.p = p;
  out.zeta = zeta_for_prime(data, p, mode);
  const double scale = 2.0 * data.half_weight_scale(p);
  const std::complex<double> ratio = ap.approx() * std::conj(out.zeta.value()) / scale;
  out.normalized = ratio.real();
  if (std::abs(out.normalized) > 1.0 + kDeligneSlack)
    throw ValidationError("normalized coefficient outside [-1,1]", p);
  out.theta = std::acos(std::clamp(out.normalized, -1.0, 1.0));
  out.vanishing = ap.is_zero(scale);
  if (out.vanishing) out.normalized = 0.0;

  const auto zeta_exact = exact_root_of_unity(out.zeta);
  if (ap.is_exact() && zeta_exact) {
    // a(p) conj(zeta) = +-2 p^{(k-1)/2} exactly.
    const ComplexRational w = *ap.exact() * zeta_exact->conj();
    const mpq_class bound = 4 * mpq_class(mpz_pow(p, static_cast<unsigned long>(data.weight() - 1)));
    out.boundary = w.is_real() && w.re * w.re == bound;
  } else {
    out.boundary = out.theta < kBoundaryTol || std::numbers::pi - out.theta < kBoundaryTol;
  }
  return out;
}

std::vector<PrimeAngle> extract_angles(const NewformData& data, std::uint64_t x, ZetaMode mode, unsigned threads) {
  std::vector<std::uint64_t> primes;
  for (const std::uint64_t p : primes_up_to(x))
    if (!data.divides_level(p)) primes.push_back(p);
  if (!primes.empty() && !data.has(primes.back())) throw NotAvailableError(primes.back());
  std::vector<PrimeAngle> out(primes.size());
  parallel_for(primes.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = extract_angle(data, primes[i], mode);
  });
  return out;
}

CoefficientValue lemma1_eval(double theta, const ExactPhase& zeta, unsigned nu) {
  const CoefficientValue zeta_nu = CoefficientValue::of_root(zeta.pow(nu));
  const auto factor = static_cast<long>(nu + 1);
  constexpr double kLimit = 1e-12;
  if (theta <= kLimit) return CoefficientValue(factor) * zeta_nu;
  if (std::numbers::pi - theta <= kLimit) return CoefficientValue(nu % 2 == 0 ? factor : -factor) * zeta_nu;
  const double s = std::sin((nu + 1) * theta) / std::sin(theta);
  return CoefficientValue(std::complex<double>(s, 0.0) * zeta_nu.approx());
}

CoefficientValue multiplicative_extend(const NewformData& data, std::uint64_t n) {
  if (n == 0) throw DomainError("multiplicative_extend: n must be positive");
  CoefficientValue v(1L);
  for (const auto& [p, e] : factorize(n)) v = v * hecke_power(data, p, e);
  return v;
}

CmScan cm_vanishing_scan(const NewformData& data, std::int64_t d, std::uint64_t x) {
  CmScan scan;
  bool all_exact = true;
  for (const std::uint64_t p : primes_up_to(x)) {
    if (data.divides_level(p)) continue;
    const CoefficientValue& ap = data.at(p);
    all_exact = all_exact && ap.is_exact();
    const bool inert = kronecker(d, static_cast<std::int64_t>(p)) == -1;
    const bool vanishes = ap.is_zero(2.0 * data.half_weight_scale(p));
    if (inert) ++scan.inert_primes;
    if (vanishes) ++scan.vanishing_primes;
    if (inert && vanishes) {
      ++scan.inert_vanishing;
      ++scan.vanishing_inert;
    }
  }
  if (scan.inert_primes > 0)
    scan.inert_vanishing_fraction = static_cast<double>(scan.inert_vanishing) / static_cast<double>(scan.inert_primes);
  if (scan.vanishing_primes > 0)
    scan.vanishing_inert_fraction = static_cast<double>(scan.vanishing_inert) / static_cast<double>(scan.vanishing_primes);
  scan.cm_consistent = all_exact && scan.inert_primes > 0 && scan.inert_vanishing == scan.inert_primes;
  return scan;
}

std::vector<std::uint64_t> deligne_violations(const NewformData& data, double rel_tol) {
  std::vector<std::uint64_t> bad;
  for (const auto& [p, v] : data.prime_coeffs()) {
    if (data.divides_level(p)) continue;
    if (v.is_exact()) {
      const mpq_class bound = 4 * mpq_class(mpz_pow(p, static_cast<unsigned long>(data.weight() - 1)));
      if (v.exact()->norm() > bound) bad.push_back(p);
    } else if (std::abs(v.approx()) > 2.0 * data.half_weight_scale(p) * (1.0 + rel_tol)) {
      bad.push_back(p);
    }
  }
  return bad;
}

std::vector<std::uint64_t> reality_violations(const NewformData& data, double rel_tol) {
  std::vector<std::uint64_t> bad;
  for (const auto& [p, v] : data.prime_coeffs()) {
    if (data.divides_level(p)) continue;
    const ExactPhase zeta = zeta_for_prime(data, p, ZetaMode::sqrt_of_character);
    const auto zeta_exact = exact_root_of_unity(zeta);
    if (v.is_exact() && zeta_exact) {
      if (!(*v.exact() * zeta_exact->conj()).is_real()) bad.push_back(p);
      continue;
    }
    const double im = (v.approx() * std::conj(zeta.value())).imag();
    if (std::abs(im) > rel_tol * 2.0 * data.half_weight_scale(p)) bad.push_back(p);
  }
  return bad;
}

void validate_newform(const NewformData& data) {
  const auto d = deligne_violations(data);
  const auto r = reality_violations(data);
  if (!d.empty() && (r.empty() || d.front() <= r.front()))
    throw ValidationError("coefficient exceeds the Deligne bound 2 p^{(k-1)/2}", d.front());
  if (!r.empty()) throw ValidationError("a(p)/zeta is not real", r.front());
}

}  // namespace modsign

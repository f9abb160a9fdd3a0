#include "modsign/empirical.hpp"

#include <cmath>
#include <numbers>

#include "modsign/arith.hpp"
#include "modsign/errors.hpp"
#include "modsign/parallel.hpp"

namespace modsign {
namespace {

double share(std::uint64_t part, std::uint64_t whole) {
  return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}

void merge(DensityEstimate& into, const DensityEstimate& from) {
  into.count_pos += from.count_pos;
  into.count_neg += from.count_neg;
  into.count_zero += from.count_zero;
  into.count_excluded += from.count_excluded;
  into.total += from.total;
}

/// Runs classify over primes in fixed chunks and sums the per-chunk counts in order.
template <class Classify>
DensityEstimate over_primes(const std::vector<std::uint64_t>& primes, unsigned threads, Classify classify) {
  const std::size_t chunk_count = std::max<std::size_t>(1, std::min<std::size_t>(primes.size(), 64));
  std::vector<DensityEstimate> parts(chunk_count);
  const std::size_t per = (primes.size() + chunk_count - 1) / chunk_count;
  parallel_for(chunk_count, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      const std::size_t lo = c * per;
      const std::size_t hi = std::min(primes.size(), lo + per);
      for (std::size_t i = lo; i < hi; ++i) classify(primes[i], parts[c]);
    }
  });
  DensityEstimate out;
  for (const auto& part : parts) merge(out, part);
  return out;
}

}  // namespace

double DensityEstimate::ratio_pos() const { return share(count_pos, classified()); }
double DensityEstimate::ratio_neg() const { return share(count_neg, classified()); }
double DensityEstimate::ratio_zero() const { return share(count_zero, classified()); }
double DensityEstimate::ratio_nonzero() const { return share(nonzero(), classified()); }

std::optional<double> DensityEstimate::pos_of_nonzero() const {
  if (nonzero() == 0) return std::nullopt;
  return share(count_pos, nonzero());
}

void DensityEstimate::add(Sign s) {
  ++total;
  if (s == Sign::positive) ++count_pos;
  else if (s == Sign::negative) ++count_neg;
  else ++count_zero;
}

DensityEstimate empirical_density_primes(const NewformData& data, const HalfPlaneQuery& query, std::uint64_t x,
                                         ZetaMode mode, unsigned threads) {
  if (x < 2) throw EmptySampleError("no primes up to x");
  if (query.nu == 0) throw DomainError("nu must be positive");
  const auto primes = primes_up_to(x);
  for (const auto p : primes)
    if (!data.divides_level(p) && !data.has(p)) throw NotAvailableError(p);
  const double k1 = static_cast<double>(data.weight() - 1);
  return over_primes(primes, threads, [&](std::uint64_t p, DensityEstimate& est) {
    if (data.divides_level(p)) {
      ++est.total;
      ++est.count_excluded;
      return;
    }
    if (extract_angle(data, p, mode).boundary) {
      ++est.total;
      ++est.count_excluded;
      return;
    }
    const CoefficientValue v = hecke_power(data, p, query.nu);
    const double scale = (query.nu + 1) * std::pow(static_cast<double>(p), query.nu * k1 / 2.0);
    est.add(rotated_real_sign(v, query.phi, scale));
  });
}

DensityEstimate empirical_density_tp2(const ShimuraFamily& fam, const Direction& phi, std::uint64_t x,
                                      unsigned threads) {
  if (x < 2) throw EmptySampleError("no primes up to x");
  const auto primes = primes_up_to(x);
  const double k = static_cast<double>(fam.k());
  return over_primes(primes, threads, [&](std::uint64_t p, DensityEstimate& est) {
    if (fam.level() % p == 0) {
      ++est.total;
      ++est.count_excluded;
      return;
    }
    const CoefficientValue v = family_prime_power(fam, p, 1);
    const double scale = 2.0 * std::pow(static_cast<double>(p), k - 0.5);
    est.add(rotated_real_sign(v, phi, scale));
  });
}

DensityEstimate fixed_prime_density(const PrimeAngle& angle, const Direction& phi, std::uint64_t nu_max) {
  if (angle.boundary) throw DomainError("fixed-prime analysis does not cover boundary angles");
  DensityEstimate est;
  ExactPhase zeta_pow;  // zeta^nu
  for (std::uint64_t nu = 1; nu <= nu_max; ++nu) {
    zeta_pow *= angle.zeta;
    Sign s_sin;
    if (angle.exact_turns) {
      s_sin = angle.exact_turns->pow(static_cast<std::int64_t>(nu + 1)).imag_sign();
    } else {
      const double s = std::sin(std::fmod(static_cast<long double>(nu + 1) * angle.theta,
                                          2.0L * std::numbers::pi_v<long double>));
      s_sin = std::abs(s) < kBoundaryTol ? Sign::zero : sign_of(s);
    }
    est.add(s_sin == Sign::zero ? Sign::zero : s_sin * rotated_real_sign(zeta_pow, phi));
  }
  est.predicted_pos_of_nonzero = mpq_class(1, 2);
  return est;
}

DensityEstimate fixed_prime_density(const NewformData& data, std::uint64_t p, const Direction& phi,
                                    std::uint64_t nu_max, ZetaMode mode) {
  return fixed_prime_density(extract_angle(data, p, mode), phi, nu_max);
}

std::string to_string(OscillationVerdict v) {
  switch (v) {
    case OscillationVerdict::oscillating_evidence: return "oscillating-evidence";
    case OscillationVerdict::trivial: return "trivial";
    case OscillationVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

OscillationCertificate oscillation_certificate(const std::function<CoefficientValue(std::size_t)>& seq,
                                               const Direction& phi, std::size_t horizon,
                                               const std::function<double(std::size_t)>& scale) {
  if (horizon < 2) throw DomainError("oscillation horizon must be at least 2");
  OscillationCertificate cert;
  Sign last = Sign::zero;
  for (std::size_t i = 0; i < horizon; ++i) {
    const Sign s = rotated_real_sign(seq(i), phi, scale ? scale(i) : 1.0);
    ++cert.examined;
    if (s == Sign::zero) continue;
    ++cert.nonzero;
    if (last != Sign::zero && s != last) cert.sign_changes.push_back(i);
    last = s;
  }
  if (cert.nonzero == 0) cert.verdict = OscillationVerdict::trivial;
  else if (cert.sign_changes.empty()) cert.verdict = OscillationVerdict::inconclusive;
  else cert.verdict = OscillationVerdict::oscillating_evidence;
  return cert;
}

DensityEstimate conjecture_ratio(const std::map<std::uint64_t, CoefficientValue>& half_coeffs, const Direction& phi,
                                 std::uint64_t x, ComplexPart part) {
  const Direction dir = part == ComplexPart::real ? phi : phi.quarter_turn();
  DensityEstimate est;
  for (auto it = half_coeffs.begin(); it != half_coeffs.end() && it->first <= x; ++it) {
    const double scale = std::max(1.0, std::abs(it->second.approx()));
    est.add(rotated_real_sign(it->second, dir, scale));
  }
  if (est.total == 0) throw EmptySampleError("no coefficients with index <= x");
  est.predicted_pos_of_nonzero = mpq_class(1, 2);
  return est;
}

EquidistributionResult equidistribution_test(const std::vector<PrimeAngle>& angles, MeasureKind kind) {
  std::vector<double> samples;
  samples.reserve(angles.size());
  EquidistributionResult out;
  for (const auto& a : angles) {
    samples.push_back(std::clamp(a.normalized, -1.0, 1.0));
    if (a.vanishing) ++out.atom_count;
  }
  out.sample_size = samples.size();
  out.ks = ks_statistic(samples, kind == MeasureKind::sato_tate ? sato_tate_distribution() : cm_distribution());
  out.atom_fraction = share(out.atom_count, out.sample_size);
  return out;
}

EquidistributionResult continuous_angle_test(const std::vector<PrimeAngle>& angles) {
  std::vector<double> samples;
  EquidistributionResult out;
  for (const auto& a : angles) {
    if (a.vanishing) {
      ++out.atom_count;
      continue;
    }
    samples.push_back(a.theta);
  }
  out.sample_size = samples.size();
  out.ks = ks_statistic(samples, uniform_distribution(0.0, std::numbers::pi));
  out.atom_fraction = share(out.atom_count, angles.size());
  return out;
}

}  // namespace modsign

#include "modsign/qseries.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "modsign/arith.hpp"
#include "modsign/errors.hpp"
#include "modsign/parallel.hpp"

namespace modsign {
namespace {

// Offsets of +1 and -1 terms of prod (1 - q^{mn}) below `length`, ascending.
struct SparseEta {
  std::vector<std::size_t> plus;
  std::vector<std::size_t> minus;
};

SparseEta pentagonal_terms(std::uint64_t m, std::size_t length) {
  SparseEta t;
  t.plus.push_back(0);
  for (std::uint64_t k = 1;; ++k) {
    const std::uint64_t g1 = m * (k * (3 * k - 1) / 2);
    if (g1 >= length) break;
    const std::uint64_t g2 = m * (k * (3 * k + 1) / 2);
    auto& dst = (k % 2 == 1) ? t.minus : t.plus;
    dst.push_back(g1);
    if (g2 < length) dst.push_back(g2);
  }
  std::sort(t.plus.begin(), t.plus.end());
  std::sort(t.minus.begin(), t.minus.end());
  return t;
}

// out = in * eta-factor with 128-bit accumulators; false on any overflow.
bool multiply_fast(const std::vector<__int128>& in, std::vector<__int128>& out, const SparseEta& t,
                   unsigned threads) {
  std::atomic<bool> overflow{false};
  parallel_for(in.size(), threads, [&](std::size_t begin, std::size_t end) {
    bool of = false;
    for (std::size_t n = begin; n < end; ++n) {
      __int128 pos = 0;
      __int128 neg = 0;
      for (const std::size_t o : t.plus) {
        if (o > n) break;
        of |= __builtin_add_overflow(pos, in[n - o], &pos);
      }
      for (const std::size_t o : t.minus) {
        if (o > n) break;
        of |= __builtin_add_overflow(neg, in[n - o], &neg);
      }
      of |= __builtin_sub_overflow(pos, neg, &out[n]);
    }
    if (of) overflow.store(true, std::memory_order_relaxed);
  });
  return !overflow.load();
}

void multiply_exact(const std::vector<mpz_class>& in, std::vector<mpz_class>& out, const SparseEta& t,
                    unsigned threads) {
  parallel_for(in.size(), threads, [&](std::size_t begin, std::size_t end) {
    mpz_class acc;
    for (std::size_t n = begin; n < end; ++n) {
      acc = 0;
      for (const std::size_t o : t.plus) {
        if (o > n) break;
        acc += in[n - o];
      }
      for (const std::size_t o : t.minus) {
        if (o > n) break;
        acc -= in[n - o];
      }
      out[n] = acc;
    }
  });
}

mpz_class to_mpz(__int128 v) {
  const bool negative = v < 0;
  const unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class r = static_cast<unsigned long>(u >> 64);
  r <<= 64;
  r += static_cast<unsigned long>(u & ~static_cast<unsigned long>(0));
  return negative ? mpz_class(-r) : r;
}

}  // namespace

PowerSeries PowerSeries::operator+(const PowerSeries& other) const {
  const std::size_t n = std::min(length(), other.length());
  PowerSeries r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = coeffs_[i] + other[i];
  return r;
}

PowerSeries PowerSeries::operator-(const PowerSeries& other) const {
  const std::size_t n = std::min(length(), other.length());
  PowerSeries r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = coeffs_[i] - other[i];
  return r;
}

PowerSeries PowerSeries::operator*(const PowerSeries& other) const {
  const std::size_t n = std::min(length(), other.length());
  PowerSeries r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] += coeffs_[i] * other[j];
  }
  return r;
}

PowerSeries PowerSeries::shifted(std::int64_t k) const {
  PowerSeries r(length());
  for (std::size_t i = 0; i < length(); ++i) {
    const std::int64_t src = static_cast<std::int64_t>(i) - k;
    if (src >= 0 && static_cast<std::size_t>(src) < length()) r[i] = coeffs_[static_cast<std::size_t>(src)];
  }
  return r;
}

EtaProductSpec EtaProductSpec::parse(const std::string& text) {
  EtaProductSpec spec;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("bad eta factor '" + item + "', expected m:e with m >= 1, e >= 1");
    try {
      EtaFactor f;
      std::size_t used = 0;
      const std::string m_text = item.substr(0, colon);
      const long long m = std::stoll(m_text, &used);
      if (used != m_text.size() || m <= 0) throw ParseError("bad multiplier");
      f.multiplier = static_cast<std::uint64_t>(m);
      const std::string e_text = item.substr(colon + 1);
      f.exponent = std::stoi(e_text, &used);
      if (used != e_text.size() || f.exponent < 1) throw ParseError("bad exponent");
      spec.factors.push_back(f);
    } catch (const std::exception&) {
      throw ParseError("bad eta factor '" + item + "', expected m:e with m >= 1, e >= 1");
    }
  }
  if (spec.factors.empty()) throw ParseError("empty eta product spec");
  return spec;
}

std::string EtaProductSpec::to_string() const {
  std::string s;
  for (const auto& f : factors) {
    if (!s.empty()) s += ",";
    s += std::to_string(f.multiplier) + ":" + std::to_string(f.exponent);
  }
  return s;
}

int EtaProductSpec::exponent_sum() const {
  int s = 0;
  for (const auto& f : factors) s += f.exponent;
  return s;
}

std::uint64_t EtaProductSpec::leading_exponent_times_24() const {
  std::uint64_t s = 0;
  for (const auto& f : factors) s += f.multiplier * static_cast<std::uint64_t>(f.exponent);
  return s;
}

PowerSeries eta_expand(std::uint64_t m, std::size_t n_max) {
  if (m == 0) throw DomainError("eta multiplier must be positive");
  PowerSeries r(n_max);
  const SparseEta t = pentagonal_terms(m, n_max);
  for (const std::size_t o : t.plus) r[o] = 1;
  for (const std::size_t o : t.minus) r[o] = -1;
  return r;
}

PowerSeries eta_product_expand(const EtaProductSpec& spec, std::size_t n_max, unsigned threads) {
  const std::uint64_t s24 = spec.leading_exponent_times_24();
  if (s24 % 24 != 0)
    throw DomainError("eta product " + spec.to_string() + ": sum m*e = " + std::to_string(s24) +
                      " is not divisible by 24");
  const std::uint64_t lead = s24 / 24;
  PowerSeries result(n_max + 1);
  if (lead > n_max) return result;
  const std::size_t length = n_max + 1 - lead;

  std::vector<SparseEta> passes;
  for (const auto& f : spec.factors)
    for (int i = 0; i < f.exponent; ++i) passes.push_back(pentagonal_terms(f.multiplier, length));

  std::vector<__int128> a(length, 0);
  std::vector<__int128> b(length, 0);
  a[0] = 1;
  bool fast_ok = true;
  for (const auto& t : passes) {
    if (!multiply_fast(a, b, t, threads)) {
      fast_ok = false;
      break;
    }
    a.swap(b);
  }

  if (fast_ok) {
    for (std::size_t i = 0; i < length; ++i) result[i + lead] = to_mpz(a[i]);
    return result;
  }

  // 128-bit overflow: redo everything with arbitrary precision.
  std::vector<mpz_class> x(length);
  std::vector<mpz_class> y(length);
  x[0] = 1;
  for (const auto& t : passes) {
    multiply_exact(x, y, t, threads);
    x.swap(y);
  }
  for (std::size_t i = 0; i < length; ++i) result[i + lead] = x[i];
  return result;
}

NewformData series_to_newform(const PowerSeries& series, int weight, std::uint64_t level,
                              const DirichletCharacter& character, std::string source) {
  if (series.length() < 2 || series[1] != 1) throw DomainError("series is not normalized: a(1) != 1");
  NewformData::PrimeTable table;
  for (const std::uint64_t p : primes_up_to(series.length() - 1)) table.emplace(p, CoefficientValue::integer(series[p]));
  return NewformData(weight, level, character, std::move(table), false, std::move(source));
}

}  // namespace modsign

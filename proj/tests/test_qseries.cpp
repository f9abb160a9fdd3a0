#include <doctest.h>

#include <random>

#include "modsign/errors.hpp"
#include "modsign/qseries.hpp"
#include "oracles.hpp"

using namespace modsign;

namespace {

/// a(0..n_max) of prod eta(m z)^e by naive multiplication, shifted to true q-powers.
std::vector<mpz_class> naive_eta_spec(const std::vector<std::pair<std::uint64_t, int>>& factors, std::size_t n_max) {
  std::uint64_t shift24 = 0;
  for (const auto& [m, e] : factors) shift24 += m * static_cast<std::uint64_t>(e);
  const std::size_t shift = shift24 / 24;
  const std::size_t len = n_max + 1;
  std::vector<mpz_class> prod(len, 0);
  prod[0] = 1;
  for (const auto& [m, e] : factors)
    prod = oracle::mul(prod, oracle::naive_power(oracle::naive_eta_product(m, len), e, len), len);
  std::vector<mpz_class> out(len, 0);
  for (std::size_t n = shift; n < len; ++n) out[n] = prod[n - shift];
  return out;
}

}  // namespace

TEST_SUITE("qseries") {
  TEST_CASE("pentagonal expansion equals the naive product") {
    for (std::uint64_t m : {1u, 2u, 3u, 7u}) {
      const PowerSeries s = eta_expand(m, 600);
      CHECK(s.length() == 600);
      CHECK(s.coeffs() == oracle::naive_eta_product(m, 600));
    }
  }

  TEST_CASE("eta(mz) is eta(z) with q replaced by q^m") {
    const PowerSeries one = eta_expand(1, 100);
    const PowerSeries four = eta_expand(4, 400);
    for (std::size_t n = 0; n < 400; ++n) CHECK(four[n] == (n % 4 == 0 ? one[n / 4] : mpz_class(0)));
  }

  TEST_CASE("Ramanujan tau values") {
    const PowerSeries d = eta_product_expand(EtaProductSpec::parse("1:24"), 2000);
    REQUIRE(d.length() == 2001);
    CHECK(d[0] == 0);
    CHECK(d[1] == 1);
    CHECK(d[2] == -24);
    CHECK(d[3] == 252);
    CHECK(d[4] == d[2] * d[2] - 2048);
    CHECK(d[6] == d[2] * d[3]);
    CHECK(d[5] == 4830);
    CHECK(d[10] == d[2] * d[5]);
    CHECK(d[1000] == d[8] * d[125]);
    CHECK(d[8] == 84480);
  }

  TEST_CASE("eta products agree with naive multiplication") {
    const std::vector<std::vector<std::pair<std::uint64_t, int>>> specs = {
        {{1, 24}}, {{4, 6}}, {{4, 2}, {8, 2}}, {{1, 2}, {11, 2}}, {{2, 12}}, {{1, 8}, {2, 8}}};
    for (const auto& f : specs) {
      EtaProductSpec spec;
      for (const auto& [m, e] : f) spec.factors.push_back({m, e});
      CHECK(eta_product_expand(spec, 400).coeffs() == naive_eta_spec(f, 400));
    }
  }

  TEST_CASE("huge coefficients take the big-integer path and stay exact") {
    // eta^240 has binomial-sized coefficients far beyond 128 bits
    const auto expected = naive_eta_spec({{1, 240}}, 160);
    const PowerSeries s = eta_product_expand(EtaProductSpec::parse("1:240"), 160);
    CHECK(s.coeffs() == expected);
    mpz_class biggest = 0;
    for (const auto& c : expected) biggest = std::max(biggest, mpz_class(abs(c)));
    CHECK(mpz_sizeinbase(biggest.get_mpz_t(), 2) > 128);
  }

  TEST_CASE("thread count does not change the expansion") {
    const auto spec = EtaProductSpec::parse("4:2,8:2");
    CHECK(eta_product_expand(spec, 5000, 1) == eta_product_expand(spec, 5000, 3));
  }

  TEST_CASE("eta(4z)^6 vanishes at every prime 3 mod 4") {
    const PowerSeries s = eta_product_expand(EtaProductSpec::parse("4:6"), 3000);
    CHECK(s[1] == 1);
    for (const auto p : oracle::primes_below(3001))
      if (p % 4 == 3) CHECK(s[p] == 0);
  }

  TEST_CASE("spec parsing and weight") {
    const auto spec = EtaProductSpec::parse("4:2,8:2");
    CHECK(spec.factors.size() == 2);
    CHECK(spec.twice_weight() == 4);
    CHECK(spec.leading_exponent_times_24() == 24);
    CHECK(EtaProductSpec::parse(spec.to_string()).to_string() == spec.to_string());
    CHECK_THROWS_AS(EtaProductSpec::parse("4"), ParseError);
    CHECK_THROWS_AS(EtaProductSpec::parse("a:b"), ParseError);
    CHECK_THROWS_AS(eta_product_expand(EtaProductSpec::parse("1:12"), 10), DomainError);
  }

  TEST_CASE("series arithmetic properties") {
    std::mt19937_64 rng(3);
    auto random_series = [&](std::size_t n) {
      std::vector<mpz_class> c(n);
      for (auto& x : c) x = static_cast<long>(rng() % 201) - 100;
      return PowerSeries(c);
    };
    for (int it = 0; it < 20; ++it) {
      const auto a = random_series(40);
      const auto b = random_series(40);
      const auto c = random_series(40);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a) == PowerSeries(std::vector<mpz_class>(40, 0)));
      CHECK((a * b).coeffs() == oracle::mul(a.coeffs(), b.coeffs(), 40));
    }
    const PowerSeries one(std::vector<mpz_class>{1, 2, 3});
    CHECK(one.shifted(1).coeffs() == std::vector<mpz_class>{0, 1, 2});
    CHECK(one.shifted(-1).coeffs() == std::vector<mpz_class>{2, 3, 0});
  }

  TEST_CASE("series_to_newform keeps primes and requires a(1) = 1") {
    const PowerSeries d = eta_product_expand(EtaProductSpec::parse("1:24"), 100);
    const NewformData f = series_to_newform(d, 12, 1, DirichletCharacter::trivial(1));
    CHECK(f.prime_coeffs().size() == 25);
    CHECK(*f.at(97).exact() == ComplexRational(mpq_class(d[97])));
    PowerSeries bad = d;
    bad[1] = 2;
    CHECK_THROWS_AS(series_to_newform(bad, 12, 1, DirichletCharacter::trivial(1)), DomainError);
  }
}

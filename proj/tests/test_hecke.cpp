#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "modsign/arith.hpp"
#include "modsign/errors.hpp"
#include "modsign/hecke.hpp"
#include "oracles.hpp"

using namespace modsign;

TEST_SUITE("hecke") {
  TEST_CASE("recurrence reproduces the expansion at prime powers") {
    struct Case {
      std::shared_ptr<const NewformData> f;
      const PowerSeries* s;
    };
    for (const auto& c : {Case{fixtures::delta(), &fixtures::delta_series()}, Case{fixtures::cm3(), &fixtures::cm3_series()},
                          Case{fixtures::cm32(), &fixtures::cm32_series()}}) {
      for (const auto p : oracle::primes_below(2000)) {
        std::uint64_t pn = p;
        for (unsigned nu = 1; pn <= 20000; ++nu) {
          if (!c.f->divides_level(p)) {
            const CoefficientValue v = hecke_power(*c.f, p, nu);
            REQUIRE(v.is_exact());
            CHECK(*v.exact() == ComplexRational(mpq_class((*c.s)[pn])));
          }
          pn *= p;
        }
      }
    }
  }

  TEST_CASE("hecke_power_sequence agrees with hecke_power") {
    const auto f = fixtures::delta();
    const auto seq = hecke_power_sequence(*f, 3, 12);
    REQUIRE(seq.size() == 13);
    CHECK(*seq[0].exact() == ComplexRational(mpq_class(1)));
    for (unsigned nu = 1; nu <= 12; ++nu) CHECK(*seq[nu].exact() == *hecke_power(*f, 3, nu).exact());
  }

  TEST_CASE("multiplicative extension matches the expansion for n <= 2000") {
    const auto f = fixtures::delta();
    for (std::uint64_t n = 1; n <= 2000; ++n) CHECK(*multiplicative_extend(*f, n).exact() == ComplexRational(mpq_class(fixtures::delta_series()[n])));
    const auto g = fixtures::cm3();
    for (std::uint64_t n = 1; n <= 2000; n += 2)  // odd n avoid the level
      CHECK(*multiplicative_extend(*g, n).exact() == ComplexRational(mpq_class(fixtures::cm3_series()[n])));
  }

  TEST_CASE("angle of Delta at p = 2") {
    const PrimeAngle a = extract_angle(*fixtures::delta(), 2, ZetaMode::sqrt_of_character);
    CHECK(a.zeta.is_one());
    CHECK(a.normalized == doctest::Approx(-24.0 / (2.0 * std::pow(2.0, 5.5))));
    CHECK(a.theta == doctest::Approx(std::acos(-24.0 / (2.0 * std::pow(2.0, 5.5)))));
    CHECK(!a.boundary);
    CHECK(!a.vanishing);
  }

  TEST_CASE("angles of the CM form: zeta from the character square root") {
    const auto f = fixtures::cm3();
    const PrimeAngle a3 = extract_angle(*f, 3, ZetaMode::sqrt_of_character);
    CHECK(a3.zeta == ExactPhase(1, 4));  // eps(3) = -1, square root i
    CHECK(a3.vanishing);
    CHECK(a3.theta == doctest::Approx(M_PI / 2));
    const PrimeAngle a5 = extract_angle(*f, 5, ZetaMode::sqrt_of_character);
    CHECK(a5.zeta == ExactPhase(1, 2));  // eps(5) = 1, r = 2 gives e^{pi i} = -1
    CHECK(fixtures::cm3_series()[5] == -6);
    CHECK(a5.normalized == doctest::Approx(0.6));
    CHECK_THROWS_AS(extract_angle(*f, 2, ZetaMode::sqrt_of_character), DomainError);
  }

  TEST_CASE("lemma1_eval matches the normalized recurrence") {
    for (const auto& f : {fixtures::delta(), fixtures::cm3()}) {
      const double half = (f->weight() - 1) / 2.0;
      for (const auto p : oracle::primes_below(200)) {
        if (f->divides_level(p)) continue;
        const PrimeAngle a = extract_angle(*f, p, ZetaMode::sqrt_of_character);
        for (unsigned nu = 0; nu <= 8; ++nu) {
          const auto exact = hecke_power(*f, p, nu).approx() / std::pow(static_cast<double>(p), nu * half);
          const auto l1 = lemma1_eval(a.theta, a.zeta, nu).approx();
          CHECK(std::abs(exact - l1) <= 1e-6 * std::max(1.0, std::abs(l1)));
        }
      }
    }
  }

  TEST_CASE("lemma1_eval limits at the boundary") {
    const ExactPhase one;
    for (unsigned nu = 0; nu < 6; ++nu) {
      CHECK(*lemma1_eval(0.0, one, nu).exact() == ComplexRational(mpq_class(nu + 1)));
      const long sign = nu % 2 ? -1 : 1;
      CHECK(*lemma1_eval(M_PI, one, nu).exact() == ComplexRational(mpq_class(sign * static_cast<long>(nu + 1))));
    }
    CHECK(lemma1_eval(M_PI / 2, one, 1).approx().real() == doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("boundary detection and validation") {
    NewformData::PrimeTable t;
    t.emplace(2, CoefficientValue(4L));   // 2 * 2^{(3-1)/2}: theta = 0
    t.emplace(3, CoefficientValue(0L));
    t.emplace(5, CoefficientValue(-10L)); // theta = pi
    const NewformData f(3, 1, DirichletCharacter::trivial(1), t);
    CHECK(extract_angle(f, 2, ZetaMode::sqrt_of_character).boundary);
    CHECK(!extract_angle(f, 3, ZetaMode::sqrt_of_character).boundary);
    CHECK(extract_angle(f, 5, ZetaMode::sqrt_of_character).boundary);
    CHECK(deligne_violations(f).empty());

    t[3] = CoefficientValue(7L);  // 7 > 2 * 3
    const NewformData g(3, 1, DirichletCharacter::trivial(1), t);
    CHECK(deligne_violations(g) == std::vector<std::uint64_t>{3});
    CHECK_THROWS_AS(extract_angle(g, 3, ZetaMode::sqrt_of_character), ValidationError);
    try {
      validate_newform(g);
      CHECK(false);
    } catch (const ValidationError& e) {
      CHECK(e.prime() == 3);
    }
  }

  TEST_CASE("reality check flags values off the zeta line") {
    NewformData::PrimeTable t;
    t.emplace(3, CoefficientValue(ComplexRational(mpq_class(1), mpq_class(1))));
    const NewformData f(3, 1, DirichletCharacter::trivial(1), t);
    CHECK(reality_violations(f) == std::vector<std::uint64_t>{3});
    CHECK(reality_violations(*fixtures::cm3()).empty());
    CHECK(reality_violations(*fixtures::delta()).empty());
  }

  TEST_CASE("newform construction errors") {
    NewformData::PrimeTable t;
    t.emplace(4, CoefficientValue(1L));
    CHECK_THROWS_AS(NewformData(12, 1, DirichletCharacter::trivial(1), t), ConstructionError);
    CHECK_THROWS_AS(NewformData(1, 1, DirichletCharacter::trivial(1), {}), ConstructionError);
    CHECK_THROWS_AS(NewformData(2, 6, DirichletCharacter::trivial(4), {}), ConstructionError);
    CHECK_THROWS_AS(fixtures::delta()->at(20011), NotAvailableError);
  }

  TEST_CASE("CM scan of eta(4z)^6 against Q(i)") {
    const CmScan s = cm_vanishing_scan(*fixtures::cm3(), -4, 20000);
    CHECK(s.cm_consistent);
    REQUIRE(s.inert_vanishing_fraction);
    CHECK(*s.inert_vanishing_fraction == 1.0);
    CHECK(*s.vanishing_inert_fraction == 1.0);
    const CmScan d = cm_vanishing_scan(*fixtures::delta(), -4, 2000);
    CHECK(!d.cm_consistent);
  }

  TEST_CASE("extract_angles is deterministic across threads and skips the level") {
    const auto a1 = extract_angles(*fixtures::cm3(), 20000, ZetaMode::sqrt_of_character, 1);
    const auto a4 = extract_angles(*fixtures::cm3(), 20000, ZetaMode::sqrt_of_character, 4);
    REQUIRE(a1.size() == a4.size());
    CHECK(a1.size() == primes_up_to(20000).size() - 1);
    for (std::size_t i = 0; i < a1.size(); ++i) {
      CHECK(a1[i].p == a4[i].p);
      CHECK(a1[i].theta == a4[i].theta);
    }
  }
}

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <unistd.h>

#include "modsign/arith.hpp"
#include "modsign/cli.hpp"
#include "modsign/empirical.hpp"
#include "modsign/io.hpp"
#include "modsign/measures.hpp"
#include "modsign/predict.hpp"
#include "modsign/qseries.hpp"
#include "modsign/report.hpp"
#include "modsign/shimura.hpp"

using namespace modsign;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kX = 200000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

struct Fixtures {
  fs::path dir;
  PowerSeries delta_series;
  PowerSeries cm3_series;
  double delta_expand_seconds = 0;
  std::shared_ptr<const NewformData> delta;
  std::shared_ptr<const NewformData> cm3;
  std::shared_ptr<const NewformData> cm32;
};

Fixtures& fixtures() {
  static Fixtures f = [] {
    Fixtures x;
    x.dir = fs::temp_directory_path() / ("modsign_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(x.dir);
    const auto t0 = Clock::now();
    x.delta_series = eta_product_expand(EtaProductSpec::parse("1:24"), kX);
    x.delta_expand_seconds = seconds_since(t0);
    x.delta = std::make_shared<const NewformData>(
        series_to_newform(x.delta_series, 12, 1, DirichletCharacter::trivial(1), "eta(z)^24"));
    x.cm3_series = eta_product_expand(EtaProductSpec::parse("4:6"), kX);
    x.cm3 = std::make_shared<const NewformData>(
        series_to_newform(x.cm3_series, 3, 16, DirichletCharacter(16, {1, 0}), "eta(4z)^6"));
    const auto s32 = eta_product_expand(EtaProductSpec::parse("4:2,8:2"), kX);
    x.cm32 = std::make_shared<const NewformData>(
        series_to_newform(s32, 2, 32, DirichletCharacter::trivial(1), "eta(4z)^2 eta(8z)^2"));
    io::save_newform(*x.delta, x.dir / "delta.json");
    io::save_newform(*x.cm3, x.dir / "cm3.json");
    io::save_newform(*x.cm32, x.dir / "cm32.json");
    return x;
  }();
  return f;
}

ShimuraFamily delta_family() { return ShimuraFamily(1, 6, 4, DirichletCharacter::trivial(4), fixtures().delta); }

Outcome oracle_integrity() {
  Outcome o;
  auto& f = fixtures();
  const auto& d = f.delta_series;
  o.require(f.delta_expand_seconds <= 30.0, "expansion within 30 s");
  o.note("expansion " + fmt("%.1f s", f.delta_expand_seconds));
  o.require(d[2] == -24 && d[3] == 252, "tau(2) = -24, tau(3) = 252");
  o.require(d[6] == d[2] * d[3], "tau(6) = tau(2) tau(3)");
  o.require(d[4] == d[2] * d[2] - 2048, "tau(4) = tau(2)^2 - 2^11");
  const auto violations = deligne_violations(*f.delta, 0.0);
  const auto primes = primes_up_to(kX);
  o.require(f.delta->prime_coeffs().size() == primes.size(), "every prime up to 2e5 present");
  o.require(violations.empty(), "Deligne bound at every prime");
  o.note(std::to_string(primes.size()) + " primes bounded");
  return o;
}

Outcome hecke_consistency() {
  Outcome o;
  auto& f = fixtures();
  std::size_t checked = 0;
  double worst = 0;
  for (const auto& [form, series] : {std::pair{f.delta, &f.delta_series}, std::pair{f.cm3, &f.cm3_series}}) {
    const double half = (form->weight() - 1) / 2.0;
    for (const auto p : primes_up_to(10000)) {
      if (form->divides_level(p)) continue;
      const PrimeAngle a = extract_angle(*form, p, ZetaMode::sqrt_of_character);
      std::uint64_t pn = p;
      for (unsigned nu = 1; pn <= 10000; ++nu, pn *= p) {
        const CoefficientValue v = hecke_power(*form, p, nu);
        ++checked;
        if (!v.is_exact() || !(*v.exact() == ComplexRational(mpq_class((*series)[pn])))) {
          o.require(false, "recurrence equals expansion at " + std::to_string(pn));
          return o;
        }
        const auto normalized = v.approx() / std::pow(static_cast<double>(p), nu * half);
        const auto l1 = lemma1_eval(a.theta, a.zeta, nu).approx();
        const double rel = std::abs(normalized - l1) / std::max(1.0, std::abs(l1));
        worst = std::max(worst, rel);
      }
    }
  }
  o.require(worst <= 1e-6, "closed-form agreement to 1e-6");
  o.note(std::to_string(checked) + " prime powers exact, worst relative gap " + fmt("%.2e", worst));
  return o;
}

Outcome sato_tate() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto angles = extract_angles(*fixtures().delta, kX, ZetaMode::sqrt_of_character, 4);
  const auto r = equidistribution_test(angles, MeasureKind::sato_tate);
  const double secs = seconds_since(t0);
  o.require(r.ks <= 0.05, "KS <= 0.05");
  o.require(secs <= 60.0, "runtime <= 1 min");
  o.note("KS " + fmt("%.5f", r.ks) + " over " + std::to_string(r.sample_size) + " primes in " + fmt("%.2f s", secs));
  return o;
}

Outcome cm_measure() {
  Outcome o;
  auto& f = fixtures();
  std::size_t inert = 0;
  bool all_zero = true;
  for (const auto p : primes_up_to(kX)) {
    if (p % 4 != 3) continue;
    ++inert;
    const auto& v = f.cm3->at(p);
    if (!v.is_exact() || !v.exact()->is_zero()) all_zero = false;
  }
  o.require(all_zero, "a(p) = 0 exactly for p = 3 mod 4");
  const auto angles = extract_angles(*f.cm3, kX, ZetaMode::sqrt_of_character, 4);
  const auto cont = continuous_angle_test(angles);
  o.require(std::abs(cont.atom_fraction - 0.5) <= 0.02, "atom mass within 0.02 of 1/2");
  o.require(cont.ks <= 0.05, "non-atom angles KS vs uniform <= 0.05");
  o.note(std::to_string(inert) + " inert primes vanish; atom " + fmt("%.5f", cont.atom_fraction) + "; KS " +
         fmt("%.5f", cont.ks));
  return o;
}

Outcome sign_region_measures() {
  Outcome o;
  double worst = 0;
  for (unsigned nu : {1u, 3u, 5u, 7u, 9u}) {
    const auto u = sign_interval_union(nu);
    worst = std::max(worst, std::abs(measure_of_union(u.positive, MeasureKind::sato_tate) - 0.5));
    worst = std::max(worst, std::abs(measure_of_union(u.positive, MeasureKind::cm) - 0.25));
  }
  o.require(worst <= 1e-9, "ST 1/2 and CM 1/4 within 1e-9");
  o.note("worst deviation " + fmt("%.1e", worst));
  return o;
}

Outcome prime_sign_densities() {
  Outcome o;
  const auto& delta = *fixtures().delta;
  for (unsigned nu : {1u, 3u}) {
    for (std::int64_t pn : {0, 1}) {
      const Direction phi = Direction::pi_fraction(pn, 4);
      const SignDensities pred = predicted_density_thm1(delta.character(), nu, phi, false);
      const SignDensities expected{mpq_class(1, 2), mpq_class(1, 2), mpq_class(1)};
      o.require(pred == expected, "exact prediction 1/2 1/2 1");
      const auto e = empirical_density_primes(delta, {phi, nu}, kX, ZetaMode::sqrt_of_character, 4);
      const double gap = std::abs(e.ratio_pos() - pred.nonzero.get_d() / 2.0);
      o.require(gap <= 0.05, "nu=" + std::to_string(nu) + " phi=" + phi.to_string() + " pos within 0.05");
      o.note("nu=" + std::to_string(nu) + " phi=" + phi.to_string() + " pos " + fmt("%.4f", e.ratio_pos()) +
             " vs " + rational_string(pred.pos));
    }
  }
  return o;
}

Outcome fixed_prime_ratios() {
  Outcome o;
  const Direction zero = Direction::pi_fraction(0, 1);
  const auto pred = rational_case_prediction(1, 5, 1, 1, zero);
  const std::uint64_t horizon = pred.period * 2000;
  const auto e = fixed_prime_density(PrimeAngle::synthetic(ExactPhase(1, 5), ExactPhase()), zero, horizon);
  mpq_class pos(static_cast<long>(e.count_pos), static_cast<unsigned long>(horizon));
  mpq_class neg(static_cast<long>(e.count_neg), static_cast<unsigned long>(horizon));
  pos.canonicalize();
  neg.canonicalize();
  o.require(pos == pred.pos && neg == pred.neg, "(a) exact rational-case match");
  o.note("(a) pos " + rational_string(pos) + " = " + rational_string(pred.pos) + ", ratio " +
         rational_string(*pred.ratio));
  const auto t0 = Clock::now();
  const auto d = fixed_prime_density(*fixtures().delta, 2, zero, 1000000);
  const double secs = seconds_since(t0);
  const double ratio = d.pos_of_nonzero().value_or(-1.0);
  o.require(std::abs(ratio - 0.5) <= 0.01, "(b) ratio within 0.01 of 1/2");
  o.require(secs <= 10.0, "(b) runtime <= 10 s");
  o.note("(b) ratio " + fmt("%.6f", ratio) + " in " + fmt("%.2f s", secs));
  return o;
}

Outcome shimura_identities() {
  Outcome o;
  const auto fam = delta_family();
  const CoefficientValue a9 = family_coeff(fam, 3);
  o.require(a9.is_exact() && *a9.exact() == ComplexRational(mpq_class(9)), "family_coeff(3) = 9");
  std::size_t checked = 0;
  for (const auto p : primes_up_to(10000)) {
    std::uint64_t pn = p;
    for (unsigned nu = 1; pn <= 10000; ++nu, pn *= p) {
      ++checked;
      const auto a = family_coeff(fam, pn);
      const auto b = family_prime_power(fam, p, nu);
      if (!a.is_exact() || !b.is_exact() || !(*a.exact() == *b.exact())) {
        o.require(false, "prime power identity at " + std::to_string(pn));
        return o;
      }
    }
  }
  for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u}) {
    const auto r = generating_function_check(fam, p, 12);
    o.require(r.ok() && r.exact, "generating function exact at p=" + std::to_string(p));
  }
  const auto half = synthesize_half_integral(fam, 50);
  const auto fwd = forward_shimura_check(fam, half.coeffs, 50);
  o.require(fwd.ok() && fwd.exact && fwd.checked == 50, "forward/inverse round trip n <= 50");
  o.note("a(9) = 9; " + std::to_string(checked) + " prime powers; 5 generating functions; 50 round trips");
  return o;
}

Outcome shimura_densities() {
  Outcome o;
  auto& f = fixtures();
  const Direction zero = Direction::pi_fraction(0, 1);
  struct Case {
    std::string name;
    ShimuraFamily fam;
    CmCase label;
    double target;
  };
  const std::vector<Case> cases = {
      {"delta-lift", delta_family(), CmCase::non_cm, 0.5},
      {"cm t=1", ShimuraFamily(1, 1, 4, DirichletCharacter::trivial(4), f.cm32), CmCase::cm_field, 0.75},
      {"cm t=2", ShimuraFamily(2, 1, 4, DirichletCharacter::trivial(4), f.cm32), CmCase::cm_other, 0.5}};
  for (const auto& c : cases) {
    const auto e = empirical_density_tp2(c.fam, zero, kX, 4);
    const auto pred = predicted_density_thm3(c.fam.character(), zero, c.label);
    o.require(std::abs(e.ratio_pos() - c.target) <= 0.05, c.name + " within 0.05");
    o.require(std::abs(pred.pos.get_d() - c.target) < 1e-15, c.name + " prediction");
    o.note(c.name + " pos " + fmt("%.4f", e.ratio_pos()) + " vs " + rational_string(pred.pos));
  }
  const auto table = predicted_density_thm3(1, zero, CmCase::cm_field);
  o.require(table.pos == mpq_class(3, 4) && table.neg == mpq_class(1, 4), "CM-F prediction 3/4, 1/4 exactly");
  return o;
}

Outcome oscillation() {
  Outcome o;
  const auto fam = delta_family();
  const auto run = family_prime_power_sequence(fam, 3, 200);
  const auto cert = oscillation_certificate([&](std::size_t i) { return run[i + 1]; }, Direction::pi_fraction(0, 1), 200);
  o.require(cert.sign_changes.size() >= 5, ">= 5 sign changes for nu <= 200");
  o.note(std::to_string(cert.sign_changes.size()) + " sign changes, verdict " + to_string(cert.verdict));
  return o;
}

Outcome determinism() {
  Outcome o;
  auto& f = fixtures();
  const std::string delta = (f.dir / "delta.json").string();
  const std::string cm3 = (f.dir / "cm3.json").string();
  const std::string cm32 = (f.dir / "cm32.json").string();
  const std::string x = std::to_string(kX);
  const std::vector<std::vector<std::string>> experiments = {
      {"expand-eta", "--spec", "1:24", "--terms", "20000", "--out", (f.dir / "d20k.json").string()},
      {"angles", "--form", delta, "--xmax", x},
      {"st-test", "--form", delta, "--xmax", x, "--measure", "st"},
      {"st-test", "--form", cm3, "--xmax", x, "--measure", "cm-continuous"},
      {"sign-density", "--form", delta, "--nu", "3", "--phi", "1/4", "--xmax", x, "--predict"},
      {"sign-density", "--form", cm3, "--nu", "1", "--phi", "0/1", "--xmax", x},
      {"fixed-prime", "--form", delta, "--p", "2", "--nu-max", "1000000"},
      {"fixed-prime", "--theta", "1/5", "--nu-max", "1000"},
      {"shimura", "--lift", delta, "--k", "6", "--check", "density", "--xmax", x},
      {"shimura", "--lift", cm32, "--k", "1", "--t", "1", "--check", "density", "--xmax", x, "--case", "cm-f"},
      {"shimura", "--lift", cm32, "--k", "1", "--t", "2", "--check", "density", "--xmax", x, "--case", "cm-other"},
      {"shimura", "--lift", delta, "--k", "6", "--check", "gf"},
      {"shimura", "--lift", delta, "--k", "6", "--check", "emit", "--n-max", "300", "--out", (f.dir / "half.json").string()},
      {"conjecture", "--half", (f.dir / "half.json").string(), "--xmax", "100000"},
      {"oscillate", "--lift", delta, "--k", "6", "--p", "3", "--nu-max", "200", "--min-changes", "5"},
      {"predict", "--thm", "1", "--reps", "1", "--nu", "1", "--phi", "0/1", "--character", "trivial"},
      {"validate", "--form", delta}};
  std::size_t identical = 0;
  for (const auto& args : experiments) {
    std::string reports[2];
    int codes[2];
    const char* threads[2] = {"1", "4"};
    for (int i = 0; i < 2; ++i) {
      std::vector<std::string> full = {"--threads", threads[i], "--report", (f.dir / ("report" + std::to_string(i))).string()};
      full.insert(full.end(), args.begin(), args.end());
      std::ostringstream out;
      std::ostringstream err;
      codes[i] = cli::run(full, out, err);
      reports[i] = report_without_runtime(io::read_file(f.dir / ("report" + std::to_string(i))));
    }
    const bool same = codes[0] == 0 && codes[1] == 0 && reports[0] == reports[1];
    o.require(same, args.front() + " identical across thread counts");
    identical += same;
  }
  o.note(std::to_string(identical) + "/" + std::to_string(experiments.size()) + " experiments byte-identical modulo runtime");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle integrity (Delta expansion, tau values, Deligne bound)", oracle_integrity},
      {"Hecke recurrence and closed-form consistency", hecke_consistency},
      {"Sato-Tate distribution of Delta angles", sato_tate},
      {"CM measure for eta(4z)^6", cm_measure},
      {"measures of the sign regions", sign_region_measures},
      {"sign densities over primes for Delta", prime_sign_densities},
      {"fixed-prime ratios", fixed_prime_ratios},
      {"Shimura family identities", shimura_identities},
      {"densities of a(t p^2) for Shimura families", shimura_densities},
      {"oscillation of a(t p^(2 nu)) at p = 3", oscillation},
      {"determinism across thread counts", determinism}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << " ("
              << o.detail << ") " << fmt("%.1fs", seconds_since(t0)) << std::endl;
  }
  std::error_code ec;
  fs::remove_all(fixtures().dir, ec);
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}

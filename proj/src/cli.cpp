#include "modsign/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "modsign/arith.hpp"
#include "modsign/empirical.hpp"
#include "modsign/errors.hpp"
#include "modsign/io.hpp"
#include "modsign/predict.hpp"
#include "modsign/qseries.hpp"
#include "modsign/report.hpp"
#include "modsign/shimura.hpp"

namespace modsign::cli {
namespace {

using nlohmann::json;

struct Options {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string report_path;

  // shared
  std::string form;
  std::string half;
  std::string lift;
  std::string out_path;
  std::string phi = "0/1";
  std::string mode = "sqrt";
  std::string character;
  std::uint64_t xmax = 0;
  double tol = -1.0;
  unsigned nu = 1;

  // expand-eta
  std::string spec;
  std::size_t terms = 0;
  int weight = 0;
  std::uint64_t level = 1;
  std::string source;

  // st-test
  std::string measure = "st";
  double atom_tol = 0.02;

  // sign-density / predict
  bool predict = false;
  bool cm = false;
  int thm = 1;
  std::int64_t reps = 0;
  std::string cm_case = "noncm";
  std::string theta;
  std::int64_t j = 0;

  // fixed-prime / oscillate
  std::uint64_t p = 0;
  std::uint64_t nu_max = 0;
  std::size_t prime_count = 0;
  std::size_t min_changes = 1;

  // shimura
  std::uint64_t t = 1;
  int k = 0;
  std::uint64_t half_level = 4;
  std::string check = "coeff";
  std::vector<std::uint64_t> n_values;
  std::uint64_t bound = 10000;
  std::vector<std::uint64_t> primes{3, 5, 7, 11, 13};
  unsigned gf_terms = 12;
  std::uint64_t n_max = 50;

  // conjecture
  std::string part = "re";
};

struct Context {
  const Options& opt;
  std::ostream& out;
  ExperimentReport& report;
};

std::pair<std::int64_t, std::int64_t> parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return {std::stoll(text), 1};
    const std::int64_t num = std::stoll(text.substr(0, slash));
    const std::int64_t den = std::stoll(text.substr(slash + 1));
    if (den <= 0) throw ParseError("fraction needs a positive denominator: " + text);
    return {num, den};
  } catch (const std::logic_error&) {
    throw ParseError("not a fraction: " + text);
  }
}

ZetaMode parse_mode(const std::string& s) {
  if (s == "sqrt") return ZetaMode::sqrt_of_character;
  if (s == "direct") return ZetaMode::character_direct;
  throw ParseError("mode must be 'sqrt' or 'direct'");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

json densities_json(const SignDensities& d) {
  return json{{"pos", rational_string(d.pos)}, {"neg", rational_string(d.neg)}, {"nonzero", rational_string(d.nonzero)}};
}

json estimate_json(const DensityEstimate& e) {
  json j{{"count_pos", e.count_pos},
         {"count_neg", e.count_neg},
         {"count_zero", e.count_zero},
         {"count_excluded", e.count_excluded},
         {"total", e.total},
         {"ratio_pos", e.ratio_pos()},
         {"ratio_neg", e.ratio_neg()},
         {"ratio_zero", e.ratio_zero()},
         {"ratio_nonzero", e.ratio_nonzero()}};
  const auto r = e.pos_of_nonzero();
  j["pos_of_nonzero"] = r ? json(*r) : json(nullptr);
  if (e.predicted) j["predicted"] = densities_json(*e.predicted);
  if (e.predicted_pos_of_nonzero) j["predicted_pos_of_nonzero"] = rational_string(*e.predicted_pos_of_nonzero);
  return j;
}

void print_estimate(std::ostream& out, const DensityEstimate& e) {
  out << "classified " << e.classified() << " (excluded " << e.count_excluded << "): pos " << e.count_pos << " neg "
      << e.count_neg << " zero " << e.count_zero << "\n";
  out << "ratios: pos " << fmt(e.ratio_pos()) << " neg " << fmt(e.ratio_neg()) << " zero " << fmt(e.ratio_zero())
      << "\n";
  if (e.predicted)
    out << "predicted: pos " << rational_string(e.predicted->pos) << " neg " << rational_string(e.predicted->neg)
        << " nonzero " << rational_string(e.predicted->nonzero) << "\n";
}

double tol_or(const Options& o, double fallback) { return o.tol >= 0.0 ? o.tol : fallback; }

std::shared_ptr<const NewformData> load_form(const std::string& path) {
  if (path.empty()) throw ParseError("a --form file is required");
  return std::make_shared<const NewformData>(io::load_newform(path));
}

ShimuraFamily load_family(const Options& o) {
  if (o.lift.empty()) throw ParseError("a --lift file is required");
  if (o.k < 1) throw ParseError("--k must be a positive integer");
  const DirichletCharacter eps =
      o.character.empty() ? DirichletCharacter::trivial(o.half_level) : io::parse_character(o.character, o.half_level);
  auto lift = std::make_shared<const NewformData>(io::load_newform(o.lift));
  return ShimuraFamily(o.t, o.k, o.half_level, eps, std::move(lift));
}

// ---------------------------------------------------------------- subcommands

int cmd_expand_eta(Context& c) {
  const Options& o = c.opt;
  const EtaProductSpec spec = EtaProductSpec::parse(o.spec);
  if (o.terms < 2) throw ParseError("--terms must be at least 2");
  int weight = o.weight;
  if (weight == 0) {
    if (spec.twice_weight() % 2 != 0) throw ParseError("half-integral weight eta product; pass --weight explicitly");
    weight = spec.twice_weight() / 2;
  }
  const DirichletCharacter chi = o.character.empty() ? DirichletCharacter::trivial(1) : io::parse_character(o.character, o.level);
  const std::string source = o.source.empty() ? "eta product " + spec.to_string() : o.source;
  c.report.inputs = json{{"spec", spec.to_string()}, {"terms", o.terms}, {"weight", weight}, {"level", o.level},
                         {"character", chi.to_string()}, {"out", o.out_path}};
  const PowerSeries series = eta_product_expand(spec, o.terms, o.threads);
  const NewformData data = series_to_newform(series, weight, o.level, chi, source);
  validate_newform(data);
  if (o.out_path.empty()) throw ParseError("--out is required");
  io::save_newform(data, o.out_path);
  json first = json::object();
  int shown = 0;
  for (const auto& [p, v] : data.prime_coeffs()) {
    if (shown++ == 5) break;
    first[std::to_string(p)] = v.to_string();
  }
  c.report.results = json{{"primes", data.prime_coeffs().size()}, {"max_prime", data.max_prime()}, {"first", first}};
  c.out << "wrote " << data.prime_coeffs().size() << " prime coefficients (p <= " << data.max_prime() << ") to "
        << o.out_path << "\n";
  return kExitOk;
}

int cmd_angles(Context& c) {
  const Options& o = c.opt;
  const auto data = load_form(o.form);
  const ZetaMode mode = parse_mode(o.mode);
  c.report.inputs = json{{"form", o.form}, {"xmax", o.xmax}, {"mode", o.mode}, {"csv", o.out_path}};
  const auto angles = extract_angles(*data, o.xmax, mode, o.threads);
  std::size_t boundary = 0;
  std::size_t vanishing = 0;
  std::ostringstream csv;
  csv << "p,theta,normalized,boundary,vanishing\n";
  for (const auto& a : angles) {
    boundary += a.boundary;
    vanishing += a.vanishing;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12g,%.12g", a.theta, a.normalized);
    csv << a.p << "," << buf << "," << a.boundary << "," << a.vanishing << "\n";
  }
  if (!o.out_path.empty()) io::write_file(o.out_path, csv.str());
  c.report.results = json{{"angles", angles.size()}, {"boundary", boundary}, {"vanishing", vanishing}};
  c.out << angles.size() << " angles, " << boundary << " boundary, " << vanishing << " vanishing\n";
  return kExitOk;
}

int cmd_st_test(Context& c) {
  const Options& o = c.opt;
  const double tol = tol_or(o, 0.05);
  const auto data = load_form(o.form);
  const ZetaMode mode = parse_mode(o.mode);
  c.report.inputs = json{{"form", o.form}, {"xmax", o.xmax}, {"measure", o.measure}, {"tol", tol},
                         {"atom_tol", o.atom_tol}, {"mode", o.mode}};
  const auto angles = extract_angles(*data, o.xmax, mode, o.threads);
  EquidistributionResult r;
  bool pass = false;
  if (o.measure == "st") {
    r = equidistribution_test(angles, MeasureKind::sato_tate);
    pass = r.ks <= tol;
  } else if (o.measure == "cm") {
    r = equidistribution_test(angles, MeasureKind::cm);
    pass = r.ks <= tol && std::abs(r.atom_fraction - 0.5) <= o.atom_tol;
  } else if (o.measure == "cm-continuous") {
    r = continuous_angle_test(angles);
    pass = r.ks <= tol && std::abs(r.atom_fraction - 0.5) <= o.atom_tol;
  } else {
    throw ParseError("--measure must be st, cm or cm-continuous");
  }
  c.report.results = json{{"ks", r.ks}, {"sample_size", r.sample_size}, {"atom_count", r.atom_count},
                          {"atom_fraction", r.atom_fraction}, {"pass", pass}};
  c.out << "KS " << fmt(r.ks) << " over " << r.sample_size << " samples";
  if (o.measure != "st") c.out << ", atom fraction " << fmt(r.atom_fraction);
  c.out << (pass ? " PASS" : " FAIL") << "\n";
  return pass ? kExitOk : kExitTolerance;
}

int cmd_sign_density(Context& c) {
  const Options& o = c.opt;
  const double tol = tol_or(o, 0.05);
  const Direction phi = Direction::parse(o.phi);
  const auto data = load_form(o.form);
  const ZetaMode mode = parse_mode(o.mode);
  c.report.inputs = json{{"form", o.form}, {"nu", o.nu}, {"phi", phi.to_string()}, {"xmax", o.xmax},
                         {"predict", o.predict}, {"cm", o.cm}, {"tol", tol}, {"mode", o.mode}};
  std::optional<SignDensities> predicted;
  if (o.predict) predicted = predicted_density_thm1(data->character(), o.nu, phi, o.cm);
  DensityEstimate e = empirical_density_primes(*data, HalfPlaneQuery{phi, o.nu}, o.xmax, mode, o.threads);
  e.predicted = predicted;
  bool pass = std::abs(e.ratio_pos() - e.ratio_nonzero() / 2.0) <= tol;
  if (predicted) {
    pass = pass && std::abs(e.ratio_pos() - predicted->pos.get_d()) <= tol &&
           std::abs(e.ratio_neg() - predicted->neg.get_d()) <= tol &&
           std::abs(e.ratio_nonzero() - predicted->nonzero.get_d()) <= tol;
  }
  c.report.results = estimate_json(e);
  c.report.results["pass"] = pass;
  print_estimate(c.out, e);
  c.out << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitTolerance;
}

int cmd_fixed_prime(Context& c) {
  const Options& o = c.opt;
  const double tol = tol_or(o, 0.01);
  const Direction phi = Direction::parse(o.phi);
  if (o.nu_max < 1) throw ParseError("--nu-max must be positive");
  json inputs{{"phi", phi.to_string()}, {"nu_max", o.nu_max}, {"tol", tol}};
  bool pass = false;
  DensityEstimate e;
  json extra = json::object();
  if (!o.theta.empty()) {
    const auto [n, m] = parse_fraction(o.theta);
    const std::int64_t r = o.reps > 0 ? o.reps : 1;
    const std::int64_t jj = o.j > 0 ? o.j : r;
    inputs["theta_turns"] = o.theta;
    inputs["reps"] = r;
    inputs["j"] = jj;
    const RationalCasePrediction pred = rational_case_prediction(n, m, r, jj, phi);
    const PrimeAngle angle = PrimeAngle::synthetic(ExactPhase(n, m), rational_case_zeta(r, jj));
    e = fixed_prime_density(angle, phi, o.nu_max);
    extra["period"] = pred.period;
    extra["predicted_pos"] = rational_string(pred.pos);
    extra["predicted_neg"] = rational_string(pred.neg);
    extra["predicted_nonzero"] = rational_string(pred.nonzero);
    if (o.nu_max % pred.period == 0) {
      mpq_class pos(static_cast<long>(e.count_pos), static_cast<unsigned long>(o.nu_max));
      mpq_class neg(static_cast<long>(e.count_neg), static_cast<unsigned long>(o.nu_max));
      pos.canonicalize();
      neg.canonicalize();
      pass = pos == pred.pos && neg == pred.neg;
      extra["comparison"] = "exact";
    } else {
      const auto r2 = e.pos_of_nonzero();
      pass = !r2 || std::abs(*r2 - 0.5) <= tol;
      extra["comparison"] = "tolerance";
    }
  } else {
    const auto data = load_form(o.form);
    inputs["form"] = o.form;
    inputs["p"] = o.p;
    inputs["mode"] = o.mode;
    e = fixed_prime_density(*data, o.p, phi, o.nu_max, parse_mode(o.mode));
    const auto r2 = e.pos_of_nonzero();
    pass = !r2 || std::abs(*r2 - 0.5) <= tol;
  }
  c.report.inputs = inputs;
  c.report.results = estimate_json(e);
  c.report.results.update(extra);
  c.report.results["pass"] = pass;
  print_estimate(c.out, e);
  const auto r2 = e.pos_of_nonzero();
  c.out << "pos among nonzero: " << (r2 ? fmt(*r2) : std::string("none (trivial)")) << (pass ? " PASS" : " FAIL")
        << "\n";
  return pass ? kExitOk : kExitTolerance;
}

bool values_agree(const CoefficientValue& a, const CoefficientValue& b) {
  if (a.is_exact() && b.is_exact()) return *a.exact() == *b.exact();
  const double scale = std::max({1.0, std::abs(a.approx()), std::abs(b.approx())});
  return std::abs(a.approx() - b.approx()) <= 1e-9 * scale;
}

int cmd_shimura(Context& c) {
  const Options& o = c.opt;
  const ShimuraFamily fam = load_family(o);
  json inputs{{"lift", o.lift}, {"t", o.t}, {"k", o.k}, {"half_level", o.half_level},
              {"character", fam.character().to_string()}, {"check", o.check}};
  json results = json::object();
  bool pass = true;
  if (o.check == "coeff") {
    inputs["n"] = o.n_values;
    inputs["bound"] = o.bound;
    json values = json::object();
    for (const auto n : o.n_values) {
      const std::string v = family_coeff(fam, n).to_string();
      values[std::to_string(n)] = v;
      c.out << "a(" << o.t << "*" << n << "^2) = " << v << "\n";
    }
    std::uint64_t checked = 0;
    json mismatches = json::array();
    for (const auto p : primes_up_to(std::max<std::uint64_t>(o.bound, 2))) {
      std::uint64_t pn = p;
      for (unsigned nu = 1; pn <= o.bound; ++nu) {
        ++checked;
        if (!values_agree(family_coeff(fam, pn), family_prime_power(fam, p, nu))) mismatches.push_back(pn);
        if (pn > o.bound / p) break;
        pn *= p;
      }
    }
    pass = mismatches.empty();
    results = json{{"values", values}, {"prime_powers_checked", checked}, {"mismatches", mismatches}};
    c.out << checked << " prime powers checked, " << mismatches.size() << " mismatches\n";
  } else if (o.check == "gf") {
    inputs["primes"] = o.primes;
    inputs["terms"] = o.gf_terms;
    for (const auto p : o.primes) {
      const auto r = generating_function_check(fam, p, o.gf_terms);
      results[std::to_string(p)] = json{{"mismatches", r.mismatches}, {"exact", r.exact}, {"max_rel_diff", r.max_rel_diff}};
      c.out << "p=" << p << ": " << (r.ok() ? "ok" : "MISMATCH") << (r.exact ? " (exact)" : "") << "\n";
      pass = pass && r.ok();
    }
  } else if (o.check == "forward") {
    inputs["n_max"] = o.n_max;
    inputs["half"] = o.half;
    std::map<std::uint64_t, CoefficientValue> coeffs;
    if (o.half.empty()) {
      coeffs = synthesize_half_integral(fam, o.n_max).coeffs;
    } else {
      coeffs = io::load_half_integral(o.half).coeffs;
    }
    const auto r = forward_shimura_check(fam, coeffs, o.n_max);
    json disc = json::array();
    for (const auto& d : r.discrepancies) disc.push_back(json{{"n", d.n}, {"magnitude", d.magnitude}});
    results = json{{"checked", r.checked}, {"missing", r.missing}, {"discrepancies", disc}, {"exact", r.exact}};
    pass = r.ok();
    c.out << r.checked << " values checked, " << r.discrepancies.size() << " discrepancies, " << r.missing.size()
          << " missing\n";
  } else if (o.check == "emit") {
    inputs["n_max"] = o.n_max;
    inputs["out"] = o.out_path;
    if (o.out_path.empty()) throw ParseError("--out is required for --check emit");
    HalfIntegralData h = synthesize_half_integral(fam, o.n_max);
    io::save_half_integral(h, o.out_path);
    results = json{{"entries", h.coeffs.size()}};
    c.out << "wrote " << h.coeffs.size() << " coefficients to " << o.out_path << "\n";
  } else if (o.check == "density") {
    const double tol = tol_or(o, 0.05);
    const Direction phi = Direction::parse(o.phi);
    const CmCase cc = parse_cm_case(o.cm_case);
    inputs["phi"] = phi.to_string();
    inputs["xmax"] = o.xmax;
    inputs["case"] = to_string(cc);
    inputs["tol"] = tol;
    DensityEstimate e = empirical_density_tp2(fam, phi, o.xmax, o.threads);
    if (phi.exact) e.predicted = predicted_density_thm3(fam.character(), phi, cc);
    if (e.predicted) {
      pass = std::abs(e.ratio_pos() - e.predicted->pos.get_d()) <= tol &&
             std::abs(e.ratio_neg() - e.predicted->neg.get_d()) <= tol;
    } else {
      pass = std::abs(e.ratio_pos() - e.ratio_nonzero() / 2.0) <= tol;
    }
    results = estimate_json(e);
    print_estimate(c.out, e);
  } else {
    throw ParseError("--check must be coeff, gf, forward, emit or density");
  }
  results["pass"] = pass;
  c.report.inputs = inputs;
  c.report.results = results;
  c.out << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitTolerance;
}

int cmd_predict(Context& c) {
  const Options& o = c.opt;
  const Direction phi = Direction::parse(o.phi);
  std::optional<DirichletCharacter> chi;
  if (!o.character.empty()) chi = io::parse_character(o.character, 1);
  std::int64_t r = o.reps;
  if (chi) {
    if (r > 0 && r != chi->order()) throw ParseError("--reps disagrees with the order of --character");
    r = chi->order();
  }
  if (r <= 0) r = 1;
  json inputs{{"thm", o.thm}, {"reps", r}, {"phi", phi.to_string()}};
  json results;
  std::string line;
  if (o.thm == 1) {
    inputs["nu"] = o.nu;
    inputs["cm"] = o.cm;
    const SignDensities d = chi ? predicted_density_thm1(*chi, o.nu, phi, o.cm) : predicted_density_thm1(r, o.nu, phi, o.cm);
    results = densities_json(d);
    line = rational_string(d.pos) + " " + rational_string(d.neg) + " " + rational_string(d.nonzero);
  } else if (o.thm == 3) {
    const CmCase cc = parse_cm_case(o.cm_case);
    inputs["case"] = to_string(cc);
    const SignDensities d = chi ? predicted_density_thm3(*chi, phi, cc) : predicted_density_thm3(r, phi, cc);
    results = densities_json(d);
    line = rational_string(d.pos) + " " + rational_string(d.neg) + " " + rational_string(d.nonzero);
  } else if (o.thm == 2) {
    if (o.theta.empty()) throw ParseError("--thm 2 needs --theta n/m (theta = 2 pi n/m)");
    const auto [n, m] = parse_fraction(o.theta);
    const std::int64_t jj = o.j > 0 ? o.j : r;
    inputs["theta_turns"] = o.theta;
    inputs["j"] = jj;
    const RationalCasePrediction p = rational_case_prediction(n, m, r, jj, phi);
    results = json{{"pos", rational_string(p.pos)}, {"neg", rational_string(p.neg)},
                   {"nonzero", rational_string(p.nonzero)}, {"period", p.period},
                   {"ratio", p.ratio ? json(rational_string(*p.ratio)) : json(nullptr)}};
    line = rational_string(p.pos) + " " + rational_string(p.neg) + " " + rational_string(p.nonzero) + " " +
           (p.ratio ? rational_string(*p.ratio) : std::string("none"));
  } else {
    throw ParseError("--thm must be 1, 2 or 3");
  }
  c.report.inputs = inputs;
  c.report.results = results;
  c.out << line << "\n";
  return kExitOk;
}

int cmd_oscillate(Context& c) {
  const Options& o = c.opt;
  const Direction phi = Direction::parse(o.phi);
  json inputs{{"phi", phi.to_string()}, {"min_changes", o.min_changes}};
  std::function<CoefficientValue(std::size_t)> seq;
  std::function<double(std::size_t)> scale;
  std::size_t horizon = 0;
  std::vector<CoefficientValue> values;
  std::vector<double> scales;
  if (!o.lift.empty()) {
    const ShimuraFamily fam = load_family(o);
    inputs.update(json{{"lift", o.lift}, {"t", o.t}, {"k", o.k}, {"half_level", o.half_level}, {"p", o.p},
                       {"nu_max", o.nu_max}, {"sequence", "a(t p^(2 nu))"}});
    auto run = family_prime_power_sequence(fam, o.p, static_cast<unsigned>(o.nu_max));
    values.assign(run.begin() + 1, run.end());
    for (std::size_t i = 0; i < values.size(); ++i)
      scales.push_back(std::pow(static_cast<double>(o.p), (i + 1) * (fam.k() - 0.5)) * (i + 2));
  } else {
    const auto data = load_form(o.form);
    inputs["form"] = o.form;
    const double half = (data->weight() - 1) / 2.0;
    if (o.prime_count > 0) {
      inputs["primes"] = o.prime_count;
      inputs["sequence"] = "a(p)";
      for (const auto& [p, v] : data->prime_coeffs()) {
        if (values.size() == o.prime_count) break;
        if (data->divides_level(p)) continue;
        values.push_back(v);
        scales.push_back(2.0 * std::pow(static_cast<double>(p), half));
      }
      if (values.size() < o.prime_count) throw NotAvailableError(data->max_prime() + 1);
    } else {
      inputs.update(json{{"p", o.p}, {"nu_max", o.nu_max}, {"sequence", "a(p^nu)"}});
      auto run = hecke_power_sequence(*data, o.p, static_cast<unsigned>(o.nu_max));
      values.assign(run.begin() + 1, run.end());
      for (std::size_t i = 0; i < values.size(); ++i)
        scales.push_back(std::pow(static_cast<double>(o.p), (i + 1) * half) * (i + 2));
    }
  }
  horizon = values.size();
  seq = [&](std::size_t i) { return values[i]; };
  scale = [&](std::size_t i) { return std::isfinite(scales[i]) ? scales[i] : 1.0; };
  const OscillationCertificate cert = oscillation_certificate(seq, phi, horizon, scale);
  const bool pass = cert.verdict == OscillationVerdict::trivial ||
                    (cert.verdict == OscillationVerdict::oscillating_evidence && cert.sign_changes.size() >= o.min_changes);
  // positions are reported 1-based (nu, or the rank of the prime)
  json changes = json::array();
  for (const auto i : cert.sign_changes) changes.push_back(i + 1);
  c.report.inputs = inputs;
  c.report.results = json{{"examined", cert.examined}, {"nonzero", cert.nonzero}, {"sign_changes", changes},
                          {"change_count", cert.sign_changes.size()}, {"verdict", to_string(cert.verdict)},
                          {"pass", pass}};
  c.out << to_string(cert.verdict) << ": " << cert.sign_changes.size() << " sign changes in " << cert.examined
        << " terms" << (pass ? " PASS" : " FAIL") << "\n";
  return pass ? kExitOk : kExitTolerance;
}

int cmd_conjecture(Context& c) {
  const Options& o = c.opt;
  const Direction phi = Direction::parse(o.phi);
  ComplexPart part;
  if (o.part == "re") part = ComplexPart::real;
  else if (o.part == "im") part = ComplexPart::imaginary;
  else throw ParseError("--part must be re or im");
  if (o.half.empty()) throw ParseError("a --half file is required");
  const HalfIntegralData h = io::load_half_integral(o.half);
  c.report.inputs = json{{"half", o.half}, {"phi", phi.to_string()}, {"xmax", o.xmax}, {"part", o.part}, {"tol", o.tol}};
  const DensityEstimate e = conjecture_ratio(h.coeffs, phi, o.xmax, part);
  const auto r = e.pos_of_nonzero();
  bool pass = true;
  if (o.tol >= 0.0 && r) pass = std::abs(*r - 0.5) <= o.tol;
  c.report.results = estimate_json(e);
  c.report.results["trivial"] = e.trivial();
  c.report.results["pass"] = pass;
  print_estimate(c.out, e);
  c.out << "sample " << e.total << ", pos among nonzero " << (r ? fmt(*r) : std::string("none (trivial)"))
        << " (conjectured 1/2)" << (pass ? "" : " FAIL") << "\n";
  return pass ? kExitOk : kExitTolerance;
}

int cmd_validate(Context& c) {
  const Options& o = c.opt;
  if (!o.half.empty()) {
    const HalfIntegralData h = io::load_half_integral(o.half);
    c.report.inputs = json{{"half", o.half}};
    c.report.results = json{{"entries", h.coeffs.size()}, {"valid", true}};
    c.out << "half-integral file ok: " << h.coeffs.size() << " entries\n";
    return kExitOk;
  }
  if (o.form.empty()) throw ParseError("validate needs --form or --half");
  const NewformData data = io::load_newform(o.form, false);
  const auto deligne = deligne_violations(data);
  const auto reality = reality_violations(data);
  c.report.inputs = json{{"form", o.form}};
  c.report.results = json{{"primes", data.prime_coeffs().size()}, {"deligne_violations", deligne},
                          {"reality_violations", reality}, {"valid", deligne.empty() && reality.empty()}};
  c.out << data.prime_coeffs().size() << " primes, " << deligne.size() << " bound violations, " << reality.size()
        << " reality violations\n";
  validate_newform(data);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Sign and equidistribution experiments for modular form coefficients", "modsign"};
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--report", o.report_path, "write a JSON report to this path");

  auto add_phi = [&](CLI::App* s) { s->add_option("--phi", o.phi, "direction as a/b (phi = (a/b) pi) or rad:x"); };
  auto add_family = [&](CLI::App* s, bool required) {
    auto* l = s->add_option("--lift", o.lift, "integral-weight lift file");
    if (required) l->required();
    s->add_option("--t", o.t, "square-free t");
    s->add_option("--k", o.k, "half-integral weight is k + 1/2");
    s->add_option("--half-level", o.half_level, "level N of the half-integral form");
    s->add_option("--character", o.character, "character of the half-integral form: trivial or N:e1,e2");
  };

  std::map<std::string, std::function<int(Context&)>> handlers;

  auto* s = app.add_subcommand("expand-eta", "expand an eta product and write its prime coefficients");
  s->add_option("--spec", o.spec, "m1:e1,m2:e2,...")->required();
  s->add_option("--terms", o.terms, "expand through q^terms")->required();
  s->add_option("--out", o.out_path, "output file")->required();
  s->add_option("--weight", o.weight, "weight (default: half the exponent sum)");
  s->add_option("--level", o.level, "level");
  s->add_option("--character", o.character, "trivial or N:e1,e2,...");
  s->add_option("--source", o.source, "provenance text");
  handlers["expand-eta"] = cmd_expand_eta;

  s = app.add_subcommand("angles", "extract angles theta_p");
  s->add_option("--form", o.form, "newform coefficient file")->required();
  s->add_option("--xmax", o.xmax, "upper bound on primes or indices")->required();
  s->add_option("--mode", o.mode, "sqrt or direct");
  s->add_option("--csv", o.out_path, "write p,theta,normalized,boundary,vanishing rows");
  handlers["angles"] = cmd_angles;

  s = app.add_subcommand("st-test", "KS test of normalized coefficients against a reference measure");
  s->add_option("--form", o.form, "newform coefficient file")->required();
  s->add_option("--xmax", o.xmax, "upper bound on primes or indices")->required();
  s->add_option("--measure", o.measure, "st, cm or cm-continuous");
  s->add_option("--tol", o.tol, "KS tolerance (default 0.05)");
  s->add_option("--atom-tol", o.atom_tol, "tolerance on the atom mass 1/2 (default 0.02)");
  s->add_option("--mode", o.mode, "sqrt or direct");
  handlers["st-test"] = cmd_st_test;

  s = app.add_subcommand("sign-density", "half-plane sign densities of a(p^nu) over primes");
  s->add_option("--form", o.form, "newform coefficient file")->required();
  s->add_option("--nu", o.nu, "odd exponent nu");
  add_phi(s);
  s->add_option("--xmax", o.xmax, "upper bound on primes or indices");
  s->add_flag("--predict", o.predict, "attach and check the exact prediction (odd nu)");
  s->add_flag("--cm", o.cm, "the form has complex multiplication");
  s->add_option("--tol", o.tol, "density tolerance (default 0.05)");
  s->add_option("--mode", o.mode, "sqrt or direct");
  handlers["sign-density"] = cmd_sign_density;

  s = app.add_subcommand("fixed-prime", "sign statistics of a(p^nu) over nu for one prime");
  s->add_option("--form", o.form, "newform coefficient file");
  s->add_option("--p", o.p, "prime p");
  s->add_option("--nu-max", o.nu_max, "largest exponent nu")->required();
  add_phi(s);
  s->add_option("--tol", o.tol, "tolerance on the ratio 1/2 (default 0.01)");
  s->add_option("--mode", o.mode, "sqrt or direct");
  s->add_option("--theta", o.theta, "synthetic angle theta = 2 pi n/m given as n/m");
  s->add_option("--reps", o.reps, "character order r for the synthetic zeta");
  s->add_option("--j", o.j, "zeta index j, 1 <= j <= r");
  handlers["fixed-prime"] = cmd_fixed_prime;

  s = app.add_subcommand("shimura", "Shimura family checks and experiments");
  add_family(s, true);
  s->add_option("--check", o.check, "coeff, gf, forward, emit or density");
  s->add_option("--n", o.n_values, "indices n for a(t n^2)");
  s->add_option("--bound", o.bound, "prime powers p^nu <= bound for the coeff cross-check");
  s->add_option("--primes", o.primes, "primes for the generating function check");
  s->add_option("--terms", o.gf_terms, "generating function terms");
  s->add_option("--n-max", o.n_max, "range for forward/emit");
  s->add_option("--half", o.half, "half-integral coefficient file for the forward check");
  s->add_option("--out", o.out_path, "output for emit");
  add_phi(s);
  s->add_option("--xmax", o.xmax, "upper bound on primes or indices");
  s->add_option("--case", o.cm_case, "noncm, cm-other, cm-triv or cm-f");
  s->add_option("--tol", o.tol, "density tolerance (default 0.05)");
  handlers["shimura"] = cmd_shimura;

  s = app.add_subcommand("predict", "exact predicted densities");
  s->add_option("--thm", o.thm, "1, 2 or 3");
  s->add_option("--reps", o.reps, "character order r");
  s->add_option("--nu", o.nu, "odd exponent nu");
  add_phi(s);
  s->add_option("--character", o.character, "trivial or N:e1,e2,...");
  s->add_flag("--cm", o.cm, "use the CM measure");
  s->add_option("--case", o.cm_case, "noncm, cm-other, cm-triv or cm-f");
  s->add_option("--theta", o.theta, "theta = 2 pi n/m given as n/m");
  s->add_option("--j", o.j, "zeta index j");
  handlers["predict"] = cmd_predict;

  s = app.add_subcommand("oscillate", "sign-change certificate for a coefficient sequence");
  s->add_option("--form", o.form, "newform coefficient file");
  add_family(s, false);
  s->add_option("--p", o.p, "prime p");
  s->add_option("--nu-max", o.nu_max, "largest exponent nu");
  s->add_option("--primes", o.prime_count, "use a(p) over the first this-many good primes");
  s->add_option("--min-changes", o.min_changes, "sign changes required to pass");
  add_phi(s);
  handlers["oscillate"] = cmd_oscillate;

  s = app.add_subcommand("conjecture", "sign ratio of half-integral coefficients");
  s->add_option("--half", o.half, "half-integral coefficient file")->required();
  add_phi(s);
  s->add_option("--xmax", o.xmax, "upper bound on primes or indices")->required();
  s->add_option("--part", o.part, "re or im");
  s->add_option("--tol", o.tol, "optional tolerance on the ratio 1/2");
  handlers["conjecture"] = cmd_conjecture;

  s = app.add_subcommand("validate", "load and validate a coefficient file");
  s->add_option("--form", o.form, "newform coefficient file");
  s->add_option("--half", o.half, "half-integral coefficient file");
  handlers["validate"] = cmd_validate;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  ExperimentReport report;
  report.experiment = name;
  Context ctx{o, out, report};
  int code = kExitOk;
  const auto start = std::chrono::steady_clock::now();
  try {
    code = handlers.at(name)(ctx);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const modsign::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.report_path.empty()) {
    try {
      save_report(report, o.report_path);
    } catch (const modsign::Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace modsign::cli

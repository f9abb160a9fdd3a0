#include "modsign/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "modsign/arith.hpp"
#include "modsign/errors.hpp"

namespace modsign::io {
namespace {

using nlohmann::json;

const std::regex kRational(R"(^\s*[+-]?\d+(/\d+)?\s*$)");

bool parse_exact(const std::string& s, mpq_class& out) {
  if (!std::regex_match(s, kRational)) return false;
  std::string t;
  for (const char c : s)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '+') t.push_back(c);
  if (t.find('/') != std::string::npos && t.substr(t.find('/') + 1).find_first_not_of('0') == std::string::npos)
    throw ParseError("zero denominator in '" + s + "'");
  out.set_str(t, 10);
  out.canonicalize();
  return true;
}

double parse_decimal(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + s + "'");
  }
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
  if (used != s.size()) throw ParseError("trailing characters in number '" + s + "'");
  return v;
}

std::string format_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string q_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

json character_json(const DirichletCharacter& chi) {
  return json{{"modulus", chi.modulus()}, {"exponents", chi.exponents()}};
}

DirichletCharacter character_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("character must be an object");
  try {
    return DirichletCharacter(field<std::uint64_t>(j, "modulus"), field<std::vector<std::int64_t>>(j, "exponents"));
  } catch (const ConstructionError& e) {
    throw ParseError(std::string("bad character: ") + e.what());
  }
}

json entries_json(const std::map<std::uint64_t, CoefficientValue>& table) {
  json arr = json::array();
  for (const auto& [n, v] : table) {
    const auto [re, im] = format_value(v);
    arr.push_back(json{{"index", n}, {"re", re}, {"im", im}});
  }
  return arr;
}

std::map<std::uint64_t, CoefficientValue> entries_from_json(const json& j) {
  if (!j.contains("entries")) throw ParseError("missing field 'entries'");
  const json& arr = j.at("entries");
  if (!arr.is_array()) throw ParseError("'entries' must be an array");
  std::map<std::uint64_t, CoefficientValue> out;
  std::uint64_t previous = 0;
  for (const auto& e : arr) {
    const auto n = field<std::uint64_t>(e, "index");
    if (n == 0 || (!out.empty() && n <= previous)) throw ParseError("entry indices must be positive and strictly increasing");
    out.emplace(n, parse_value(field<std::string>(e, "re"), field<std::string>(e, "im")));
    previous = n;
  }
  return out;
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

}  // namespace

DirichletCharacter parse_character(const std::string& text, std::uint64_t default_modulus) {
  try {
    if (text == "trivial") return DirichletCharacter::trivial(default_modulus);
    if (text.rfind("trivial:", 0) == 0) return DirichletCharacter::trivial(std::stoull(text.substr(8)));
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("character spec must be 'trivial' or 'N:e1,e2,...'");
    const std::uint64_t modulus = std::stoull(text.substr(0, colon));
    std::vector<std::int64_t> exps;
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) exps.push_back(std::stoll(item));
    return DirichletCharacter(modulus, std::move(exps));
  } catch (const ConstructionError& e) {
    throw ParseError(std::string("bad character spec: ") + e.what());
  } catch (const std::logic_error&) {
    throw ParseError("bad character spec '" + text + "'");
  }
}

CoefficientValue parse_value(const std::string& re, const std::string& im) {
  mpq_class qre;
  mpq_class qim;
  const bool ere = parse_exact(re, qre);
  const bool eim = parse_exact(im, qim);
  if (ere && eim) return CoefficientValue(ComplexRational(qre, qim));
  const double dre = ere ? qre.get_d() : parse_decimal(re);
  const double dim = eim ? qim.get_d() : parse_decimal(im);
  return CoefficientValue(std::complex<double>(dre, dim));
}

std::pair<std::string, std::string> format_value(const CoefficientValue& v) {
  if (v.is_exact()) return {q_string(v.exact()->re), q_string(v.exact()->im)};
  return {format_decimal(v.approx().real()), format_decimal(v.approx().imag())};
}

std::string newform_to_json(const NewformData& data) {
  json j;
  j["kind"] = "newform";
  j["weight"] = data.weight();
  j["level"] = data.level();
  j["character"] = character_json(data.character());
  j["normalized"] = false;
  j["source"] = data.source();
  j["entries"] = entries_json(data.prime_coeffs());
  return dump(j);
}

NewformData newform_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (field<std::string>(j, "kind") != "newform") throw ParseError("expected kind 'newform'");
  const int weight = field<int>(j, "weight");
  const auto level = field<std::uint64_t>(j, "level");
  DirichletCharacter chi =
      j.contains("character") ? character_from_json(j.at("character")) : DirichletCharacter::trivial(1);
  const bool normalized = j.contains("normalized") && field<bool>(j, "normalized");
  const std::string source = j.contains("source") ? field<std::string>(j, "source") : std::string{};
  auto table = entries_from_json(j);
  if (normalized) {
    for (auto& [p, v] : table) {
      if ((weight - 1) % 2 == 0) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>((weight - 1) / 2));
        v = v * CoefficientValue::integer(scale);
      } else {
        v = CoefficientValue(v.approx() * std::pow(static_cast<double>(p), (weight - 1) / 2.0));
      }
    }
  }
  try {
    return NewformData(weight, level, std::move(chi), std::move(table), normalized, source);
  } catch (const ConstructionError& e) {
    throw ParseError(std::string("inconsistent newform file: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("inconsistent newform file: ") + e.what());
  }
}

NewformData load_newform(const std::filesystem::path& path, bool validate) {
  NewformData data = newform_from_json(read_file(path));
  if (validate) validate_newform(data);
  return data;
}

void save_newform(const NewformData& data, const std::filesystem::path& path) {
  write_file(path, newform_to_json(data));
}

std::string half_integral_to_json(const HalfIntegralData& data) {
  json j;
  j["kind"] = "half-integral";
  j["weight"] = json::array({2 * data.k + 1, 2});
  j["level"] = data.level;
  j["character"] = character_json(data.character);
  j["normalized"] = false;
  j["source"] = data.source;
  j["entries"] = entries_json(data.coeffs);
  return dump(j);
}

HalfIntegralData half_integral_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (field<std::string>(j, "kind") != "half-integral") throw ParseError("expected kind 'half-integral'");
  const auto w = field<std::vector<int>>(j, "weight");
  if (w.size() != 2 || w[1] != 2 || w[0] < 3 || w[0] % 2 == 0)
    throw ParseError("half-integral weight must be [2k+1, 2] with k >= 1");
  if (j.contains("normalized") && field<bool>(j, "normalized"))
    throw ParseError("normalized half-integral files are not supported");
  HalfIntegralData out;
  out.k = (w[0] - 1) / 2;
  out.level = field<std::uint64_t>(j, "level");
  out.character = character_from_json(j.at("character"));
  if (out.level % out.character.modulus() != 0) throw ParseError("character modulus must divide the level");
  out.source = j.contains("source") ? field<std::string>(j, "source") : std::string{};
  out.coeffs = entries_from_json(j);
  return out;
}

HalfIntegralData load_half_integral(const std::filesystem::path& path) {
  return half_integral_from_json(read_file(path));
}

void save_half_integral(const HalfIntegralData& data, const std::filesystem::path& path) {
  write_file(path, half_integral_to_json(data));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace modsign::io

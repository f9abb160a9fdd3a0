#include "modsign/report.hpp"

#include <cmath>
#include <cstdio>

#include "modsign/errors.hpp"
#include "modsign/io.hpp"

namespace modsign {
namespace {

using nlohmann::json;

std::string format_float(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

void write(const json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        write(it.value(), depth + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(j[i], depth + 1, out);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_float(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

json ExperimentReport::to_json() const {
  return json{{"experiment", experiment},
              {"inputs", inputs},
              {"results", results},
              {"runtime_seconds", runtime_seconds},
              {"tool_version", tool_version}};
}

ExperimentReport ExperimentReport::from_json(const json& j) {
  ExperimentReport r;
  try {
    r.experiment = j.at("experiment").get<std::string>();
    r.inputs = j.at("inputs");
    r.results = j.at("results");
    r.runtime_seconds = j.at("runtime_seconds").get<double>();
    r.tool_version = j.at("tool_version").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string serialize_json(const json& j) {
  std::string out;
  write(j, 0, out);
  out += "\n";
  return out;
}

std::string serialize_report(const ExperimentReport& report) { return serialize_json(report.to_json()); }

void save_report(const ExperimentReport& report, const std::filesystem::path& path) {
  io::write_file(path, serialize_report(report));
}

ExperimentReport load_report(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  try {
    return ExperimentReport::from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what());
  }
}

std::string report_without_runtime(const std::string& serialized) {
  json j;
  try {
    j = json::parse(serialized);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what());
  }
  j.erase("runtime_seconds");
  return serialize_json(j);
}

}  // namespace modsign

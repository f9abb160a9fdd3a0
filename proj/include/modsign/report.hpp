#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace modsign {

inline constexpr const char* kToolVersion = "0.1.0";

/// Machine-readable record of one experiment run.
struct ExperimentReport {
  std::string experiment;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  double runtime_seconds = 0.0;
  std::string tool_version = kToolVersion;

  nlohmann::json to_json() const;
  static ExperimentReport from_json(const nlohmann::json& j);
};

/// Deterministic text: object keys sorted, two-space indentation, floating
/// point values with 12 significant digits, trailing newline.
std::string serialize_json(const nlohmann::json& j);
std::string serialize_report(const ExperimentReport& report);

void save_report(const ExperimentReport& report, const std::filesystem::path& path);
ExperimentReport load_report(const std::filesystem::path& path);

/// The serialized report with runtime_seconds removed.
std::string report_without_runtime(const std::string& serialized);

}  // namespace modsign

#pragma once

#include <filesystem>
#include <string>

#include "modsign/newform.hpp"
#include "modsign/shimura.hpp"

namespace modsign::io {

/// Coefficient files are JSON objects
///   {"kind": "newform" | "half-integral", "weight": k or [2k+1, 2], "level": N,
///    "character": {"modulus": M, "exponents": [...]}, "normalized": bool,
///    "source": text, "entries": [{"index": n, "re": s, "im": s}, ...]}
/// where s is an exact rational "a/b" (or integer) or a decimal with '.' or 'e'.
/// Entries with a decimal part load as inexact values.

/// "trivial", "trivial:N" or "N:e1,e2,...".
DirichletCharacter parse_character(const std::string& text, std::uint64_t default_modulus = 1);

/// Parses a coefficient string; decimals yield an inexact value.
CoefficientValue parse_value(const std::string& re, const std::string& im);
/// Exact rationals as "a/b" or integers; inexact parts as %.17g with a guaranteed decimal marker.
std::pair<std::string, std::string> format_value(const CoefficientValue& v);

std::string newform_to_json(const NewformData& data);
/// Builds NewformData from JSON text (no bound validation). Normalized
/// entries are rescaled by p^{(k-1)/2}. Throws ParseError on malformed input.
NewformData newform_from_json(const std::string& text);

/// Reads, parses and validates (Deligne bound, character reality). Throws
/// IoError, ParseError or ValidationError.
NewformData load_newform(const std::filesystem::path& path, bool validate = true);
void save_newform(const NewformData& data, const std::filesystem::path& path);

std::string half_integral_to_json(const HalfIntegralData& data);
HalfIntegralData half_integral_from_json(const std::string& text);
HalfIntegralData load_half_integral(const std::filesystem::path& path);
void save_half_integral(const HalfIntegralData& data, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace modsign::io

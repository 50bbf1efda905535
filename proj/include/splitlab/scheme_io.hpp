#pragma once

// JSON scheme documents:
//
//   {"kind": "velocity" | "position",
//    "t": [numbers], "v": [numbers],
//    "gradient": [{"index": int, "c": number}],   (optional, 0-based kicks)
//    "label": string}                            (optional)
//
// Numbers may be JSON numbers or strings holding "p/q", integers or decimal
// literals. Decimal JSON numbers are read from their source text, so 0.1 is
// exactly 1/10 in rational mode.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "splitlab/scheme.hpp"

namespace splitlab::io {

using Json = nlohmann::ordered_json;

enum class NumericMode { rational, floating };

NumericMode parse_mode(std::string_view name);
std::string_view to_string(NumericMode mode);

/// Parses JSON text, keeping the source text of every non-integer number as
/// a string. Throws Error(parse_error) with line and column on bad syntax.
Json parse_json_exact(std::string_view text);

RationalScheme scheme_from_json_exact(const Json& doc);
Scheme scheme_from_json(const Json& doc);

RationalScheme parse_scheme_exact(std::string_view text);
Scheme parse_scheme(std::string_view text);

RationalScheme read_scheme_exact(const std::filesystem::path& path);
Scheme read_scheme(const std::filesystem::path& path);

/// Rational values become "p/q" strings; doubles serialize at shortest
/// round-trip precision.
inline Json scalar_json(const Rational& x) { return splitlab::to_string(x); }
inline Json scalar_json(double x) { return x; }

Json to_json(const RationalScheme& scheme);
Json to_json(const Scheme& scheme);

template <class S>
Json to_json(const ErrorCoefficients<S>& ec) {
  Json j;
  j["e_T"] = scalar_json(ec.e_T);
  j["e_V"] = scalar_json(ec.e_V);
  j["e_TV"] = scalar_json(ec.e_TV);
  j["e_TTV"] = scalar_json(ec.e_TTV);
  j["e_VTV"] = scalar_json(ec.e_VTV);
  return j;
}

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const Json& doc);

std::string read_file(const std::filesystem::path& path);

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace splitlab::io

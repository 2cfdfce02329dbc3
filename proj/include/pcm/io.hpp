#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

#include "pcm/pcm.hpp"

namespace pcm {

enum class Format { Csv, Json };

/// Parses "csv" / "json" (case-sensitive). Throws ParseError otherwise.
Format parse_format(std::string_view name);

/// Reads an incomplete PCM.
///
/// CSV: one row per line, comma-separated cells. A cell is a decimal number,
/// a fraction "p/q" of two integers, or `*` for a missing judgment.
/// JSON: {"order": n, "entries": [[...], ...]} with null for missing cells;
/// string cells follow the CSV cell grammar.
///
/// Throws ParseError for malformed text and ValidationError when the grid is
/// not a reciprocal incomplete PCM.
IncompletePCM parse_matrix(std::string_view text, Format format);

/// Parses a single CSV cell. Returns nullopt for `*`.
Cell parse_cell(std::string_view cell);

/// Serialises with full double precision; `*` for missing cells.
std::string to_csv(const IncompletePCM& pcm);
std::string to_csv(const Matrix& m);

nlohmann::json to_json(const IncompletePCM& pcm);
nlohmann::json to_json(const Matrix& m);

}  // namespace pcm

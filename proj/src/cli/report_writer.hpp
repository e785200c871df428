#pragma once

#include <string>

#include <json.hpp>

namespace bsq::cli {

enum class Format { csv, json };

/// Report document: {"command", "config", "summary", "columns", "rows", optional "footer"}.
/// rows and footer are arrays aligned with columns; null cells stay empty in CSV.
using Json = nlohmann::json;

/// CSV: `# key = value` comment lines for config and summary, then the header and rows.
std::string render_csv(const Json& doc);

/// JSON with rows and footer turned into objects keyed by column name.
std::string render_json(const Json& doc);

std::string format_number(double v);

/// Writes <out_dir>/<stem>.<ext>, creating the directory. Returns the path.
std::string write_report(const Json& doc, const std::string& out_dir, const std::string& stem, Format format);

}  // namespace bsq::cli

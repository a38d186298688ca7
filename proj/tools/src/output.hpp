#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace furst_cli {

using Json = nlohmann::ordered_json;

// One command's result: a provenance header (version, command, effective
// config, seed when stochastic), an optional row table, and scalar summary
// values.  Rendered to json, csv, or jsonl; identical inputs render to
// identical bytes.
struct Doc {
  std::string command;
  Json config = Json::object();
  std::optional<std::uint64_t> seed;
  std::vector<std::string> columns;
  std::vector<Json> rows;  // each row is a Json array aligned with columns
  Json summary = Json::object();
};

std::string render(const Doc& doc, const std::string& format);

std::uint64_t fnv1a(const std::string& bytes);

// --out is joined onto $FURST_OUTPUT_DIR when relative and the variable is
// set; empty means stdout.
std::string resolve_output_path(const std::string& out);

// Renders and writes to the resolved path (stdout when empty).
void write_doc(const Doc& doc, const std::string& format, const std::string& out);

}  // namespace furst_cli

#include "output.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#ifndef FURST_VERSION
#define FURST_VERSION "0.0.0"
#endif

namespace furst_cli {

namespace {

std::string plain_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_cell(const Json& v) {
  std::string text = plain_text(v);
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

Json header_object(const Doc& doc) {
  Json head = Json::object();
  head["version"] = FURST_VERSION;
  head["command"] = doc.command;
  head["config"] = doc.config;
  if (doc.seed) head["seed"] = *doc.seed;
  return head;
}

std::string render_json(const Doc& doc) {
  Json out = header_object(doc);
  if (!doc.columns.empty()) {
    out["columns"] = doc.columns;
    out["rows"] = doc.rows;
  }
  if (!doc.summary.empty()) out["summary"] = doc.summary;
  return out.dump(2) + "\n";
}

std::string render_jsonl(const Doc& doc) {
  std::ostringstream out;
  Json head = header_object(doc);
  if (!doc.columns.empty()) head["columns"] = doc.columns;
  out << head.dump() << "\n";
  for (const Json& row : doc.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < doc.columns.size() && i < row.size(); ++i)
      obj[doc.columns[i]] = row[i];
    out << obj.dump() << "\n";
  }
  if (!doc.summary.empty()) out << Json{{"summary", doc.summary}}.dump() << "\n";
  return out.str();
}

std::string render_csv(const Doc& doc) {
  std::ostringstream out;
  out << "# version=" << FURST_VERSION << "\n";
  out << "# command=" << doc.command << "\n";
  for (const auto& [key, value] : doc.config.items())
    out << "# " << key << "=" << plain_text(value) << "\n";
  if (doc.seed) out << "# seed=" << *doc.seed << "\n";
  if (!doc.columns.empty()) {
    for (std::size_t i = 0; i < doc.columns.size(); ++i)
      out << (i ? "," : "") << csv_cell(doc.columns[i]);
    out << "\n";
    for (const Json& row : doc.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? "," : "") << csv_cell(row[i]);
      out << "\n";
    }
    for (const auto& [key, value] : doc.summary.items())
      out << "# " << key << "=" << plain_text(value) << "\n";
  } else {
    out << "key,value\n";
    for (const auto& [key, value] : doc.summary.items())
      out << csv_cell(key) << "," << csv_cell(value) << "\n";
  }
  return out.str();
}

}  // namespace

std::string render(const Doc& doc, const std::string& format) {
  if (format == "json") return render_json(doc);
  if (format == "jsonl") return render_jsonl(doc);
  if (format == "csv") return render_csv(doc);
  throw std::invalid_argument("unknown output format: " + format);
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string resolve_output_path(const std::string& out) {
  if (out.empty() || out.front() == '/') return out;
  const char* base = std::getenv("FURST_OUTPUT_DIR");
  if (base == nullptr || base[0] == '\0') return out;
  std::string joined(base);
  if (joined.back() != '/') joined += '/';
  return joined + out;
}

void write_doc(const Doc& doc, const std::string& format, const std::string& out) {
  const std::string text = render(doc, format);
  const std::string path = resolve_output_path(out);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  file << text;
}

}  // namespace furst_cli

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cmds.hpp"
#include "output.hpp"

#ifndef FURST_VERSION
#define FURST_VERSION "0.0.0"
#endif

namespace furst_cli {

namespace {

std::string format_of(const std::vector<std::string>& args) {
  std::string fmt = "json";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--format" && i + 1 < args.size())
      fmt = args[i + 1];
    else if (args[i].rfind("--format=", 0) == 0)
      fmt = args[i].substr(9);
  }
  return fmt;
}

std::string extension_of(const std::string& fmt) {
  if (fmt == "csv") return ".csv";
  if (fmt == "jsonl") return ".jsonl";
  return ".json";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

void register_bundle(CLI::App& app, Ctx& ctx) {
  auto config_path = std::make_shared<std::string>();
  auto dir = std::make_shared<std::string>();
  CLI::App* cmd = app.add_subcommand(
      "bundle", "Run a list of subcommands and write a checksummed manifest");
  cmd->add_option("--config", *config_path,
                  "JSON file: array of {name, args} entries")
      ->required();
  cmd->add_option("--dir", *dir, "Output directory for the artifacts")
      ->required();
  cmd->callback([config_path, dir, &ctx] {
    const std::string raw = read_file(*config_path);
    if (raw.empty())
      throw std::invalid_argument("cannot read bundle config file: " +
                                  *config_path);
    Json config;
    try {
      config = Json::parse(raw);
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string("bundle config is not JSON: ") +
                                  e.what());
    }
    if (!config.is_array() || config.empty())
      throw std::invalid_argument(
          "bundle config must be a non-empty JSON array");

    const std::filesystem::path out_dir = resolve_output_path(*dir);
    std::filesystem::create_directories(out_dir);

    Json manifest = Json::object();
    manifest["version"] = FURST_VERSION;
    Json entries = Json::array();

    Doc doc;
    doc.command = "bundle";
    doc.config["config"] = *config_path;
    doc.config["dir"] = *dir;
    doc.columns = {"name", "file", "bytes", "fnv1a", "exit"};

    std::size_t failures = 0;
    for (const auto& item : config) {
      if (!item.is_object() || !item.contains("name") ||
          !item.contains("args") || !item["args"].is_array())
        throw std::invalid_argument(
            "each bundle entry needs a name and an args array");
      const std::string name = item["name"].get<std::string>();
      if (name.empty() || name.find('/') != std::string::npos)
        throw std::invalid_argument("bundle entry name must be a plain name");
      std::vector<std::string> args;
      for (const auto& a : item["args"]) args.push_back(a.get<std::string>());

      const std::string file_name = name + extension_of(format_of(args));
      const std::filesystem::path file_path = out_dir / file_name;
      std::vector<std::string> full = args;
      full.push_back("--out");
      full.push_back(file_path.string());
      const int code = run(full);
      if (code != 0) ++failures;

      std::uintmax_t bytes = 0;
      std::string checksum = hex64(0);
      if (std::filesystem::exists(file_path)) {
        bytes = std::filesystem::file_size(file_path);
        checksum = hex64(fnv1a(read_file(file_path)));
      }

      Json entry = Json::object();
      entry["name"] = name;
      entry["args"] = item["args"];
      entry["file"] = file_name;
      entry["bytes"] = bytes;
      entry["fnv1a"] = checksum;
      entry["exit"] = code;
      entries.push_back(entry);
      doc.rows.push_back(Json::array({name, file_name, bytes, checksum, code}));
    }
    manifest["entries"] = entries;

    std::ofstream mf(out_dir / "manifest.json", std::ios::binary);
    if (!mf) throw std::runtime_error("cannot write bundle manifest");
    mf << manifest.dump(2) << '\n';
    mf.close();

    doc.summary["entries"] = entries.size();
    doc.summary["failures"] = failures;
    doc.summary["manifest"] = (out_dir / "manifest.json").string();
    ctx.emit(doc);
    if (failures > 0)
      throw std::runtime_error("bundle completed with failing sub-runs");
  });
}

}  // namespace furst_cli

#pragma once

#include <string>
#include <vector>

#include "CLI11.hpp"

#include "output.hpp"

namespace furst_cli {

struct Ctx {
  std::string format = "json";
  std::string out;  // empty = stdout
  void emit(const Doc& doc) const { write_doc(doc, format, out); }
};

// Runs one full command line (no program name); returns the process exit
// code.  Re-entrant so `bundle` can drive other subcommands.
int run(const std::vector<std::string>& args);

void register_semigroup(CLI::App& app, Ctx& ctx);
void register_diophantine(CLI::App& app, Ctx& ctx);
void register_equidistribution(CLI::App& app, Ctx& ctx);
void register_selectors(CLI::App& app, Ctx& ctx);
void register_qi(CLI::App& app, Ctx& ctx);
void register_norms(CLI::App& app, Ctx& ctx);
void register_bundle(CLI::App& app, Ctx& ctx);

}  // namespace furst_cli

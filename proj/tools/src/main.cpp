#include <exception>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cmds.hpp"
#include "furst/errors.hpp"

namespace furst_cli {

int run(const std::vector<std::string>& args) {
  Ctx ctx;
  CLI::App app{"Multiplicative-semigroup thin-set toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // --format/--out are accepted after the subcommand too
  app.set_help_all_flag("--help-all", "Print help for every subcommand");
  app.add_option("--format", ctx.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "jsonl"}))
      ->capture_default_str();
  app.add_option("--out", ctx.out,
                 "Output file (relative paths join $FURST_OUTPUT_DIR; "
                 "default stdout)");

  register_semigroup(app, ctx);
  register_diophantine(app, ctx);
  register_equidistribution(app, ctx);
  register_selectors(app, ctx);
  register_qi(app, ctx);
  register_norms(app, ctx);
  register_bundle(app, ctx);

  std::vector<const char*> argv;
  argv.push_back("furst");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const furst::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace furst_cli

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return furst_cli::run(args);
}

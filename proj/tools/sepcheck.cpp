#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sepcheck/cli.hpp"

int main(int argc, char** argv) {
  using namespace sepcheck::cli;

  CLI::App app{"Separability checker for [@@unboxed] datatype declarations"};
  RunConfig cfg;
  std::string format = "text";
  std::string pool = "default";
  bool explain = false, oracle = false, diff = false;

  app.add_option("paths", cfg.paths, "Declaration files")->required();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--explain", explain, "Print derivations and fixpoint iterations");
  app.add_flag("--oracle", oracle, "Validate accepted signatures against the ground-value model");
  app.add_option("--oracle-depth", cfg.oracle_depth, "Maximum value depth for the oracle")
      ->check(CLI::PositiveNumber);
  app.add_option("--oracle-pool", pool, "Instantiation pool for the oracle")
      ->check(CLI::IsMember({"small", "default"}));
  app.add_option("--legacy-fuel", cfg.legacy_fuel, "Expansion limit of the legacy check")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--diff", diff, "Compare against the legacy expansion check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_error;
  }

  if (explain + oracle + diff > 1) {
    std::cerr << "error: --explain, --oracle and --diff are mutually exclusive\n";
    return exit_error;
  }
  cfg.mode = explain ? RunMode::Explain : oracle ? RunMode::Oracle : diff ? RunMode::Diff : RunMode::Check;
  cfg.format = format == "json" ? Format::Json : Format::Text;
  cfg.small_pool = pool == "small";

  return run(cfg, std::cout, std::cerr);
}

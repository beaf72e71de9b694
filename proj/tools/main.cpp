#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tableturn/commands.hpp"

namespace {

struct CliArgs {
  std::string config_path;
  std::string out_override;
  std::string model_text;
  std::size_t seeds = 10;
};

void add_common_options(CLI::App& cmd, CliArgs& args) {
  cmd.add_option("--config", args.config_path, "experiment config file")
      ->required();
  cmd.add_option("--out", args.out_override,
                 "output directory (overrides config and TABLETURN_OUT)");
  cmd.add_option("--model", args.model_text, "touchdown model")
      ->check(CLI::IsMember({"abstract", "rigid"}));
}

tableturn::CommandOptions make_options(const CliArgs& args) {
  tableturn::CommandOptions options;
  options.out_override = args.out_override;
  if (!args.model_text.empty()) {
    options.model = tableturn::touch_model_from_string(args.model_text);
  }
  return options;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tableturn: decide whether rotating a four-legged table with leg ends "
      "on a circle stabilizes it on uneven terrain"};
  app.require_subcommand(1);

  CliArgs args;
  CLI::App* validate = app.add_subcommand(
      "validate", "check the geometry assumptions (equal diagonals, rational "
                  "angles) and report");
  CLI::App* sweep = app.add_subcommand(
      "sweep", "tabulate the touchdown heights over N uniform angles");
  CLI::App* solve = app.add_subcommand(
      "solve", "search for stabilizing rotation angles");
  CLI::App* ergodic = app.add_subcommand(
      "ergodic", "Birkhoff-average convergence report for h_delta");
  CLI::App* batch = app.add_subcommand(
      "batch", "run the solver across seeded random terrains");
  for (CLI::App* cmd : {validate, sweep, solve, ergodic, batch}) {
    add_common_options(*cmd, args);
  }
  batch->add_option("--seeds", args.seeds, "number of seeds (runs 1..N)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the diagnostic
    return tableturn::kExitUsage;
  }

  try {
    const tableturn::ExperimentConfig config =
        tableturn::load_config(args.config_path);
    const tableturn::CommandOptions options = make_options(args);

    if (validate->parsed()) return tableturn::run_validate(config, std::cout);
    if (sweep->parsed()) return tableturn::run_sweep(config, options, std::cout);
    if (solve->parsed()) return tableturn::run_solve(config, options, std::cout);
    if (ergodic->parsed()) {
      return tableturn::run_ergodic(config, options, std::cout);
    }
    return tableturn::run_batch(config, args.seeds, options, std::cout);
  } catch (const tableturn::ConfigError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return tableturn::kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return tableturn::kExitUsage;
  }
}

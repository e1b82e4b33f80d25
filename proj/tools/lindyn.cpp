// Experiment runner for the weighted-shift thermodynamic toolkit.
//
//   lindyn <subcommand> --config <path> [--out <dir>] [--seed <u64>]
//
// Subcommands: spectrum, gibbs, sweep, mane, maximize, chaos,
// verify-examples.  Results land in the output directory as summary.json,
// meta.json, tables/*.csv and plots/*.csv.  LINDYN_OUT overrides the output
// directory from the environment.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lindyn/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"weighted-shift thermodynamic formalism toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed_override = 0;
  bool have_seed = false;

  const std::vector<std::string> names = {"spectrum", "gibbs",  "sweep",          "mane",
                                          "maximize", "chaos", "verify-examples"};
  for (const std::string& n : names) {
    CLI::App* sub = app.add_subcommand(n);
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory (overrides the config)");
    sub->add_option("--seed", seed_override, "seed override")
        ->each([&have_seed](const std::string&) { have_seed = true; });
  }

  CLI11_PARSE(app, argc, argv);
  const std::string subcommand = app.get_subcommands().front()->get_name();

  try {
    lindyn::ExperimentConfig cfg = lindyn::ExperimentConfig::load(config_path);
    if (have_seed) {
      cfg.seed = seed_override;
      cfg.chain.seed = seed_override;
      cfg.sweep.chain.seed = seed_override;
    }
    std::string out = cfg.output_dir;
    if (!out_dir.empty()) out = out_dir;
    if (const char* env = std::getenv("LINDYN_OUT")) out = env;
    lindyn::RunOutcome res = lindyn::run_experiment(subcommand, cfg, out);
    return res.exit_code;
  } catch (const lindyn::ConfigError& e) {
    nlohmann::json err{{"error", "config"}, {"path", e.path}, {"message", e.what()}};
    std::cout << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", "runtime"}, {"message", e.what()}};
    std::cout << err.dump() << "\n";
    return 3;
  }
}

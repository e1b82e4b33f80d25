#pragma once

#include <string>

#include <json.hpp>

#include "lindyn/config.hpp"

namespace lindyn {

struct RunOutcome {
  int exit_code = 0;
  nlohmann::json summary;
};

// Dispatches one experiment subcommand and writes summary.json, meta.json,
// tables/ and plots/ under the output directory.  Valid subcommands:
// spectrum, gibbs, sweep, mane, maximize, chaos, verify-examples.
RunOutcome run_experiment(const std::string& subcommand, const ExperimentConfig& cfg,
                          const std::string& output_dir);

}  // namespace lindyn

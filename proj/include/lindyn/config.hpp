#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lindyn/apriori.hpp"
#include "lindyn/potential.hpp"
#include "lindyn/shift.hpp"
#include "lindyn/thermo.hpp"
#include "lindyn/transfer.hpp"

namespace lindyn {

// Configuration failures carry the offending config path segment.
struct ConfigError : std::runtime_error {
  std::string path;
  ConfigError(std::string p, const std::string& what)
      : std::runtime_error("config." + p + ": " + what), path(std::move(p)) {}
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  SpaceSpec space;
  WeightSequence weights;
  nlohmann::json potential_spec;
  double apriori_sigma = 1.0;
  int apriori_quad_order = 64;
  GridSpec grid;
  bool grid_radius_explicit = false;
  ChainSpec chain;
  SweepSpec sweep;
  nlohmann::json raw;

  static ExperimentConfig parse(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);
};

// Builders keyed by the potential "kind"; custom potentials can be
// registered before config parsing.
using PotentialBuilder = std::function<Potential(
    const nlohmann::json&, const SpaceSpec&, const ShiftOperator&)>;

std::map<std::string, PotentialBuilder>& potential_registry();

Potential build_potential(const nlohmann::json& spec, const SpaceSpec& space,
                          const ShiftOperator& op);

// The distinguished fixed point v = periodic_point(head = {1}).
TruncatedVector default_fixed_point(const ShiftOperator& op);
// The period-two pair (v, w = L v) grown from head {1, 0}.
std::pair<TruncatedVector, TruncatedVector> default_period2_points(const ShiftOperator& op);

}  // namespace lindyn

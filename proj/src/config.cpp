#include "lindyn/config.hpp"

#include <fstream>

namespace lindyn {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path.empty() ? key : path + "." + key, "missing");
  return j.at(key);
}

double require_number(const json& j, const std::string& key, const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_number())
    throw ConfigError(path.empty() ? key : path + "." + key, "expected a number");
  return v.get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<double>();
}

std::string string_or(const json& j, const std::string& key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<std::string>();
}

SpaceSpec parse_space(const json& j) {
  const std::string norm = string_or(j, "norm", "l1");
  const int dim = static_cast<int>(number_or(j, "dim", 64));
  if (dim < 1) throw ConfigError("space.dim", "must be >= 1");
  if (norm == "sup" || norm == "c0") return SpaceSpec::sup(dim);
  if (norm == "l1") return SpaceSpec::l1(dim);
  if (norm == "l2") return SpaceSpec::l2(dim);
  if (norm == "lp") {
    const double p = require_number(j, "p", "space");
    if (p < 1.0) throw ConfigError("space.p", "must be >= 1");
    return SpaceSpec::lp(p, dim);
  }
  throw ConfigError("space.norm", "unknown norm kind '" + norm + "'");
}

WeightSequence parse_weights(const json& j, int dim) {
  const std::string kind = string_or(j, "kind", "constant");
  if (kind == "constant") {
    const double c = require_number(j, "c", "weights");
    if (!(c > 0.0)) throw ConfigError("weights.c", "must be > 0");
    return WeightSequence::constant(c, dim);
  }
  if (kind == "alternating") {
    const double c0 = require_number(j, "c0", "weights");
    const double c1 = require_number(j, "c1", "weights");
    if (!(c0 > 0.0) || !(c1 > 0.0))
      throw ConfigError("weights.c0", "alternating weights must be > 0");
    return WeightSequence::alternating(c0, c1, dim);
  }
  if (kind == "explicit") {
    const json& vals = require(j, "values", "weights");
    if (!vals.is_array() || vals.empty())
      throw ConfigError("weights.values", "expected a non-empty array");
    std::vector<double> v = vals.get<std::vector<double>>();
    if (static_cast<int>(v.size()) < dim)
      throw ConfigError("weights.values", "need at least space.dim entries");
    v.resize(static_cast<std::size_t>(dim));
    return WeightSequence::explicit_values(std::move(v));
  }
  throw ConfigError("weights.kind", "unknown kind '" + kind + "'");
}

}  // namespace

TruncatedVector default_fixed_point(const ShiftOperator& op) {
  return op.periodic_point({1.0});
}

std::pair<TruncatedVector, TruncatedVector> default_period2_points(const ShiftOperator& op) {
  TruncatedVector v = op.periodic_point({1.0, 0.0});
  const TruncatedVector lv = op.apply(v);
  TruncatedVector w = op.periodic_point({lv[0], lv[1]});
  return {std::move(v), std::move(w)};
}

namespace {

TruncatedVector parse_center(const nlohmann::json& spec, const std::string& key,
                             const SpaceSpec& space, const ShiftOperator& op) {
  if (!spec.contains(key)) return default_fixed_point(op);
  const nlohmann::json& c = spec.at(key);
  if (c.is_string()) {
    const std::string s = c.get<std::string>();
    if (s == "fixed_point") return default_fixed_point(op);
    throw ConfigError("potential." + key, "unknown center '" + s + "'");
  }
  if (c.is_array()) {
    std::vector<double> v = c.get<std::vector<double>>();
    v.resize(static_cast<std::size_t>(space.dim), 0.0);
    return TruncatedVector(std::move(v), space);
  }
  throw ConfigError("potential." + key, "expected 'fixed_point' or an array");
}

Modulator parse_modulator(const nlohmann::json& spec) {
  return Modulator::from_name(string_or(spec, "r", "exp"));
}

std::map<std::string, PotentialBuilder> make_registry() {
  std::map<std::string, PotentialBuilder> reg;
  reg["zero"] = [](const nlohmann::json&, const SpaceSpec&, const ShiftOperator&) {
    return zero_potential();
  };
  reg["constant"] = [](const nlohmann::json& spec, const SpaceSpec&, const ShiftOperator&) {
    return constant_potential(number_or(spec, "value", 0.0));
  };
  reg["neg_dist"] = [](const nlohmann::json& spec, const SpaceSpec& space,
                       const ShiftOperator& op) {
    return neg_dist(parse_center(spec, "center", space, op));
  };
  reg["neg_dist_projected"] = [](const nlohmann::json& spec, const SpaceSpec& space,
                                 const ShiftOperator& op) {
    const int depth = static_cast<int>(number_or(spec, "depth", 1));
    if (depth < 1 || depth > space.dim)
      throw ConfigError("potential.depth", "must lie in [1, N]");
    return neg_dist_projected(parse_center(spec, "center", space, op), depth);
  };
  reg["modulated_dist"] = [](const nlohmann::json& spec, const SpaceSpec& space,
                             const ShiftOperator& op) {
    return modulated_dist(parse_center(spec, "center", space, op), parse_modulator(spec));
  };
  reg["two_point"] = [](const nlohmann::json& spec, const SpaceSpec& space,
                        const ShiftOperator& op) {
    if (spec.contains("centers") && spec.at("centers").is_array()) {
      const nlohmann::json& cs = spec.at("centers");
      if (cs.size() != 2) throw ConfigError("potential.centers", "expected two centers");
      std::vector<double> a = cs.at(0).get<std::vector<double>>();
      std::vector<double> b = cs.at(1).get<std::vector<double>>();
      a.resize(static_cast<std::size_t>(space.dim), 0.0);
      b.resize(static_cast<std::size_t>(space.dim), 0.0);
      return two_point(TruncatedVector(std::move(a), space),
                       TruncatedVector(std::move(b), space), parse_modulator(spec));
    }
    auto [v, w] = default_period2_points(op);
    return two_point(v, w, parse_modulator(spec));
  };
  reg["subspace_even_zero"] = [](const nlohmann::json& spec, const SpaceSpec& space,
                                 const ShiftOperator&) {
    return subspace_dist_even_zero(space, parse_modulator(spec));
  };
  reg["quadratic_well"] = [](const nlohmann::json& spec, const SpaceSpec&,
                             const ShiftOperator&) {
    return quadratic_well(static_cast<int>(number_or(spec, "coord", 1)),
                          number_or(spec, "weight", 1.0));
  };
  reg["power_well"] = [](const nlohmann::json& spec, const SpaceSpec&, const ShiftOperator&) {
    return power_well(static_cast<int>(number_or(spec, "coord", 1)),
                      number_or(spec, "exponent", 1.0));
  };
  return reg;
}

}  // namespace

std::map<std::string, PotentialBuilder>& potential_registry() {
  static std::map<std::string, PotentialBuilder> reg = make_registry();
  return reg;
}

Potential build_potential(const nlohmann::json& spec, const SpaceSpec& space,
                          const ShiftOperator& op) {
  const std::string kind = string_or(spec, "kind", "");
  if (kind.empty()) throw ConfigError("potential.kind", "missing");
  auto& reg = potential_registry();
  auto it = reg.find(kind);
  if (it == reg.end()) throw ConfigError("potential.kind", "unknown kind '" + kind + "'");
  Potential a = it->second(spec, space, op);
  if (spec.contains("alpha")) a.holder_alpha = spec.at("alpha").get<double>();
  if (a.holder_alpha <= 0.0 || a.holder_alpha > 1.0)
    throw ConfigError("potential.alpha", "must lie in (0, 1]");
  return a;
}

ExperimentConfig ExperimentConfig::parse(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.raw = j;
  if (!j.contains("seed")) throw ConfigError("seed", "missing (reproducibility is mandatory)");
  if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
    throw ConfigError("seed", "expected an unsigned integer");
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.output_dir = string_or(j, "output_dir", "out");

  cfg.space = parse_space(j.contains("space") ? j.at("space") : json::object());
  cfg.weights = parse_weights(j.contains("weights") ? j.at("weights") : json::object(),
                              cfg.space.dim);

  cfg.potential_spec = j.contains("potential") ? j.at("potential")
                                               : json{{"kind", "zero"}};

  const json ap = j.contains("apriori") ? j.at("apriori") : json::object();
  cfg.apriori_sigma = number_or(ap, "sigma", 1.0);
  if (!(cfg.apriori_sigma > 0.0)) throw ConfigError("apriori.sigma", "must be > 0");
  cfg.apriori_quad_order = static_cast<int>(number_or(ap, "quad_order", 64));
  if (cfg.apriori_quad_order < 1) throw ConfigError("apriori.quad_order", "must be >= 1");

  const json g = j.contains("grid") ? j.at("grid") : json::object();
  cfg.grid.depth = static_cast<int>(number_or(g, "depth", 1));
  if (cfg.grid.depth < 1 || cfg.grid.depth > 3)
    throw ConfigError("grid.depth", "supported depths are 1..3");
  cfg.grid.resolution = static_cast<int>(number_or(g, "resolution", 33));
  if (cfg.grid.resolution < 2) throw ConfigError("grid.resolution", "must be >= 2");
  if (g.contains("radius")) {
    cfg.grid.radius = g.at("radius").get<double>();
    if (!(cfg.grid.radius > 0.0)) throw ConfigError("grid.radius", "must be > 0");
    cfg.grid_radius_explicit = true;
  }

  const json ch = j.contains("chain") ? j.at("chain") : json::object();
  cfg.chain.steps = static_cast<long>(number_or(ch, "steps", 100000));
  cfg.chain.burn_in = static_cast<long>(number_or(ch, "burn_in", 10000));
  if (cfg.chain.steps < 1) throw ConfigError("chain.steps", "must be >= 1");
  if (cfg.chain.burn_in < 0) throw ConfigError("chain.burn_in", "must be >= 0");
  cfg.chain.seed = cfg.seed;

  const json sw = j.contains("sweep") ? j.at("sweep") : json::object();
  if (sw.contains("t_values")) {
    cfg.sweep.t_values = sw.at("t_values").get<std::vector<double>>();
    if (cfg.sweep.t_values.empty()) throw ConfigError("sweep.t_values", "must be non-empty");
    for (std::size_t i = 1; i < cfg.sweep.t_values.size(); ++i)
      if (cfg.sweep.t_values[i] <= cfg.sweep.t_values[i - 1])
        throw ConfigError("sweep.t_values", "must be strictly increasing");
  }
  cfg.sweep.chain = cfg.chain;
  if (sw.contains("steps")) cfg.sweep.chain.steps = sw.at("steps").get<long>();
  if (sw.contains("burn_in")) cfg.sweep.chain.burn_in = sw.at("burn_in").get<long>();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return parse(j);
}

}  // namespace lindyn

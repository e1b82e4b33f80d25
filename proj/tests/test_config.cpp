#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lindyn/config.hpp"

using namespace lindyn;
using nlohmann::json;

namespace {

json minimal() {
  return json{{"seed", 7},
              {"space", {{"norm", "l1"}, {"dim", 32}}},
              {"weights", {{"kind", "constant"}, {"c", 2.0}}}};
}

}  // namespace

TEST_CASE("defaults fill in around the mandatory seed") {
  ExperimentConfig cfg = ExperimentConfig::parse(minimal());
  CHECK(cfg.seed == 7);
  CHECK(cfg.space.dim == 32);
  CHECK(cfg.apriori_sigma == 1.0);
  CHECK(cfg.apriori_quad_order == 64);
  CHECK(cfg.grid.depth == 1);
  CHECK(cfg.grid.resolution == 33);
  CHECK(cfg.chain.steps == 100000);
  CHECK(cfg.sweep.t_values == std::vector<double>{1, 2, 4, 8, 16, 32, 50});
  CHECK(cfg.chain.seed == 7);
}

TEST_CASE("validation errors carry the config path") {
  json j = minimal();
  j.erase("seed");
  try {
    ExperimentConfig::parse(j);
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(e.path == "seed");
  }

  j = minimal();
  j["space"] = {{"norm", "lp"}, {"dim", 8}};
  try {
    ExperimentConfig::parse(j);
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(e.path == "space.p");
  }

  j = minimal();
  j["weights"] = {{"kind", "explicit"}, {"values", {2.0, 2.0}}};
  CHECK_THROWS_AS(ExperimentConfig::parse(j), ConfigError);

  j = minimal();
  j["sweep"] = {{"t_values", {1.0, 1.0}}};
  CHECK_THROWS_AS(ExperimentConfig::parse(j), ConfigError);

  j = minimal();
  j["grid"] = {{"depth", 5}};
  CHECK_THROWS_AS(ExperimentConfig::parse(j), ConfigError);
}

TEST_CASE("weight kinds produce the documented tables") {
  json j = minimal();
  j["weights"] = {{"kind", "alternating"}, {"c0", 2.0}, {"c1", 3.0}};
  ExperimentConfig cfg = ExperimentConfig::parse(j);
  CHECK(cfg.weights.at(1) == 3.0);  // odd slots carry c1
  CHECK(cfg.weights.at(2) == 2.0);
  CHECK(cfg.weights.lower == 2.0);
  CHECK(cfg.weights.upper == 3.0);

  j["weights"] = {{"kind", "explicit"},
                  {"values", std::vector<double>(40, 2.5)}};
  ExperimentConfig ce = ExperimentConfig::parse(j);
  CHECK(ce.weights.at(17) == 2.5);
  CHECK_FALSE(ce.weights.eventually_regular);
}

TEST_CASE("potential builders resolve centers and registry extensions") {
  ExperimentConfig cfg = ExperimentConfig::parse(minimal());
  ShiftOperator op(cfg.weights, cfg.space);

  Potential a = build_potential({{"kind", "neg_dist"}, {"center", "fixed_point"}}, cfg.space, op);
  CHECK(a(default_fixed_point(op)) == 0.0);

  // explicit centers arrive as flat coordinate arrays, zero padded
  Potential ae = build_potential({{"kind", "neg_dist"}, {"center", {1.0, 0.5}}},
                                 cfg.space, op);
  std::vector<double> probe(32, 0.0);
  probe[0] = 1.0;
  probe[1] = 0.5;
  CHECK(ae(TruncatedVector(probe, cfg.space)) == 0.0);

  Potential q = build_potential({{"kind", "quadratic_well"}, {"coord", 2}}, cfg.space, op);
  std::vector<double> c(32, 0.0);
  c[1] = 3.0;
  CHECK(q(TruncatedVector(c, cfg.space)) == -9.0);

  CHECK_THROWS_AS(build_potential({{"kind", "no_such"}}, cfg.space, op), ConfigError);
  CHECK_THROWS_AS(build_potential({{"kind", "neg_dist"}, {"alpha", 1.5}}, cfg.space, op),
                  ConfigError);

  // custom registration is visible to the builder
  potential_registry()["pinned_coord"] = [](const nlohmann::json&, const SpaceSpec&,
                                            const ShiftOperator&) {
    Potential p;
    p.name = "pinned_coord";
    p.eval = [](const TruncatedVector& x) { return -std::abs(x[2]); };
    p.holder_alpha = 1.0;
    return p;
  };
  Potential custom = build_potential({{"kind", "pinned_coord"}}, cfg.space, op);
  CHECK(custom(TruncatedVector(c, cfg.space)) == 0.0);
  potential_registry().erase("pinned_coord");
}

TEST_CASE("period-two defaults reproduce the alternating pair") {
  json j = minimal();
  j["weights"] = {{"kind", "alternating"}, {"c0", 2.0}, {"c1", 3.0}};
  ExperimentConfig cfg = ExperimentConfig::parse(j);
  ShiftOperator op(cfg.weights, cfg.space);
  auto [v, w] = default_period2_points(op);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 0.0);
  CHECK(w[0] == 0.0);
  CHECK(w[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  Potential a = build_potential({{"kind", "two_point"}, {"r", "hat"}}, cfg.space, op);
  CHECK(a(v) == 0.0);
  CHECK(a(w) == 0.0);
}

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lindyn/grid.hpp"

using namespace lindyn;

TEST_CASE("multilinear interpolation is exact on multilinear data") {
  // f(x, y, z) = 2 + x - 3y + 0.5xy + z - xyz is multilinear, so the grid
  // reproduces it everywhere inside the box
  auto f = [](const std::vector<double>& p) {
    return 2.0 + p[0] - 3.0 * p[1] + 0.5 * p[0] * p[1] + p[2] - p[0] * p[1] * p[2];
  };
  FunctionGrid g = FunctionGrid::from_function(3, 2.0, 9, f);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> p = {u(rng), u(rng), u(rng)};
    CHECK(g.interpolate(p) == doctest::Approx(f(p)).epsilon(1e-12));
  }
}

TEST_CASE("queries outside the box clamp to the boundary") {
  FunctionGrid g = FunctionGrid::from_function(
      2, 1.0, 5, [](const std::vector<double>& p) { return p[0] + 10.0 * p[1]; });
  CHECK(g.interpolate({5.0, 0.0}) == doctest::Approx(g.interpolate({1.0, 0.0})));
  CHECK(g.interpolate({-5.0, -7.0}) == doctest::Approx(g.interpolate({-1.0, -1.0})));
}

TEST_CASE("grid points round-trip through the flat index") {
  FunctionGrid g(2, 1.5, 7, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::vector<double> p = g.point(i);
    g.values()[i] = 3.0 * p[0] - p[1];
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::vector<double> p = g.point(i);
    CHECK(g.interpolate(p) == doctest::Approx(3.0 * p[0] - p[1]).epsilon(1e-13));
  }
  CHECK(g.axis_point(0) == -1.5);
  CHECK(g.axis_point(6) == 1.5);
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(FunctionGrid(0, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(FunctionGrid(1, -1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(FunctionGrid(1, 1.0, 1), std::invalid_argument);
  FunctionGrid g(1, 1.0, 3, 2.0);
  CHECK(g.min_value() == 2.0);
  CHECK(g.max_value() == 2.0);
  CHECK(g.sup_norm() == 2.0);
  CHECK_THROWS_AS(g.interpolate(std::vector<double>{}), std::invalid_argument);
}

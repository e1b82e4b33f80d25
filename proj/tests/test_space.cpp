#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lindyn/space.hpp"

using namespace lindyn;

namespace {

TruncatedVector rnd_vec(const SpaceSpec& s, std::mt19937_64& rng, double radius = 2.0) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<double> c(static_cast<std::size_t>(s.dim));
  for (double& x : c) x = u(rng);
  return TruncatedVector(std::move(c), s);
}

}  // namespace

TEST_CASE("norms on the worked examples") {
  const int n = 16;
  SpaceSpec c0 = SpaceSpec::sup(n);
  std::vector<double> geo(n);
  for (int i = 0; i < n; ++i) geo[static_cast<std::size_t>(i)] = std::ldexp(1.0, -i);
  CHECK(norm(TruncatedVector(geo, c0)) == 1.0);
  CHECK(norm(TruncatedVector::zero(c0)) == 0.0);

  SpaceSpec l2 = SpaceSpec::l2(8);
  std::vector<double> v(8, 0.0);
  v[0] = 3.0;
  v[1] = 4.0;
  CHECK(norm(TruncatedVector(v, l2)) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("distance basics and mismatched spaces") {
  SpaceSpec l1 = SpaceSpec::l1(4);
  SpaceSpec sup = SpaceSpec::sup(4);
  TruncatedVector e1({1, 0, 0, 0}, l1);
  TruncatedVector e2({0, 1, 0, 0}, l1);
  CHECK(distance(e1, e1) == 0.0);
  CHECK(distance(e1, e2) == 2.0);
  TruncatedVector s1({1, 0, 0, 0}, sup);
  TruncatedVector s2({0, 1, 0, 0}, sup);
  CHECK(distance(s1, s2) == 1.0);
  CHECK_THROWS_AS(distance(e1, s1), std::invalid_argument);
}

TEST_CASE("project_depth truncates, is idempotent and exposes the tail norm") {
  SpaceSpec l1 = SpaceSpec::l1(4);
  TruncatedVector v({1, 2, 3, 4}, l1);
  TruncatedVector p = project_depth(v, 2);
  CHECK(p.coords == std::vector<double>{1, 2, 0, 0});
  CHECK(project_depth(p, 2).coords == p.coords);
  CHECK(project_depth(v, 4).coords == v.coords);
  CHECK(norm(sub(v, project_depth(v, 2))) == 7.0);  // |3| + |4|
  CHECK_THROWS_AS(project_depth(v, 0), std::invalid_argument);
  CHECK_THROWS_AS(project_depth(v, 5), std::invalid_argument);
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(SpaceSpec::lp(0.5, 4), std::invalid_argument);
  CHECK_THROWS_AS(SpaceSpec::l1(0), std::invalid_argument);
  SpaceSpec l1 = SpaceSpec::l1(2);
  CHECK_THROWS_AS(TruncatedVector({1.0}, l1), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedVector({1.0, std::nan("")}, l1), std::invalid_argument);
}

TEST_CASE("triangle inequality, homogeneity, truncation monotonicity") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uc(-3.0, 3.0);
  for (const SpaceSpec& s : {SpaceSpec::l1(12), SpaceSpec::l2(12), SpaceSpec::lp(3.0, 12),
                             SpaceSpec::sup(12)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const TruncatedVector u = rnd_vec(s, rng);
      const TruncatedVector v = rnd_vec(s, rng);
      const TruncatedVector w = rnd_vec(s, rng);
      CHECK(distance(u, w) <= distance(u, v) + distance(v, w) + 1e-12);
      const double c = uc(rng);
      CHECK(norm(scale(u, c)) == doctest::Approx(std::abs(c) * norm(u)).epsilon(1e-12));
      const int depth = 1 + static_cast<int>(trial % 12);
      CHECK(norm(project_depth(u, depth)) <= norm(u) + 1e-15);
    }
  }
}

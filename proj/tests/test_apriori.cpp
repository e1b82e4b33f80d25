#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lindyn/apriori.hpp"

using namespace lindyn;

namespace {

// Independent quantile oracle: bisection on the erfc-based two-sided tail.
double quantile_oracle(double sigma, double mass) {
  if (mass >= 1.0) return 0.0;
  auto tail = [sigma](double q) { return std::erfc(q / (sigma * std::sqrt(2.0))); };
  double lo = 0.0, hi = 40.0 * sigma;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tail(mid) > mass)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("construction guards and basic integrals") {
  CHECK_THROWS_AS(AprioriMeasure(0.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(AprioriMeasure(-1.0, 64), std::invalid_argument);
  AprioriMeasure nu(1.0, 64);
  CHECK(nu.integrate([](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(nu.integrate([](double r) { return r; })) < 1e-14);
  CHECK(nu.integrate([](double r) { return r * r; }) == doctest::Approx(1.0).epsilon(1e-12));
  AprioriMeasure nu2(0.5, 48);
  CHECK(nu2.integrate([](double r) { return r * r; }) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("sampling moments and determinism") {
  AprioriMeasure nu(1.0, 32);
  std::mt19937_64 rng(2024);
  const int n = 100000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = nu.sample(rng);
    s1 += r;
    s2 += r * r;
  }
  const double mean = s1 / n;
  const double var = s2 / n - mean * mean;
  CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 0.02);

  std::mt19937_64 ra(5), rb(5);
  for (int i = 0; i < 100; ++i) CHECK(nu.sample(ra) == nu.sample(rb));
}

TEST_CASE("tail quantile against the bisection oracle") {
  AprioriMeasure nu(1.3, 16);
  for (double mass : {0.5, 0.1, 0.01, 1e-4}) {
    CHECK(nu.two_sided_tail_quantile(mass) ==
          doctest::Approx(quantile_oracle(1.3, mass)).epsilon(1e-9));
  }
  CHECK(nu.two_sided_tail_quantile(1.0) == 0.0);
  CHECK(nu.two_sided_tail_quantile(2.5) == 0.0);
  CHECK_THROWS_AS(nu.two_sided_tail_quantile(0.0), std::invalid_argument);
}

TEST_CASE("strong adapted tails on geometric growth") {
  AprioriMeasure nu(1.0, 16);
  std::vector<double> dn;
  for (int n = 1; n <= 40; ++n) dn.push_back(std::ldexp(1.0, n));
  AdaptedTailsReport rep = nu.adapted_tails(0.1, dn, 40);
  CHECK(rep.verdict == "holds");
  CHECK(rep.summable);
  CHECK(rep.tail_sum < 0.1);
  CHECK(rep.tail_sum == doctest::Approx(0.05).epsilon(1e-10));
  // kappa_n = quantile(eps 2^{-(n+1)}) / d_n, cross-checked independently
  for (int n : {1, 5, 10}) {
    const double budget = 0.1 * std::ldexp(1.0, -(n + 1));
    const double expected = quantile_oracle(1.0, budget) / dn[static_cast<std::size_t>(n - 1)];
    CHECK(rep.kappa[static_cast<std::size_t>(n - 1)] ==
          doctest::Approx(expected).epsilon(1e-8));
  }
  // partial sums of kappa are nondecreasing and bounded
  for (std::size_t i = 1; i < rep.l1_partial.size(); ++i)
    CHECK(rep.l1_partial[i] >= rep.l1_partial[i - 1]);
  CHECK(rep.l1_tail_bound < 1e-9);
}

TEST_CASE("degenerate growth leaves the tails inconclusive") {
  AprioriMeasure nu(1.0, 16);
  std::vector<double> dn(40, 1.0);
  AdaptedTailsReport rep = nu.adapted_tails(0.1, dn, 40);
  CHECK_FALSE(rep.summable);
  CHECK(rep.verdict == "inconclusive");
  // kappa grows like the quantile itself
  CHECK(rep.kappa.back() > rep.kappa.front());
}

TEST_CASE("oversized epsilon budgets are trivially satisfied") {
  AprioriMeasure nu(1.0, 16);
  std::vector<double> dn;
  for (int n = 1; n <= 20; ++n) dn.push_back(std::ldexp(1.0, n));
  AdaptedTailsReport rep = nu.adapted_tails(8.0, dn, 20);
  CHECK(rep.kappa[0] == 0.0);  // budget 2 >= 1
  CHECK(rep.kappa[1] == 0.0);  // budget 1 >= 1
  CHECK(rep.kappa[2] > 0.0);
  CHECK(rep.verdict == "holds");
  CHECK(rep.tail_sum < 8.0);
}

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lindyn/quadrature.hpp"

namespace lindyn {

struct AdaptedTailsReport {
  double epsilon = 0.0;
  std::vector<double> kappa;         // kappa_n, n = 1..n_max
  std::vector<double> tail_masses;   // nu([-d_n kappa_n, d_n kappa_n]^c), equal to the budget
  double tail_sum = 0.0;             // sum of the tail masses (< epsilon by construction)
  std::vector<double> l1_partial;    // partial sums of kappa
  double l1_sum = 0.0;
  double l1_tail_bound = 0.0;        // geometric remainder bound when the ratios stabilize
  bool summable = false;
  std::string verdict;               // "holds" or "inconclusive"
};

// The a priori probability on the one-dimensional kernel: a centered
// Gaussian, represented by its Gauss-Hermite rule.
class AprioriMeasure {
 public:
  AprioriMeasure(double sigma, int quad_order = 64);

  double sigma() const { return sigma_; }
  int quad_order() const { return order_; }
  const QuadratureRule& rule() const { return rule_; }

  double density(double r) const;

  // Quadrature integral against the measure; exact for polynomials up to
  // degree 2*quad_order - 1.
  double integrate(const std::function<double(double)>& f) const;

  double sample(std::mt19937_64& rng) const;

  // Gaussian tail quantile: the q with nu([-q, q]^c) = mass (0 for mass >= 1).
  double two_sided_tail_quantile(double mass) const;

  // Builds kappa_n = q_n / d_n with per-level tail budget epsilon * 2^{-(n+1)}
  // and reports the l^1 behavior of (kappa_n).
  AdaptedTailsReport adapted_tails(double epsilon, const std::vector<double>& dn_table,
                                   int n_max) const;

 private:
  double sigma_;
  int order_;
  QuadratureRule rule_;
};

}  // namespace lindyn

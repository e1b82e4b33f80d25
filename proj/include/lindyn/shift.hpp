#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lindyn/space.hpp"

namespace lindyn {

// Weight table alpha_1..alpha_N of a weighted backward shift, together with
// the attained bounds of the truncated table.  Kernel of the n-th iterate is
// spanned by the first n basis vectors.
struct WeightSequence {
  std::vector<double> weights;
  double lower = 0.0;  // min over the table
  double upper = 0.0;  // max over the table
  bool eventually_regular = false;  // constant or periodic table: inf over k is exact

  static WeightSequence constant(double c, int n);
  // Alternating weights of the period-two construction: odd positions carry
  // c1, even positions carry c0, so that L^2 multiplies by c0*c1 throughout.
  static WeightSequence alternating(double c0, double c1, int n);
  static WeightSequence explicit_values(std::vector<double> values);

  int size() const { return static_cast<int>(weights.size()); }
  double at(int n) const { return weights[static_cast<std::size_t>(n - 1)]; }  // 1-based
};

struct ChaosReport {
  double alpha = 1.0;
  std::vector<double> terms;         // d_n^{-alpha}
  std::vector<double> partial_sums;  // running sums of the terms
  double tail_ratio = 0.0;           // stabilized ratio of consecutive terms
  double geometric_tail_bound = 0.0; // valid when converges
  bool converges = false;
  std::string verdict;               // "converges" or "inconclusive at n_max"
  double root_limit = 0.0;           // d_n^{-1/n} at n_max (reported, not asserted)
  double sup_inverse_beta = 0.0;     // sup_k sum_n (beta_k^n)^{-1} over the table
};

// The dynamics: x |-> (alpha_n x_{n+1})_n on a truncated sequence space.
// Immutable after construction; the d_n table is precomputed.
class ShiftOperator {
 public:
  ShiftOperator(WeightSequence w, SpaceSpec space);

  const SpaceSpec& space() const { return space_; }
  const WeightSequence& weights() const { return weights_; }
  int dim() const { return space_.dim; }
  double operator_norm() const { return weights_.upper; }  // sup of the weights

  // Result coordinate n is alpha_n * x_{n+1}; the last coordinate is zeroed.
  TruncatedVector apply(const TruncatedVector& x) const;
  TruncatedVector apply_n(const TruncatedVector& x, int n) const;

  // The preimage with kernel coordinate r: (r, y_1/alpha_1, ..., y_{N-1}/alpha_{N-1}).
  TruncatedVector preimage(const TruncatedVector& y, double r) const;

  // n-fold preimage; rvec is consumed front-to-back, rvec[0] becomes the
  // first coordinate of the result.
  TruncatedVector preimage_n(const TruncatedVector& y, const std::vector<double>& rvec) const;

  // beta_k^n = alpha_k * ... * alpha_{k+n-1}; requires k+n-1 <= N.
  double weight_product(int k, int n) const;

  // d_n = min over available k of beta_k^n; requires 1 <= n <= N-1.
  double dn(int n) const;
  const std::vector<double>& dn_table() const { return dn_table_; }
  bool dn_exact() const { return weights_.eventually_regular; }

  ChaosReport chaos_criterion(double alpha, int n_max) const;

  double birkhoff_sum(const std::function<double(const TruncatedVector&)>& f,
                      const TruncatedVector& x, int n) const;

  // The unique x with L^k x = x and first k coordinates equal to head,
  // built by x_{n+k} = x_n / beta_n^k.  Requires k <= N/2.
  TruncatedVector periodic_point(const std::vector<double>& head) const;

  // sup-of-norm residual of L^k x - x over the first N-k coordinates.
  double periodic_residual(const TruncatedVector& x, int k) const;

 private:
  WeightSequence weights_;
  SpaceSpec space_;
  std::vector<double> dn_table_;  // dn_table_[n-1] = d_n, n = 1..N-1
};

}  // namespace lindyn

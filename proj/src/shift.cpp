#include "lindyn/shift.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lindyn {

WeightSequence WeightSequence::constant(double c, int n) {
  if (c <= 0.0) throw std::invalid_argument("WeightSequence: weights must be positive");
  if (n < 1) throw std::invalid_argument("WeightSequence: need at least one weight");
  WeightSequence w;
  w.weights.assign(static_cast<std::size_t>(n), c);
  w.lower = w.upper = c;
  w.eventually_regular = true;
  return w;
}

WeightSequence WeightSequence::alternating(double c0, double c1, int n) {
  if (c0 <= 0.0 || c1 <= 0.0)
    throw std::invalid_argument("WeightSequence: weights must be positive");
  if (n < 1) throw std::invalid_argument("WeightSequence: need at least one weight");
  WeightSequence w;
  w.weights.resize(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    w.weights[static_cast<std::size_t>(i - 1)] = (i % 2 == 1) ? c1 : c0;
  w.lower = std::min(c0, c1);
  w.upper = std::max(c0, c1);
  w.eventually_regular = true;
  return w;
}

WeightSequence WeightSequence::explicit_values(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("WeightSequence: empty weight table");
  for (double a : values)
    if (!(a > 0.0) || !std::isfinite(a))
      throw std::invalid_argument("WeightSequence: weights must be positive and finite");
  WeightSequence w;
  w.weights = std::move(values);
  w.lower = *std::min_element(w.weights.begin(), w.weights.end());
  w.upper = *std::max_element(w.weights.begin(), w.weights.end());
  w.eventually_regular = false;
  return w;
}

ShiftOperator::ShiftOperator(WeightSequence w, SpaceSpec space)
    : weights_(std::move(w)), space_(space) {
  if (weights_.size() != space_.dim)
    throw std::invalid_argument("ShiftOperator: weight table must cover all N coordinates");
  // d_n over the truncated index range k = 1..N-n.
  const int n_max = space_.dim - 1;
  dn_table_.reserve(static_cast<std::size_t>(std::max(0, n_max)));
  for (int n = 1; n <= n_max; ++n) {
    double best = 0.0;
    for (int k = 1; k <= space_.dim - n; ++k) {
      double prod = 1.0;
      for (int j = 0; j < n; ++j) prod *= weights_.at(k + j);
      if (k == 1 || prod < best) best = prod;
    }
    dn_table_.push_back(best);
  }
}

TruncatedVector ShiftOperator::apply(const TruncatedVector& x) const {
  if (x.space != space_) throw std::invalid_argument("apply: space mismatch");
  const int n = space_.dim;
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = 1; i <= n - 1; ++i)
    out[static_cast<std::size_t>(i - 1)] = weights_.at(i) * x[i];  // x[i] is coordinate i+1
  return TruncatedVector(std::move(out), space_);
}

TruncatedVector ShiftOperator::apply_n(const TruncatedVector& x, int n) const {
  TruncatedVector y = x;
  for (int j = 0; j < n; ++j) y = apply(y);
  return y;
}

TruncatedVector ShiftOperator::preimage(const TruncatedVector& y, double r) const {
  if (y.space != space_) throw std::invalid_argument("preimage: space mismatch");
  const int n = space_.dim;
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  out[0] = r;
  for (int i = 2; i <= n; ++i)
    out[static_cast<std::size_t>(i - 1)] = y[i - 2] / weights_.at(i - 1);
  return TruncatedVector(std::move(out), space_);
}

TruncatedVector ShiftOperator::preimage_n(const TruncatedVector& y,
                                          const std::vector<double>& rvec) const {
  const int n = static_cast<int>(rvec.size());
  if (n > space_.dim) throw std::invalid_argument("preimage_n: depth exceeds truncation dim");
  TruncatedVector x = y;
  for (int i = n - 1; i >= 0; --i) x = preimage(x, rvec[static_cast<std::size_t>(i)]);
  return x;
}

double ShiftOperator::weight_product(int k, int n) const {
  if (k < 1 || n < 1 || k + n - 1 > space_.dim)
    throw std::invalid_argument("weight_product: index out of range");
  double prod = 1.0;
  for (int j = 0; j < n; ++j) prod *= weights_.at(k + j);
  return prod;
}

double ShiftOperator::dn(int n) const {
  if (n < 1 || n > space_.dim - 1)
    throw std::invalid_argument("dn: requires 1 <= n <= N-1");
  return dn_table_[static_cast<std::size_t>(n - 1)];
}

ChaosReport ShiftOperator::chaos_criterion(double alpha, int n_max) const {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("chaos_criterion: alpha must lie in (0, 1]");
  if (n_max < 1 || n_max > space_.dim - 1)
    throw std::invalid_argument("chaos_criterion: n_max out of range");
  ChaosReport rep;
  rep.alpha = alpha;
  double sum = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double term = std::pow(dn(n), -alpha);
    rep.terms.push_back(term);
    sum += term;
    rep.partial_sums.push_back(sum);
  }
  // Ratio test over the trailing terms: stable ratio below one gives a
  // geometric bound on the remainder.
  const int tail = std::min(5, n_max - 1);
  bool stable = tail >= 1;
  double rmax = 0.0;
  for (int i = n_max - tail; i < n_max; ++i) {
    const double r = rep.terms[static_cast<std::size_t>(i)] /
                     rep.terms[static_cast<std::size_t>(i - 1)];
    rmax = std::max(rmax, r);
  }
  // a ratio indistinguishable from one cannot certify a useful tail bound
  if (stable && rmax < 1.0 - 1e-6) {
    rep.converges = true;
    rep.tail_ratio = rmax;
    rep.geometric_tail_bound =
        rep.terms.back() * rmax / (1.0 - rmax);
    rep.verdict = "converges";
  } else {
    rep.converges = false;
    rep.tail_ratio = rmax;
    rep.geometric_tail_bound = 0.0;
    rep.verdict = "inconclusive at n_max";
  }
  rep.root_limit = std::pow(dn(n_max), -1.0 / n_max);
  double sup = 0.0;
  for (int k = 1; k <= space_.dim - 1; ++k) {
    double s = 0.0;
    double prod = 1.0;
    for (int n = 1; k + n - 1 <= space_.dim; ++n) {
      prod *= weights_.at(k + n - 1);
      s += 1.0 / prod;
    }
    sup = std::max(sup, s);
  }
  rep.sup_inverse_beta = sup;
  return rep;
}

double ShiftOperator::birkhoff_sum(const std::function<double(const TruncatedVector&)>& f,
                                   const TruncatedVector& x, int n) const {
  if (n < 1) throw std::invalid_argument("birkhoff_sum: n must be >= 1");
  double s = f(x);
  TruncatedVector y = x;
  for (int j = 1; j < n; ++j) {
    y = apply(y);
    s += f(y);
  }
  return s;
}

TruncatedVector ShiftOperator::periodic_point(const std::vector<double>& head) const {
  const int k = static_cast<int>(head.size());
  if (k < 1) throw std::invalid_argument("periodic_point: empty head");
  if (2 * k > space_.dim)
    throw std::invalid_argument("periodic_point: period too long for the truncation dim");
  const int n = space_.dim;
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = head[static_cast<std::size_t>(i)];
  for (int i = 1; i + k <= n; ++i)
    out[static_cast<std::size_t>(i + k - 1)] =
        out[static_cast<std::size_t>(i - 1)] / weight_product(i, k);
  return TruncatedVector(std::move(out), space_);
}

double ShiftOperator::periodic_residual(const TruncatedVector& x, int k) const {
  TruncatedVector y = apply_n(x, k);
  double m = 0.0;
  for (int i = 1; i <= space_.dim - k; ++i)
    m = std::max(m, std::abs(y[i - 1] - x[i - 1]));
  return m;
}

}  // namespace lindyn

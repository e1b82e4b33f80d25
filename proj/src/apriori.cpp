#include "lindyn/apriori.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <stdexcept>

namespace lindyn {

AprioriMeasure::AprioriMeasure(double sigma, int quad_order)
    : sigma_(sigma), order_(quad_order) {
  if (!(sigma > 0.0)) throw std::invalid_argument("AprioriMeasure: sigma must be > 0");
  if (quad_order < 1) throw std::invalid_argument("AprioriMeasure: quad_order must be >= 1");
  rule_ = gauss_hermite_gaussian(order_, sigma_);
}

double AprioriMeasure::density(double r) const {
  static const double kInvSqrt2Pi = 0.3989422804014327;
  const double z = r / sigma_;
  return kInvSqrt2Pi / sigma_ * std::exp(-0.5 * z * z);
}

double AprioriMeasure::integrate(const std::function<double(double)>& f) const {
  return rule_.integrate(f);
}

double AprioriMeasure::sample(std::mt19937_64& rng) const {
  std::normal_distribution<double> dist(0.0, sigma_);
  return dist(rng);
}

double AprioriMeasure::two_sided_tail_quantile(double mass) const {
  if (!(mass > 0.0)) throw std::invalid_argument("tail quantile: mass must be > 0");
  if (mass >= 1.0) return 0.0;
  boost::math::normal_distribution<double> dist(0.0, sigma_);
  return boost::math::quantile(dist, 1.0 - 0.5 * mass);
}

AdaptedTailsReport AprioriMeasure::adapted_tails(double epsilon,
                                                 const std::vector<double>& dn_table,
                                                 int n_max) const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("adapted_tails: epsilon must be > 0");
  if (n_max < 1 || n_max > static_cast<int>(dn_table.size()))
    throw std::invalid_argument("adapted_tails: n_max out of range of the d_n table");
  AdaptedTailsReport rep;
  rep.epsilon = epsilon;
  double tail_sum = 0.0;
  double l1 = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double budget = epsilon * std::ldexp(1.0, -(n + 1));
    const double q = two_sided_tail_quantile(budget);
    const double kappa = q / dn_table[static_cast<std::size_t>(n - 1)];
    rep.kappa.push_back(kappa);
    // kappa = 0 leaves the whole mass outside the (degenerate) interval,
    // which is still within a budget >= 1
    rep.tail_masses.push_back(budget >= 1.0 ? 1.0 : budget);
    tail_sum += rep.tail_masses.back();
    l1 += kappa;
    rep.l1_partial.push_back(l1);
  }
  rep.tail_sum = tail_sum;
  rep.l1_sum = l1;
  // Summability of kappa: trailing ratio test (kappa ~ sqrt(n)/d_n, so a
  // geometrically growing d_n drives the ratio below one).
  const int tail = std::min(5, n_max - 1);
  double rmax = 0.0;
  bool have_ratio = tail >= 1;
  for (int i = n_max - tail; i < n_max && have_ratio; ++i) {
    const double a = rep.kappa[static_cast<std::size_t>(i - 1)];
    const double b = rep.kappa[static_cast<std::size_t>(i)];
    if (a == 0.0) {
      have_ratio = false;
      break;
    }
    rmax = std::max(rmax, b / a);
  }
  if (!have_ratio) {
    // zero kappas mean empty tail requirements; trivially summable so far
    rep.summable = true;
    rep.l1_tail_bound = 0.0;
    rep.verdict = "holds";
  } else if (rmax < 1.0) {
    rep.summable = true;
    rep.l1_tail_bound = rep.kappa.back() * rmax / (1.0 - rmax);
    rep.verdict = "holds";
  } else {
    rep.summable = false;
    rep.l1_tail_bound = 0.0;
    rep.verdict = "inconclusive";
  }
  return rep;
}

}  // namespace lindyn

#include "lindyn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lindyn {

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) {
    const double v = f(nodes[static_cast<std::size_t>(i)]);
    if (!std::isfinite(v))
      throw std::runtime_error("quadrature: integrand not finite at node " +
                               std::to_string(nodes[static_cast<std::size_t>(i)]));
    s += weights[static_cast<std::size_t>(i)] * v;
  }
  return s;
}

namespace {

// Roots and weights of the physicists' Hermite polynomial H_n via Newton
// iteration on the orthonormal recurrence.  Classic scheme: start from an
// asymptotic guess for the largest root, walk inwards.
void hermite_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  constexpr double kPim4 = 0.7511255444649425;  // pi^{-1/4}
  constexpr int kMaxIter = 64;
  constexpr double kEps = 1e-15;
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[static_cast<std::size_t>(i - 2)];
    }
    double pp = 0.0;
    for (int it = 0; it < kMaxIter; ++it) {
      double p1 = kPim4;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= kEps * std::max(1.0, std::abs(z))) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    x[static_cast<std::size_t>(n - 1 - i)] = -z;
    w[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
    w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
  if (n % 2 == 1) x[static_cast<std::size_t>(m - 1)] = 0.0;
}

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr double kGl8X[4] = {0.1834346424956498, 0.5255324099163290,
                             0.7966664774136267, 0.9602898564975363};
constexpr double kGl8W[4] = {0.3626837833783620, 0.3137066458778873,
                             0.2223810344533745, 0.1012285362903763};

}  // namespace

QuadratureRule gauss_hermite_gaussian(int order, double sigma) {
  if (order < 1) throw std::invalid_argument("gauss_hermite_gaussian: order must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("gauss_hermite_gaussian: sigma must be > 0");
  std::vector<double> x, w;
  hermite_rule(order, x, w);
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const double s = std::sqrt(2.0) * sigma;
  double total = 0.0;
  for (int i = 0; i < order; ++i) {
    // ascending node order
    rule.nodes[static_cast<std::size_t>(i)] = s * x[static_cast<std::size_t>(order - 1 - i)];
    rule.weights[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(order - 1 - i)];
    total += w[static_cast<std::size_t>(order - 1 - i)];
  }
  for (double& wi : rule.weights) wi /= total;  // probability normalization
  return rule;
}

QuadratureRule composite_legendre_density(const std::function<double(double)>& density,
                                          double radius, int panels, int points_per_panel) {
  if (!(radius > 0.0)) throw std::invalid_argument("composite rule: radius must be > 0");
  if (panels < 1) throw std::invalid_argument("composite rule: need at least one panel");
  if (points_per_panel != 8)
    throw std::invalid_argument("composite rule: only the 8-point panel rule is wired up");
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels * points_per_panel));
  rule.weights.reserve(static_cast<std::size_t>(panels * points_per_panel));
  const double h = 2.0 * radius / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = -radius + p * h;
    const double mid = a + 0.5 * h;
    for (int j = 0; j < 4; ++j) {
      for (int sgn : {-1, +1}) {
        const double t = mid + sgn * 0.5 * h * kGl8X[j];
        const double wt = 0.5 * h * kGl8W[j] * density(t);
        rule.nodes.push_back(t);
        rule.weights.push_back(wt);
        total += wt;
      }
    }
  }
  if (!(total > 0.0))
    throw std::runtime_error("composite rule: density mass vanished on the window");
  for (double& wi : rule.weights) wi /= total;
  // ascending node order, weights carried along
  std::vector<int> idx(rule.nodes.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return rule.nodes[static_cast<std::size_t>(a)] < rule.nodes[static_cast<std::size_t>(b)];
  });
  QuadratureRule sorted;
  sorted.nodes.reserve(idx.size());
  sorted.weights.reserve(idx.size());
  for (int i : idx) {
    sorted.nodes.push_back(rule.nodes[static_cast<std::size_t>(i)]);
    sorted.weights.push_back(rule.weights[static_cast<std::size_t>(i)]);
  }
  return sorted;
}

}  // namespace lindyn

#pragma once

#include <functional>
#include <vector>

namespace lindyn {

// Nodes and weights of a quadrature rule for a probability measure on the
// real line: integral f d(measure) ~ sum_i weights[i] * f(nodes[i]).
// Weights are normalized to sum to one.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
  double integrate(const std::function<double(double)>& f) const;
};

// Gauss-Hermite rule of the given order for the centered Gaussian with
// standard deviation sigma.  Exact for polynomials of degree <= 2*order-1.
QuadratureRule gauss_hermite_gaussian(int order, double sigma);

// Composite Gauss-Legendre rule against an explicit density on [-radius,
// radius], with the stated number of panels.  Used when the integrand varies
// on scales the Gauss-Hermite rule cannot resolve.
QuadratureRule composite_legendre_density(const std::function<double(double)>& density,
                                          double radius, int panels, int points_per_panel = 8);

}  // namespace lindyn

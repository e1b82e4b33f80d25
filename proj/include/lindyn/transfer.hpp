#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <vector>

#include "lindyn/apriori.hpp"
#include "lindyn/grid.hpp"
#include "lindyn/potential.hpp"
#include "lindyn/quadrature.hpp"
#include "lindyn/shift.hpp"

namespace lindyn {

// Layout of the cylinder-function discretization plus the quadrature rule
// used along preimage fibers.  By default fibers are integrated with the
// a priori Gauss-Hermite rule; a composite rule takes over when the kernel
// e^{A} varies on scales the Hermite nodes cannot see (large inverse
// temperatures).
struct GridSpec {
  int depth = 1;
  double radius = 4.0;
  int resolution = 33;
  std::optional<QuadratureRule> fiber;  // overrides the a priori rule when set

  static double default_radius(const AprioriMeasure& nu, const ShiftOperator& op);
  const QuadratureRule& fiber_rule(const AprioriMeasure& nu) const {
    return fiber ? *fiber : nu.rule();
  }
};

// Fiber rule resolving a kernel with Lipschitz scale `sharpness` (for the
// potential t*A this is roughly t times the Hoelder constant of A).
QuadratureRule refined_fiber_rule(const AprioriMeasure& nu, double sharpness,
                                  double window_radius = 0.0);

struct SpectralData {
  double lambda = 1.0;
  FunctionGrid psi;        // sup-normalized, strictly positive
  double residual = 0.0;   // sup norm of (L psi - lambda psi) on the grid
  int iterations = 0;
  double tolerance = 0.0;
  GridSpec grid;
  std::shared_ptr<const ShiftOperator> op;
  std::shared_ptr<const AprioriMeasure> nu;
};

// One sweep of the Ruelle operator over the grid: at each grid point the
// preimage fiber is integrated against the rule, evaluating phi by clamped
// interpolation.
FunctionGrid transfer_apply(const Potential& a, const FunctionGrid& phi,
                            const ShiftOperator& op, const AprioriMeasure& nu,
                            const QuadratureRule& fiber);

// Pointwise value of (L_a u)(x) for an arbitrary evaluator u.
double transfer_apply_point(const Potential& a,
                            const std::function<double(const TruncatedVector&)>& u,
                            const TruncatedVector& x, const ShiftOperator& op,
                            const QuadratureRule& fiber);

struct PowerIterationOptions {
  double tol = 1e-9;
  int max_iter = 500;
  double residual_tol = 1e-6;
};

// Leading eigenpair by sup-normalized power iteration from phi == 1.
SpectralData power_iteration(const Potential& a, std::shared_ptr<const ShiftOperator> op,
                             std::shared_ptr<const AprioriMeasure> nu, const GridSpec& grid,
                             const PowerIterationOptions& opts = {});

// The normalized potential A + log psi - log(psi o L) - log lambda.  Queries
// of psi outside the grid box are clamped; the clamp counter is shared with
// the caller for diagnostics.
Potential normalized_potential(const Potential& a, const SpectralData& spectral,
                               std::shared_ptr<std::atomic<long>> clamp_counter = nullptr);

// max |L_abar(1)(x) - 1| over the sample points.
double check_normalized(const Potential& abar, const ShiftOperator& op,
                        const QuadratureRule& fiber,
                        const std::vector<TruncatedVector>& points);

}  // namespace lindyn

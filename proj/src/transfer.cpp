#include "lindyn/transfer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lindyn {

double GridSpec::default_radius(const AprioriMeasure& nu, const ShiftOperator& op) {
  return 4.0 * nu.sigma() * std::max(1.0, 1.0 / op.weights().lower);
}

QuadratureRule refined_fiber_rule(const AprioriMeasure& nu, double sharpness,
                                  double window_radius) {
  const double radius = window_radius > 0.0 ? window_radius : 8.0 * nu.sigma();
  const double width = std::min(0.5 * nu.sigma(), 0.5 / std::max(1.0, sharpness));
  const int panels = std::max(32, static_cast<int>(std::ceil(2.0 * radius / width)));
  return composite_legendre_density([&nu](double r) { return nu.density(r); }, radius,
                                    panels);
}

namespace {

// Preimage of a grid point (zero-extended) with kernel coordinate r; writes
// into `out` to avoid reallocation in hot loops.
void fiber_point(const ShiftOperator& op, const std::vector<double>& grid_point, double r,
                 std::vector<double>& out) {
  const int n = op.dim();
  out.assign(static_cast<std::size_t>(n), 0.0);
  out[0] = r;
  const int m = static_cast<int>(grid_point.size());
  for (int i = 2; i <= std::min(n, m + 1); ++i)
    out[static_cast<std::size_t>(i - 1)] =
        grid_point[static_cast<std::size_t>(i - 2)] / op.weights().at(i - 1);
}

}  // namespace

FunctionGrid transfer_apply(const Potential& a, const FunctionGrid& phi,
                            const ShiftOperator& op, const AprioriMeasure&,
                            const QuadratureRule& fiber) {
  if (phi.depth() > op.dim() - 1)
    throw std::invalid_argument("transfer_apply: grid depth must stay below N");
  FunctionGrid out = phi;
  std::vector<double> pre;
  const SpaceSpec& space = op.space();
  for (std::size_t g = 0; g < out.size(); ++g) {
    const std::vector<double> x = phi.point(g);
    double acc = 0.0;
    for (int i = 0; i < fiber.size(); ++i) {
      fiber_point(op, x, fiber.nodes[static_cast<std::size_t>(i)], pre);
      const double av = a(TruncatedVector(pre, space));
      if (av > 700.0)
        throw std::runtime_error(
            "transfer_apply: e^A overflows at a fiber of grid point index " +
            std::to_string(g) + " (potential must be bounded above)");
      acc += fiber.weights[static_cast<std::size_t>(i)] * std::exp(av) * phi.interpolate(pre);
    }
    out.values()[g] = acc;
  }
  return out;
}

double transfer_apply_point(const Potential& a,
                            const std::function<double(const TruncatedVector&)>& u,
                            const TruncatedVector& x, const ShiftOperator& op,
                            const QuadratureRule& fiber) {
  double acc = 0.0;
  for (int i = 0; i < fiber.size(); ++i) {
    const TruncatedVector pre = op.preimage(x, fiber.nodes[static_cast<std::size_t>(i)]);
    const double av = a(pre);
    if (av > 700.0)
      throw std::runtime_error("transfer_apply_point: e^A overflows along the fiber");
    acc += fiber.weights[static_cast<std::size_t>(i)] * std::exp(av) * u(pre);
  }
  return acc;
}

SpectralData power_iteration(const Potential& a, std::shared_ptr<const ShiftOperator> op,
                             std::shared_ptr<const AprioriMeasure> nu, const GridSpec& grid,
                             const PowerIterationOptions& opts) {
  const QuadratureRule& fiber = grid.fiber_rule(*nu);
  FunctionGrid phi(grid.depth, grid.radius, grid.resolution, 1.0);
  double lambda = 0.0;
  double prev = -1.0;
  int it = 0;
  bool converged = false;
  for (; it < opts.max_iter; ++it) {
    FunctionGrid next = transfer_apply(a, phi, *op, *nu, fiber);
    const double s = next.sup_norm();
    if (!(s > 0.0)) throw std::runtime_error("power_iteration: iterate collapsed to zero");
    for (double& v : next.values()) v /= s;
    lambda = s;
    phi = std::move(next);
    if (it >= 2 && std::abs(lambda - prev) <= opts.tol * std::max(1.0, std::abs(lambda))) {
      converged = true;
      ++it;
      break;
    }
    prev = lambda;
  }
  // residual on the grid
  FunctionGrid image = transfer_apply(a, phi, *op, *nu, fiber);
  double residual = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i)
    residual = std::max(residual, std::abs(image.values()[i] - lambda * phi.values()[i]));
  if (!converged)
    throw std::runtime_error("power_iteration: no convergence after " +
                             std::to_string(opts.max_iter) +
                             " iterations (residual " + std::to_string(residual) + ")");
  if (!(phi.min_value() > 0.0))
    throw std::runtime_error("power_iteration: eigenfunction lost strict positivity");

  SpectralData sd;
  sd.lambda = lambda;
  sd.psi = std::move(phi);
  sd.residual = residual;
  sd.iterations = it;
  sd.tolerance = opts.tol;
  sd.grid = grid;
  sd.op = std::move(op);
  sd.nu = std::move(nu);
  if (sd.residual > opts.residual_tol)
    throw std::runtime_error("power_iteration: residual " + std::to_string(sd.residual) +
                             " above the configured tolerance");
  return sd;
}

Potential normalized_potential(const Potential& a, const SpectralData& spectral,
                               std::shared_ptr<std::atomic<long>> clamp_counter) {
  if (!spectral.op) throw std::invalid_argument("normalized_potential: missing operator");
  const double log_lambda = std::log(spectral.lambda);
  auto psi = std::make_shared<FunctionGrid>(spectral.psi);
  auto op = spectral.op;
  auto inner = a.eval;
  const double box = spectral.grid.radius;
  Potential abar;
  abar.name = a.name + "_normalized";
  abar.holder_alpha = a.holder_alpha;
  abar.eval = [inner, psi, op, log_lambda, box, clamp_counter](const TruncatedVector& x) {
    if (clamp_counter) {
      for (int d = 0; d < psi->depth(); ++d)
        if (std::abs(x[d]) > box) {
          ++*clamp_counter;
          break;
        }
    }
    const double lp = std::log(psi->interpolate(x));
    const TruncatedVector lx = op->apply(x);
    const double lpl = std::log(psi->interpolate(lx));
    return inner(x) + lp - lpl - log_lambda;
  };
  return abar;
}

double check_normalized(const Potential& abar, const ShiftOperator& op,
                        const QuadratureRule& fiber,
                        const std::vector<TruncatedVector>& points) {
  double worst = 0.0;
  for (const TruncatedVector& x : points) {
    const double v = transfer_apply_point(
        abar, [](const TruncatedVector&) { return 1.0; }, x, op, fiber);
    worst = std::max(worst, std::abs(v - 1.0));
  }
  return worst;
}

}  // namespace lindyn

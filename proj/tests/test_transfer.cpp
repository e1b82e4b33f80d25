#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

#include "lindyn/transfer.hpp"

using namespace lindyn;

namespace {

constexpr int kDim = 64;

struct Setup {
  std::shared_ptr<ShiftOperator> op;
  std::shared_ptr<AprioriMeasure> nu;
  GridSpec grid;
};

Setup make_setup(int depth = 1, int resolution = 33) {
  Setup s;
  s.op = std::make_shared<ShiftOperator>(WeightSequence::constant(2.0, kDim),
                                         SpaceSpec::l1(kDim));
  s.nu = std::make_shared<AprioriMeasure>(1.0, 64);
  s.grid.depth = depth;
  s.grid.resolution = resolution;
  s.grid.radius = 4.0;
  return s;
}

// Dense matrix of the discretized depth-one operator: column g' is the image
// of the g'-th hat function of the grid.
Eigen::MatrixXd dense_operator(const Potential& a, const Setup& s) {
  const QuadratureRule& fiber = s.nu->rule();
  const int g = s.grid.resolution;
  Eigen::MatrixXd m(g, g);
  FunctionGrid basis(1, s.grid.radius, g, 0.0);
  for (int col = 0; col < g; ++col) {
    for (double& v : basis.values()) v = 0.0;
    basis.values()[static_cast<std::size_t>(col)] = 1.0;
    FunctionGrid img = transfer_apply(a, basis, *s.op, *s.nu, fiber);
    for (int row = 0; row < g; ++row)
      m(row, col) = img.values()[static_cast<std::size_t>(row)];
  }
  return m;
}

}  // namespace

TEST_CASE("zero and constant potentials are exact spectra") {
  Setup s = make_setup();
  FunctionGrid one(1, s.grid.radius, s.grid.resolution, 1.0);
  FunctionGrid img = transfer_apply(zero_potential(), one, *s.op, *s.nu, s.nu->rule());
  for (double v : img.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  SpectralData sd = power_iteration(zero_potential(), s.op, s.nu, s.grid);
  CHECK(std::abs(sd.lambda - 1.0) < 1e-12);
  CHECK(sd.psi.min_value() > 1.0 - 1e-12);
  CHECK(sd.psi.max_value() < 1.0 + 1e-12);
  CHECK(sd.residual < 1e-12);

  const double kappa = 0.37;
  SpectralData sk = power_iteration(constant_potential(kappa), s.op, s.nu, s.grid);
  CHECK(sk.lambda == doctest::Approx(std::exp(kappa)).epsilon(1e-12));
  CHECK(sk.psi.min_value() > 1.0 - 1e-12);
}

TEST_CASE("quadratic well matches the closed-form eigenvalue and the dense solver") {
  Setup s = make_setup();
  const Potential a = quadratic_well(1, 1.0);
  SpectralData sd = power_iteration(a, s.op, s.nu, s.grid);
  // lambda = integral of e^{-r^2} against the unit Gaussian = 1/sqrt(3)
  CHECK(sd.lambda == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));

  Eigen::MatrixXd m = dense_operator(a, s);
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  double dominant = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    dominant = std::max(dominant, std::abs(es.eigenvalues()(i).real()));
  CHECK(sd.lambda == doctest::Approx(dominant).epsilon(1e-8));
}

TEST_CASE("grid application agrees with a from-scratch kernel sum") {
  // depth-one rebuild with its own interpolation: the image at any grid point
  // is sum_i w_i e^{-u_i^2} phi(u_i), clamped linear interpolation in u
  const int g = 17;
  Setup s = make_setup(1, g);
  const Potential a = quadratic_well(1, 1.0);
  const QuadratureRule& rule = s.nu->rule();
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  FunctionGrid phi(1, s.grid.radius, g, 1.0);
  for (double& v : phi.values()) v = u(rng);

  auto interp1d = [&](double t) {
    const double R = s.grid.radius;
    const double h = 2.0 * R / (g - 1);
    double c = std::clamp(t, -R, R);
    int lo = std::clamp(static_cast<int>(std::floor((c + R) / h)), 0, g - 2);
    const double frac = std::clamp((c + R) / h - lo, 0.0, 1.0);
    return (1.0 - frac) * phi.values()[static_cast<std::size_t>(lo)] +
           frac * phi.values()[static_cast<std::size_t>(lo + 1)];
  };
  double expected = 0.0;  // constant across grid points for this potential
  for (int i = 0; i < rule.size(); ++i) {
    const double r = rule.nodes[static_cast<std::size_t>(i)];
    expected += rule.weights[static_cast<std::size_t>(i)] * std::exp(-r * r) * interp1d(r);
  }
  FunctionGrid img = transfer_apply(a, phi, *s.op, *s.nu, rule);
  for (int i = 0; i < g; ++i)
    CHECK(img.values()[static_cast<std::size_t>(i)] ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("linearity, positivity and monotonicity of the grid operator") {
  Setup s = make_setup(1, 9);
  const Potential a = quadratic_well(1, 0.5);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.1, 1.5);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    FunctionGrid f(1, s.grid.radius, 9, 1.0);
    FunctionGrid g(1, s.grid.radius, 9, 1.0);
    for (double& v : f.values()) v = u(rng);
    for (double& v : g.values()) v = u(rng);
    const double ca = coef(rng);
    const double cb = coef(rng);
    FunctionGrid combo = f;
    for (std::size_t i = 0; i < combo.values().size(); ++i)
      combo.values()[i] = ca * f.values()[i] + cb * g.values()[i];
    FunctionGrid img_combo = transfer_apply(a, combo, *s.op, *s.nu, s.nu->rule());
    FunctionGrid img_f = transfer_apply(a, f, *s.op, *s.nu, s.nu->rule());
    FunctionGrid img_g = transfer_apply(a, g, *s.op, *s.nu, s.nu->rule());
    for (std::size_t i = 0; i < combo.values().size(); ++i) {
      CHECK(img_combo.values()[i] ==
            doctest::Approx(ca * img_f.values()[i] + cb * img_g.values()[i]).epsilon(1e-11));
      CHECK(img_f.values()[i] > 0.0);
    }
    // pointwise domination is preserved
    FunctionGrid upper = f;
    for (std::size_t i = 0; i < upper.values().size(); ++i)
      upper.values()[i] = f.values()[i] + 0.5;
    FunctionGrid img_upper = transfer_apply(a, upper, *s.op, *s.nu, s.nu->rule());
    for (std::size_t i = 0; i < upper.values().size(); ++i)
      CHECK(img_upper.values()[i] >= img_f.values()[i]);
  }
}

TEST_CASE("eigenvalue scaling under constant shifts") {
  Setup s = make_setup();
  const Potential a = quadratic_well(1, 1.0);
  SpectralData base = power_iteration(a, s.op, s.nu, s.grid);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    const double kappa = u(rng);
    SpectralData shifted = power_iteration(shift_potential(a, kappa), s.op, s.nu, s.grid);
    CHECK(shifted.lambda ==
          doctest::Approx(std::exp(kappa) * base.lambda).epsilon(1e-10));
  }
}

TEST_CASE("eigenvalue settles as the grid refines") {
  // depth-two potential seen through depth-one grids: the interpolation error
  // of the eigenfunction shrinks with the mesh
  Potential a;
  a.name = "aniso";
  a.eval = [](const TruncatedVector& x) { return -x[0] * x[0] - 0.5 * x[1] * x[1]; };
  a.holder_alpha = 1.0;
  a.effective_depth = 2;
  std::vector<double> lambdas;
  for (int g : {16, 32, 64}) {
    Setup s = make_setup(1, g);
    lambdas.push_back(power_iteration(a, s.op, s.nu, s.grid).lambda);
  }
  CHECK(std::abs(lambdas[2] - lambdas[1]) <= std::abs(lambdas[1] - lambdas[0]) + 1e-12);
}

TEST_CASE("cylinder depth drops by one under the operator") {
  Setup s = make_setup(2, 9);
  Potential a;
  a.name = "depth2";
  a.eval = [](const TruncatedVector& x) { return -x[0] * x[0] - std::abs(x[1]); };
  a.holder_alpha = 1.0;
  a.effective_depth = 2;
  FunctionGrid phi = FunctionGrid::from_function(
      2, s.grid.radius, 9, [](const std::vector<double>& p) {
        return 1.0 + 0.1 * std::cos(p[0]) + 0.05 * p[1] * p[1] / 20.0;
      });
  FunctionGrid img = transfer_apply(a, phi, *s.op, *s.nu, s.nu->rule());
  // output values must be constant along the second axis
  const int g = 9;
  for (int i = 0; i < g; ++i) {
    const double ref = img.values()[static_cast<std::size_t>(i * g)];
    for (int j = 1; j < g; ++j)
      CHECK(img.values()[static_cast<std::size_t>(i * g + j)] ==
            doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("normalization closes the loop") {
  Setup s = make_setup();
  std::vector<TruncatedVector> probes;
  std::mt19937_64 rng(37);
  for (int i = 0; i < 12; ++i)
    probes.push_back(random_decaying_vector(s.op->space(), 1.5, 0.5, rng));

  SpectralData zero_sd = power_iteration(zero_potential(), s.op, s.nu, s.grid);
  Potential zero_bar = normalized_potential(zero_potential(), zero_sd);
  CHECK(check_normalized(zero_bar, *s.op, s.nu->rule(), probes) < 1e-12);

  SpectralData const_sd = power_iteration(constant_potential(0.8), s.op, s.nu, s.grid);
  Potential const_bar = normalized_potential(constant_potential(0.8), const_sd);
  CHECK(check_normalized(const_bar, *s.op, s.nu->rule(), probes) < 1e-12);

  const Potential a = quadratic_well(1, 1.0);
  SpectralData sd = power_iteration(a, s.op, s.nu, s.grid);
  auto clamp = std::make_shared<std::atomic<long>>(0);
  Potential abar = normalized_potential(a, sd, clamp);
  // interior grid probes
  std::vector<TruncatedVector> interior;
  for (int i = 0; i < 9; ++i) {
    std::vector<double> c(static_cast<std::size_t>(kDim), 0.0);
    c[0] = -2.0 + 0.5 * i;
    interior.emplace_back(std::move(c), s.op->space());
  }
  // the eigenfunction of a depth-one potential is grid-exact, so the defect
  // collapses to the iteration tolerance
  CHECK(check_normalized(abar, *s.op, s.nu->rule(), interior) < 10.0 * sd.tolerance);
  // the Hermite nodes reach past the grid box, so clamped queries are expected
  CHECK(*clamp > 0);

  // direct far queries raise the counter by exactly one
  const long before = clamp->load();
  std::vector<double> far(static_cast<std::size_t>(kDim), 0.0);
  far[0] = 10.0;
  abar(TruncatedVector(std::move(far), s.op->space()));
  CHECK(*clamp == before + 1);
}

TEST_CASE("power iteration failure modes") {
  Setup s = make_setup();
  Potential a;
  a.name = "needs_iterations";
  a.eval = [](const TruncatedVector& x) { return -x[0] * x[0] - 0.5 * x[1] * x[1]; };
  a.holder_alpha = 1.0;
  PowerIterationOptions opts;
  opts.max_iter = 1;
  CHECK_THROWS_AS(power_iteration(a, s.op, s.nu, s.grid, opts), std::runtime_error);

  // e^A overflow carries the offending grid point
  Potential bad;
  bad.name = "unbounded_above";
  bad.eval = [](const TruncatedVector& x) { return 60.0 * x[0] * x[0]; };
  bad.holder_alpha = 1.0;
  CHECK_THROWS_AS(power_iteration(bad, s.op, s.nu, s.grid), std::runtime_error);
}

TEST_CASE("refined fiber rules keep mass one and sharpen with the scale") {
  Setup s = make_setup();
  QuadratureRule coarse = refined_fiber_rule(*s.nu, 1.0);
  QuadratureRule fine = refined_fiber_rule(*s.nu, 50.0);
  CHECK(fine.size() > coarse.size());
  double wsum = 0.0;
  for (double w : fine.weights) wsum += w;
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
}

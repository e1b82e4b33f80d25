#include "lindyn/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lindyn {

Modulator Modulator::exp_decay() {
  return Modulator{"exp", [](double s) { return std::exp(-s); }};
}

Modulator Modulator::hat() {
  return Modulator{"hat", [](double s) { return std::max(0.0, 1.0 - s); }};
}

Modulator Modulator::from_name(const std::string& n) {
  if (n == "exp") return exp_decay();
  if (n == "hat") return hat();
  throw std::invalid_argument("Modulator: unknown kind '" + n + "'");
}

Potential zero_potential() {
  Potential a;
  a.name = "zero";
  a.eval = [](const TruncatedVector&) { return 0.0; };
  a.holder_alpha = 1.0;
  a.holder_constant = 0.0;
  a.effective_depth = 1;
  a.shell_sup = [](int, int) { return 0.0; };
  return a;
}

Potential constant_potential(double kappa) {
  Potential a;
  a.name = "constant";
  a.eval = [kappa](const TruncatedVector&) { return kappa; };
  a.holder_alpha = 1.0;
  a.holder_constant = 0.0;
  a.effective_depth = 1;
  a.shell_sup = [kappa](int, int) { return kappa; };
  return a;
}

namespace {

// Distance from the value c to the shell {u : j <= |u| <= j+1}.
double shell_gap(double c, int j) {
  const double a = std::abs(c);
  if (a < j) return j - a;
  if (a > j + 1) return a - (j + 1);
  return 0.0;
}

}  // namespace

Potential neg_dist(const TruncatedVector& v) {
  Potential a;
  a.name = "neg_dist";
  a.eval = [v](const TruncatedVector& x) { return -distance(x, v); };
  a.holder_alpha = 1.0;
  a.holder_constant = 1.0;  // reverse triangle inequality
  // sup over the shell is attained by moving only coordinate i of v
  a.shell_sup = [v](int i, int j) { return -shell_gap(v[i - 1], j); };
  return a;
}

Potential neg_dist_projected(const TruncatedVector& v, int depth) {
  const TruncatedVector vp = project_depth(v, depth);
  Potential a;
  a.name = "neg_dist_projected";
  a.eval = [vp, depth](const TruncatedVector& x) {
    return -distance(project_depth(x, depth), vp);
  };
  a.holder_alpha = 1.0;
  a.holder_constant = 1.0;
  a.effective_depth = depth;
  a.shell_sup = [vp, depth](int i, int j) {
    if (i > depth) return 0.0;  // shell coordinate invisible to the projection
    return -shell_gap(vp[i - 1], j);
  };
  return a;
}

Potential modulated_dist(const TruncatedVector& v, const Modulator& r) {
  Potential a;
  a.name = "modulated_dist_" + r.name;
  auto rf = r.value;
  a.eval = [v, rf](const TruncatedVector& x) {
    const double d = distance(x, v);
    return -rf(d) * d;
  };
  a.holder_alpha = 1.0;
  a.holder_constant = 2.0;  // product rule: |r| <= 1 plus Lip(r) * s r-range bound
  return a;
}

Potential two_point(const TruncatedVector& v, const TruncatedVector& w, const Modulator& r) {
  Potential a;
  a.name = "two_point_" + r.name;
  auto rf = r.value;
  a.eval = [v, w, rf](const TruncatedVector& x) {
    const double dv = distance(x, v);
    const double dw = distance(x, w);
    return -(rf(dv) * dv + rf(dw) * dw);
  };
  a.holder_alpha = 1.0;
  a.holder_constant = 4.0;
  return a;
}

double distance_to_even_zero_subspace(const TruncatedVector& x) {
  // nearest point of W matches the odd coordinates; the gap is the norm of
  // the even-coordinate part
  std::vector<double> even(x.coords.size(), 0.0);
  for (std::size_t i = 1; i < x.coords.size(); i += 2) even[i] = x.coords[i];
  return norm(TruncatedVector(std::move(even), x.space));
}

Potential subspace_dist_even_zero(const SpaceSpec&, const Modulator& r) {
  Potential a;
  a.name = "subspace_dist_" + r.name;
  auto rf = r.value;
  a.eval = [rf](const TruncatedVector& x) {
    const double d = distance_to_even_zero_subspace(x);
    return -rf(d) * d;
  };
  a.holder_alpha = 1.0;
  a.holder_constant = 2.0;
  return a;
}

Potential quadratic_well(int coord, double weight, int depth_hint) {
  if (coord < 1) throw std::invalid_argument("quadratic_well: coord must be >= 1");
  Potential a;
  a.name = "quadratic_well";
  a.eval = [coord, weight](const TruncatedVector& x) {
    const double c = x[coord - 1];
    return -weight * c * c;
  };
  a.holder_alpha = 1.0;
  a.effective_depth = depth_hint > 0 ? depth_hint : coord;
  a.shell_sup = [coord, weight](int i, int j) {
    if (i != coord) return 0.0;
    return -weight * static_cast<double>(j) * static_cast<double>(j);
  };
  return a;
}

Potential power_well(int coord, double exponent) {
  if (coord < 1) throw std::invalid_argument("power_well: coord must be >= 1");
  if (!(exponent > 0.0)) throw std::invalid_argument("power_well: exponent must be > 0");
  Potential a;
  a.name = "power_well";
  a.eval = [coord, exponent](const TruncatedVector& x) {
    return -std::pow(std::abs(x[coord - 1]), exponent);
  };
  a.holder_alpha = std::min(1.0, exponent);
  a.effective_depth = coord;
  a.shell_sup = [coord, exponent](int i, int j) {
    if (i != coord) return 0.0;
    return -std::pow(static_cast<double>(j), exponent);
  };
  return a;
}

Potential scale_potential(const Potential& a, double t) {
  Potential b = a;
  b.name = a.name + "*t";
  auto inner = a.eval;
  b.eval = [inner, t](const TruncatedVector& x) { return t * inner(x); };
  if (a.holder_constant) b.holder_constant = std::abs(t) * *a.holder_constant;
  b.shell_sup.reset();
  if (a.shell_sup && t >= 0.0) {
    auto ss = *a.shell_sup;
    b.shell_sup = [ss, t](int i, int j) { return t * ss(i, j); };
  }
  return b;
}

Potential shift_potential(const Potential& a, double kappa) {
  Potential b = a;
  b.name = a.name + "+const";
  auto inner = a.eval;
  b.eval = [inner, kappa](const TruncatedVector& x) { return inner(x) + kappa; };
  b.shell_sup.reset();
  if (a.shell_sup) {
    auto ss = *a.shell_sup;
    b.shell_sup = [ss, kappa](int i, int j) { return ss(i, j) + kappa; };
  }
  return b;
}

TruncatedVector random_box_vector(const SpaceSpec& space, double radius,
                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<double> c(static_cast<std::size_t>(space.dim));
  for (double& x : c) x = u(rng);
  return TruncatedVector(std::move(c), space);
}

TruncatedVector random_decaying_vector(const SpaceSpec& space, double scale, double decay,
                                       std::mt19937_64& rng) {
  if (!(decay > 0.0) || decay >= 1.0)
    throw std::invalid_argument("random_decaying_vector: decay must lie in (0, 1)");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(space.dim));
  double amp = scale;
  for (double& x : c) {
    x = amp * u(rng);
    amp *= decay;
  }
  return TruncatedVector(std::move(c), space);
}

double estimate_variation(const Potential& a, const SpaceSpec& space, int n,
                          double box_radius, int samples, std::mt19937_64& rng) {
  if (n < 1 || n >= space.dim)
    throw std::invalid_argument("estimate_variation: n must satisfy 1 <= n < N");
  if (samples < 1) throw std::invalid_argument("estimate_variation: need samples >= 1");
  std::uniform_real_distribution<double> u(-box_radius, box_radius);
  double best = 0.0;
  std::vector<double> zx(static_cast<std::size_t>(space.dim));
  std::vector<double> zy(static_cast<std::size_t>(space.dim));
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) {
      const double z = u(rng);
      zx[static_cast<std::size_t>(i)] = z;
      zy[static_cast<std::size_t>(i)] = z;
    }
    for (int i = n; i < space.dim; ++i) {
      zx[static_cast<std::size_t>(i)] = u(rng);
      zy[static_cast<std::size_t>(i)] = u(rng);
    }
    const double va = a(TruncatedVector(zx, space));
    const double vb = a(TruncatedVector(zy, space));
    best = std::max(best, std::abs(va - vb));
  }
  return best;
}

double estimate_variation_sum(const Potential& a, const SpaceSpec& space, int n_cut,
                              double box_radius, int samples, std::mt19937_64& rng) {
  double s = 0.0;
  for (int n = 1; n <= n_cut; ++n)
    s += estimate_variation(a, space, n, box_radius, samples, rng);
  return s;
}

double estimate_holder(const Potential& a, const SpaceSpec& space, double alpha,
                       double box_radius, int samples, std::mt19937_64& rng) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("estimate_holder: alpha must lie in (0, 1]");
  std::uniform_int_distribution<int> pick(0, space.dim - 1);
  std::uniform_real_distribution<double> u(-box_radius, box_radius);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const TruncatedVector x = random_box_vector(space, box_radius, rng);
    TruncatedVector y = x;
    if (s % 2 == 0) {
      y = random_box_vector(space, box_radius, rng);
    } else {
      // single-coordinate move; catches axis-aligned slopes that independent
      // pairs dilute in high dimension
      const int i = pick(rng);
      const double step = (s % 4 == 1) ? u(rng) : 1e-4 * u(rng);
      y.coords[static_cast<std::size_t>(i)] =
          std::clamp(y.coords[static_cast<std::size_t>(i)] + step, -box_radius, box_radius);
    }
    const double d = distance(x, y);
    if (d < 1e-7) continue;  // rounding noise dominates the ratio below this
    best = std::max(best, std::abs(a(x) - a(y)) / std::pow(d, alpha));
  }
  return best;
}

SummabilityReport summability_check(const Potential& a, const SpaceSpec& space, int coord,
                                    int j_max, double box_radius, int samples,
                                    std::mt19937_64& rng) {
  if (coord < 1 || coord > space.dim)
    throw std::invalid_argument("summability_check: coordinate index out of range");
  if (j_max < 2) throw std::invalid_argument("summability_check: j_max must be >= 2");
  SummabilityReport rep;
  rep.coord = coord;
  std::uniform_real_distribution<double> um(0.0, 1.0);
  double sum = 0.0;
  for (int j = 1; j <= j_max; ++j) {
    double sup;
    bool analytic = false;
    if (a.shell_sup) {
      sup = (*a.shell_sup)(coord, j);
      analytic = true;
    } else {
      // box-constrained estimate: coordinate `coord` pinned to the shell,
      // the others explored both around zero and with decaying profiles
      sup = -std::numeric_limits<double>::infinity();
      for (int s = 0; s < samples; ++s) {
        TruncatedVector x = (s % 2 == 0)
                                ? random_box_vector(space, box_radius, rng)
                                : random_decaying_vector(space, box_radius, 0.5, rng);
        const double mag = j + um(rng);
        x.coords[static_cast<std::size_t>(coord - 1)] = (s % 4 < 2) ? mag : -mag;
        sup = std::max(sup, a(x));
      }
    }
    rep.sup_values.push_back(sup);
    rep.sup_is_analytic.push_back(analytic);
    sum += std::exp(sup);
    rep.partial_sums.push_back(sum);
  }
  // convergence heuristics: sups must head to -infinity and the increment
  // ratio must stay clearly below one over the trailing shells
  bool decreasing = true;
  for (std::size_t j = 1; j < rep.sup_values.size(); ++j)
    if (rep.sup_values[j] > rep.sup_values[j - 1] + 1e-12) decreasing = false;
  rep.sup_decreasing = decreasing;
  const double last_inc = std::exp(rep.sup_values.back());
  const double prev_inc = std::exp(rep.sup_values[rep.sup_values.size() - 2]);
  const double ratio = prev_inc > 0.0 ? last_inc / prev_inc : 0.0;
  if (decreasing && ratio < 0.99) {
    rep.converging = true;
    rep.verdict = "converging trend";
  } else if (!decreasing || ratio >= 1.0) {
    rep.converging = false;
    rep.verdict = "diverging";
  } else {
    rep.converging = false;
    rep.verdict = "inconclusive";
  }
  return rep;
}

}  // namespace lindyn

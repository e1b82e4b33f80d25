#include "lindyn/ergopt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lindyn {

PeriodicOrbitMeasure orbit_measure(const Potential& a, const ShiftOperator& op,
                                   const std::vector<double>& head) {
  PeriodicOrbitMeasure m;
  m.period = static_cast<int>(head.size());
  m.head = head;
  TruncatedVector x = op.periodic_point(head);
  m.residual = op.periodic_residual(x, m.period);
  double s = 0.0;
  for (int j = 0; j < m.period; ++j) {
    m.orbit.push_back(x);
    s += a(x);
    if (j + 1 < m.period) x = op.apply(x);
  }
  m.value = s / m.period;
  return m;
}

PeriodicSearchReport m_periodic(const Potential& a, const ShiftOperator& op, int k_max,
                                const MultistartSpec& spec,
                                const std::vector<std::vector<double>>& extra_seeds) {
  if (k_max < 1 || 2 * k_max > op.dim())
    throw std::invalid_argument("m_periodic: k_max must satisfy 1 <= k_max <= N/2");
  PeriodicSearchReport rep;
  for (int k = 1; k <= k_max; ++k) {
    auto objective = [&a, &op, k](const std::vector<double>& head) {
      TruncatedVector x = op.periodic_point(head);
      double s = 0.0;
      for (int j = 0; j < k; ++j) {
        s += a(x);
        if (j + 1 < k) x = op.apply(x);
      }
      return s / k;
    };
    std::vector<std::vector<double>> seeds;
    for (const auto& s : extra_seeds)
      if (static_cast<int>(s.size()) == k) seeds.push_back(s);
    MultistartSpec ms = spec;
    ms.seed = spec.seed + static_cast<std::uint64_t>(k);
    SimplexResult r = multistart_max(objective, k, ms, seeds);
    PeriodicOrbitMeasure best_k = orbit_measure(a, op, r.x);
    rep.per_period.push_back(best_k);
    if (best_k.value > rep.m_estimate) {
      rep.m_estimate = best_k.value;
      rep.best = best_k;
    }
  }
  return rep;
}

namespace {

// Solve the 3x3 system M z = b by Gaussian elimination with partial pivoting.
bool solve3(double M[3][3], double b[3], double z[3]) {
  int perm[3] = {0, 1, 2};
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(M[perm[r]][c]) > std::abs(M[perm[piv]][c])) piv = r;
    std::swap(perm[c], perm[piv]);
    if (std::abs(M[perm[c]][c]) < 1e-14) return false;
    for (int r = c + 1; r < 3; ++r) {
      const double f = M[perm[r]][c] / M[perm[c]][c];
      for (int cc = c; cc < 3; ++cc) M[perm[r]][cc] -= f * M[perm[c]][cc];
      b[perm[r]] -= f * b[perm[c]];
    }
  }
  for (int c = 2; c >= 0; --c) {
    double s = b[perm[c]];
    for (int cc = c + 1; cc < 3; ++cc) s -= M[perm[c]][cc] * z[cc];
    z[c] = s / M[perm[c]][c];
  }
  return true;
}

}  // namespace

SpectralExtrapolation m_spectral(const SweepResult& sweep) {
  std::vector<const SweepPoint*> ok;
  for (const SweepPoint& p : sweep.points)
    if (p.ok) ok.push_back(&p);
  if (ok.size() < 3)
    throw std::invalid_argument("m_spectral: need at least three valid sweep points");
  SpectralExtrapolation ex;
  ex.bracket_last = ok.back()->log_lambda_over_t;

  // monotonicity of the tail of log(lambda_t)/t
  const std::size_t n = ok.size();
  const double d1 = ok[n - 2]->log_lambda_over_t - ok[n - 3]->log_lambda_over_t;
  const double d2 = ok[n - 1]->log_lambda_over_t - ok[n - 2]->log_lambda_over_t;
  if (d1 * d2 < -1e-18) {
    ex.m = ex.bracket_last;
    ex.warning = true;
    ex.note = "non-monotone tail; returning the last finite-t value";
    return ex;
  }

  double M[3][3];
  double b[3];
  for (int i = 0; i < 3; ++i) {
    const SweepPoint* p = ok[n - 3 + static_cast<std::size_t>(i)];
    M[i][0] = p->t;
    M[i][1] = -std::log(p->t);
    M[i][2] = -1.0;
    b[i] = p->log_lambda;
  }
  double z[3];
  if (!solve3(M, b, z)) {
    ex.m = ex.bracket_last;
    ex.warning = true;
    ex.note = "degenerate extrapolation system; returning the last finite-t value";
    return ex;
  }
  ex.m = z[0];
  return ex;
}

namespace {

// Birkhoff value S_n(A - m) at the n-step preimage of y with kernel vector
// rvec.
double birkhoff_on_preimage(const Potential& a, double m, const ShiftOperator& op,
                            const TruncatedVector& y, const std::vector<double>& rvec) {
  TruncatedVector p = op.preimage_n(y, rvec);
  const int n = static_cast<int>(rvec.size());
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    s += a(p) - m;
    if (j + 1 < n) p = op.apply(p);
  }
  return s;
}

// Kernel vector whose preimage head reproduces the head of x.
std::vector<double> head_matching_rvec(const ShiftOperator& op, const TruncatedVector& x,
                                       int n) {
  std::vector<double> r(static_cast<std::size_t>(n));
  r[0] = x[0];
  for (int j = 1; j < n; ++j) r[static_cast<std::size_t>(j)] = x[j] * op.weight_product(1, j);
  return r;
}

}  // namespace

ManeEvaluation mane_potential(const Potential& a, double m, const TruncatedVector& x,
                              const TruncatedVector& y, const ShiftOperator& op,
                              const ManeOptions& opts) {
  if (opts.n_max < 1 || opts.n_max > op.dim() - 1)
    throw std::invalid_argument("mane_potential: n_max must satisfy 1 <= n_max <= N-1");
  if (opts.eps_schedule.empty())
    throw std::invalid_argument("mane_potential: empty epsilon schedule");
  ManeEvaluation ev;
  ev.base = x;
  ev.target = y;
  ev.eps_schedule = opts.eps_schedule;
  std::sort(ev.eps_schedule.begin(), ev.eps_schedule.end(), std::greater<double>());
  for (int n = 1; n <= opts.n_max; ++n) ev.horizons.push_back(n);

  const std::size_t ne = ev.eps_schedule.size();
  const std::size_t nh = ev.horizons.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ev.table.assign(ne, std::vector<double>(nh, nan));
  ev.feasible.assign(ne, std::vector<bool>(nh, false));

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> un(-1.0, 1.0);

  for (std::size_t hi = 0; hi < nh; ++hi) {
    const int n = ev.horizons[hi];
    const std::vector<double> seed = head_matching_rvec(op, x, n);
    // distance of the head-matching preimage to x bounds the reachable
    // mismatch from below (tail coordinates are rvec-independent)
    const double tail_gap = distance(op.preimage_n(y, seed), x);
    std::vector<double> warm;  // best feasible point found at any smaller eps
    double warm_value = -std::numeric_limits<double>::infinity();
    for (std::size_t ei = ne; ei-- > 0;) {  // smallest eps first
      const double eps = ev.eps_schedule[ei];
      if (!(tail_gap < eps)) continue;
      // side-channel: record the best evaluation that actually satisfied the
      // ball constraint, whatever the simplex converges to
      double cell_best = -std::numeric_limits<double>::infinity();
      std::vector<double> cell_x;
      auto objective = [&](const std::vector<double>& rv) {
        const TruncatedVector p = op.preimage_n(y, rv);
        const double d = distance(p, x);
        if (!(d < eps))  // graded penalty, far below any attainable value
          return -1e300 * (1.0 + std::min(d - eps, 1e3));
        const double val = birkhoff_on_preimage(a, m, op, y, rv);
        if (val > cell_best) {
          cell_best = val;
          cell_x = rv;
        }
        return val;
      };
      auto consider = [&](const std::vector<double>& start) {
        (void)nelder_mead_max(objective, start, opts.simplex);
      };
      consider(seed);
      if (!warm.empty()) consider(warm);
      // the plain head of x as a kernel vector, plus jittered seeds at the
      // eps scale
      std::vector<double> plain(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) plain[static_cast<std::size_t>(j)] = x[j];
      consider(plain);
      for (int s = 0; s < opts.extra_starts; ++s) {
        std::vector<double> jit = seed;
        for (double& v : jit) v += 0.5 * eps * un(rng);
        consider(jit);
      }
      if (!cell_x.empty()) {
        ev.table[ei][hi] = cell_best;
        ev.feasible[ei][hi] = true;
        if (cell_best > warm_value) {
          warm = cell_x;
          warm_value = cell_best;
        }
      }
    }
    // hardening: a point feasible at a smaller radius is feasible at every
    // larger one, so each cell dominates the cells below it
    for (std::size_t ei = ne - 1; ei-- > 0;) {
      if (ev.feasible[ei + 1][hi] &&
          (!ev.feasible[ei][hi] || ev.table[ei + 1][hi] > ev.table[ei][hi])) {
        ev.table[ei][hi] = ev.table[ei + 1][hi];
        ev.feasible[ei][hi] = true;
      }
    }
  }

  // final value: the smallest radius with any feasible horizon wins
  for (std::size_t ei = ne; ei-- > 0;) {
    bool any = false;
    double v = -std::numeric_limits<double>::infinity();
    int bh = 0;
    for (std::size_t hi = 0; hi < nh; ++hi) {
      if (!ev.feasible[ei][hi]) continue;
      any = true;
      if (ev.table[ei][hi] > v) {
        v = ev.table[ei][hi];
        bh = ev.horizons[hi];
      }
    }
    if (any) {
      ev.value = v;
      ev.finite = true;
      ev.best_horizon = bh;
      ev.best_eps = ev.eps_schedule[ei];
      // one-sided trend: compare with the next larger radius column
      if (ei > 0) {
        double vprev = -std::numeric_limits<double>::infinity();
        bool anyprev = false;
        for (std::size_t hi = 0; hi < nh; ++hi)
          if (ev.feasible[ei - 1][hi]) {
            anyprev = true;
            vprev = std::max(vprev, ev.table[ei - 1][hi]);
          }
        if (anyprev)
          ev.trend_stable = std::abs(vprev - v) <= std::max(1e-8, 2.0 * ev.best_eps);
      }
      break;
    }
  }
  return ev;
}

double subaction_defect(const std::function<double(const TruncatedVector&)>& v,
                        const Potential& a, double m, const TruncatedVector& x,
                        const ShiftOperator& op) {
  return v(op.apply(x)) - v(x) - a(x) + m;
}

CalibrationResult calibration_residual(const std::function<double(const TruncatedVector&)>& v,
                                       const Potential& a, double m, const TruncatedVector& y,
                                       const ShiftOperator& op, double r_lo, double r_hi,
                                       int grid_points) {
  auto g = [&](double r) {
    const TruncatedVector p = op.preimage(y, r);
    return v(p) + a(p) - m;
  };
  GoldenResult best = grid_golden_max(g, r_lo, r_hi, grid_points);
  CalibrationResult res;
  res.residual = v(y) - best.value;
  res.maximizer_r = best.x;
  return res;
}

bool omega_indicator(const std::function<double(const TruncatedVector&)>& v, const Potential& a,
                     double m, const TruncatedVector& x, const ShiftOperator& op, double tol) {
  return subaction_defect(v, a, m, x, op) < tol;
}

double mane_vs_subaction_max_violation(
    const Potential& a, double m, const std::function<double(const TruncatedVector&)>& v,
    const std::vector<std::pair<TruncatedVector, TruncatedVector>>& pairs,
    const ShiftOperator& op, const ManeOptions& opts) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : pairs) {
    const ManeEvaluation ev = mane_potential(a, m, x, y, op, opts);
    if (!ev.finite) continue;  // -infinity never violates the upper bound
    worst = std::max(worst, ev.value - (v(y) - v(x)));
  }
  return worst;
}

}  // namespace lindyn

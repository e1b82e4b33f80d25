#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lindyn/optimize.hpp"
#include "lindyn/potential.hpp"
#include "lindyn/shift.hpp"
#include "lindyn/thermo.hpp"

namespace lindyn {

struct PeriodicOrbitMeasure {
  int period = 0;
  std::vector<double> head;
  std::vector<TruncatedVector> orbit;
  double value = 0.0;     // (1/k) S_k A over the orbit
  double residual = 0.0;  // periodicity residual on the first N-k coordinates
};

struct PeriodicSearchReport {
  double m_estimate = -std::numeric_limits<double>::infinity();
  PeriodicOrbitMeasure best;
  std::vector<PeriodicOrbitMeasure> per_period;
};

// Orbit measure for the given head: the periodic point, its forward orbit and
// the mean of A along it.
PeriodicOrbitMeasure orbit_measure(const Potential& a, const ShiftOperator& op,
                                   const std::vector<double>& head);

// Maximizes the periodic-orbit mean of A over heads of period k <= k_max by
// multistart simplex search; the result is a certified lower bound of the
// ergodic maximum.
PeriodicSearchReport m_periodic(const Potential& a, const ShiftOperator& op, int k_max,
                                const MultistartSpec& spec,
                                const std::vector<std::vector<double>>& extra_seeds = {});

struct SpectralExtrapolation {
  double m = 0.0;
  double bracket_last = 0.0;  // last finite-t value of log(lambda_t)/t
  bool warning = false;
  std::string note;
};

// Ergodic maximum from the sweep: fits log(lambda_t) = m t - gamma log t - c
// on the last three valid points, eliminating the Laplace-type subleading
// terms that plain 1/t extrapolation leaves behind.
SpectralExtrapolation m_spectral(const SweepResult& sweep);

struct ManeEvaluation {
  TruncatedVector base;    // x
  TruncatedVector target;  // y
  std::vector<int> horizons;
  std::vector<double> eps_schedule;
  // value[e][h]: best constrained Birkhoff value at (eps_schedule[e], horizons[h]);
  // NaN marks infeasible cells
  std::vector<std::vector<double>> table;
  std::vector<std::vector<bool>> feasible;
  double value = -std::numeric_limits<double>::infinity();
  bool finite = false;        // false: no feasible cell at the smallest eps
  int best_horizon = 0;
  double best_eps = 0.0;
  bool trend_stable = false;  // successive smallest-eps columns agree
};

struct ManeOptions {
  int n_max = 12;
  std::vector<double> eps_schedule = {1.0, 0.5, 0.25, 0.1, 0.05};
  SimplexOptions simplex;
  int extra_starts = 4;
  std::uint64_t seed = 99;
};

// Mane potential approximation: for each horizon n and radius eps, maximizes
// S_n(A - m) over n-step preimages of y constrained to the eps-ball around x.
// The epsilon limit is realized by the finite schedule; cells are hardened so
// the table is monotone (a point feasible at a smaller radius is feasible at
// every larger one).
ManeEvaluation mane_potential(const Potential& a, double m, const TruncatedVector& x,
                              const TruncatedVector& y, const ShiftOperator& op,
                              const ManeOptions& opts = {});

// V(L x) - V(x) - A(x) + m; nonnegative when V is a sub-action.
double subaction_defect(const std::function<double(const TruncatedVector&)>& v,
                        const Potential& a, double m, const TruncatedVector& x,
                        const ShiftOperator& op);

struct CalibrationResult {
  double residual = 0.0;
  double maximizer_r = 0.0;
};

// V(y) - max_r [V(preimage(y,r)) + A(preimage(y,r)) - m] via grid scan plus
// golden-section refinement in the kernel coordinate.
CalibrationResult calibration_residual(const std::function<double(const TruncatedVector&)>& v,
                                       const Potential& a, double m, const TruncatedVector& y,
                                       const ShiftOperator& op, double r_lo, double r_hi,
                                       int grid_points = 129);

bool omega_indicator(const std::function<double(const TruncatedVector&)>& v, const Potential& a,
                     double m, const TruncatedVector& x, const ShiftOperator& op, double tol);

// max over the sampled pairs of mane(x,y) - (V(y) - V(x)).
double mane_vs_subaction_max_violation(
    const Potential& a, double m, const std::function<double(const TruncatedVector&)>& v,
    const std::vector<std::pair<TruncatedVector, TruncatedVector>>& pairs,
    const ShiftOperator& op, const ManeOptions& opts = {});

}  // namespace lindyn

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lindyn/transfer.hpp"

namespace lindyn {

struct ChainSpec {
  long steps = 100000;
  long burn_in = 10000;
  std::uint64_t seed = 1;
};

// Empirical invariant-measure estimate: the post-burn-in states of the
// backward preimage chain plus a cache of integral estimates.
struct MeasureEstimate {
  std::vector<TruncatedVector> trajectory;
  std::map<std::string, std::pair<double, double>> cache;  // label -> (mean, stderr)
  std::uint64_t seed = 0;
  long burn_in = 0;
  long steps = 0;
  std::vector<int> node_index;  // fiber node chosen at each retained step
};

// One step of the backward chain: the kernel coordinate is drawn by
// inverse-CDF over the fiber rule with weights w_i e^{Abar(preimage(x, r_i))}.
TruncatedVector gibbs_chain_step(const Potential& abar, const TruncatedVector& x,
                                 const ShiftOperator& op, const QuadratureRule& fiber,
                                 std::mt19937_64& rng, int* chosen_node = nullptr);

// Total kernel mass along the fiber at x (the quadrature value of
// L_abar(1)(x)); should sit near one for a normalized potential.
double fiber_mass(const Potential& abar, const TruncatedVector& x, const ShiftOperator& op,
                  const QuadratureRule& fiber);

// Runs the chain.  When the raw potential has effective depth one (so the
// fiber weights do not depend on the current state) the node distribution is
// precomputed once; both paths draw one uniform per step.
MeasureEstimate run_gibbs_chain(const Potential& a, const Potential& abar,
                                const SpectralData& spectral, const ChainSpec& spec);

std::pair<double, double> estimate_integral(
    MeasureEstimate& measure, const std::string& label,
    const std::function<double(const TruncatedVector&)>& f, int batches = 20);

struct EntropyReport {
  double value = 0.0;        // -(integral of Abar), the exact route
  double stderr_value = 0.0;
  double dict_bound = 0.0;   // infimum over the test-function dictionary
  double dict_stderr = 0.0;
  std::string dict_argmin;
  std::map<std::string, std::pair<double, double>> dict_values;
};

EntropyReport entropy(const Potential& a, const SpectralData& spectral,
                      MeasureEstimate& measure, int dict_stride = 10);

struct PressureReport {
  double log_lambda = 0.0;
  double entropy_value = 0.0;   // via the normalized-potential route
  double entropy_dict = 0.0;    // via the dictionary infimum
  double int_a = 0.0;
  double int_a_stderr = 0.0;
  double residual_vp = 0.0;     // |log lambda - (h + int A)| with the exact h
  double residual_dict = 0.0;   // same with the dictionary h (non-vacuous)
  double combined_stderr = 0.0;
};

PressureReport pressure_check(const Potential& a, const SpectralData& spectral,
                              MeasureEstimate& measure);

struct CylinderCheck {
  std::vector<std::pair<double, double>> intervals;
  double mu_hat = 0.0;
  long hits = 0;
  double denom = 0.0;       // e^{S_k A(x~) - k log lambda}
  double ratio = 0.0;
  double bound = 0.0;       // the constant C with the empirical kappa estimate
  double kappa_hat = 0.0;   // osc(log psi) / V_T(A) estimate (0/0 reported as 0)
  double vt_hat = 0.0;
  double osc_log_psi = 0.0;
  double holder_hat = 0.0;
  bool conclusive = false;
  bool pass = false;
};

CylinderCheck gibbs_cylinder_check(const Potential& a, const SpectralData& spectral,
                                   const MeasureEstimate& measure, int k,
                                   const std::vector<std::pair<double, double>>& intervals,
                                   const TruncatedVector& x_tilde, double vt_estimate,
                                   double holder_estimate, long min_hits = 30);

struct SweepPoint {
  double t = 0.0;
  bool ok = false;
  std::string error;
  double log_lambda = 0.0;
  double log_lambda_over_t = 0.0;
  double int_a = 0.0;
  double int_a_stderr = 0.0;
  double entropy = 0.0;
  double dist_to_candidate = 0.0;
  double dist_stderr = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<double> int_a_successive_diffs;
  std::string summability_warning;  // set when the shell sups do not decay
};

struct SweepSpec {
  std::vector<double> t_values = {1, 2, 4, 8, 16, 32, 50};
  ChainSpec chain;
  PowerIterationOptions power;
  bool refine_fiber_with_t = true;
  // spectral-only sweeps skip the chains; integral fields stay NaN
  bool run_chain = true;
};

SweepResult zero_temp_sweep(const Potential& a, std::shared_ptr<const ShiftOperator> op,
                            std::shared_ptr<const AprioriMeasure> nu, const GridSpec& grid,
                            const SweepSpec& spec,
                            const std::optional<TruncatedVector>& candidate = std::nullopt);

// Stationary distribution over the fiber nodes of the depth-one backward
// chain, from the column-stochastic node-transition matrix.  Independent
// check target for the chain's empirical node histogram.
std::vector<double> depth1_node_stationary(const Potential& abar, const ShiftOperator& op,
                                           const QuadratureRule& fiber);

// Total-variation distance between the chain's empirical node histogram and
// a reference distribution on the same node set.
double node_histogram_tv(const MeasureEstimate& measure, const std::vector<double>& reference);

}  // namespace lindyn

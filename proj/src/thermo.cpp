#include "lindyn/thermo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lindyn {

namespace {

int draw_from_weights(const std::vector<double>& q, double total, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, total);
  const double target = u(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    acc += q[i];
    if (target <= acc) return static_cast<int>(i);
  }
  return static_cast<int>(q.size()) - 1;
}

}  // namespace

TruncatedVector gibbs_chain_step(const Potential& abar, const TruncatedVector& x,
                                 const ShiftOperator& op, const QuadratureRule& fiber,
                                 std::mt19937_64& rng, int* chosen_node) {
  std::vector<double> q(static_cast<std::size_t>(fiber.size()));
  double total = 0.0;
  for (int i = 0; i < fiber.size(); ++i) {
    const TruncatedVector pre = op.preimage(x, fiber.nodes[static_cast<std::size_t>(i)]);
    q[static_cast<std::size_t>(i)] =
        fiber.weights[static_cast<std::size_t>(i)] * std::exp(abar(pre));
    total += q[static_cast<std::size_t>(i)];
  }
  if (!(total > 0.0))
    throw std::runtime_error("gibbs_chain_step: kernel mass underflowed along the fiber");
  const int sel = draw_from_weights(q, total, rng);
  if (chosen_node) *chosen_node = sel;
  return op.preimage(x, fiber.nodes[static_cast<std::size_t>(sel)]);
}

double fiber_mass(const Potential& abar, const TruncatedVector& x, const ShiftOperator& op,
                  const QuadratureRule& fiber) {
  double total = 0.0;
  for (int i = 0; i < fiber.size(); ++i) {
    const TruncatedVector pre = op.preimage(x, fiber.nodes[static_cast<std::size_t>(i)]);
    total += fiber.weights[static_cast<std::size_t>(i)] * std::exp(abar(pre));
  }
  return total;
}

MeasureEstimate run_gibbs_chain(const Potential& a, const Potential& abar,
                                const SpectralData& spectral, const ChainSpec& spec) {
  if (spec.steps < 1) throw std::invalid_argument("run_gibbs_chain: steps must be >= 1");
  const ShiftOperator& op = *spectral.op;
  const QuadratureRule& fiber = spectral.grid.fiber_rule(*spectral.nu);
  std::mt19937_64 rng(spec.seed);

  MeasureEstimate m;
  m.seed = spec.seed;
  m.burn_in = spec.burn_in;
  m.steps = spec.steps;
  m.trajectory.reserve(static_cast<std::size_t>(spec.steps));
  m.node_index.reserve(static_cast<std::size_t>(spec.steps));

  TruncatedVector x = TruncatedVector::zero(op.space());

  const bool state_free =
      a.effective_depth.has_value() && *a.effective_depth == 1 && spectral.psi.depth() == 1;
  if (state_free) {
    // fiber weights w_i e^{A(r_i) + log psi(r_i)} do not depend on the state;
    // the state-dependent factors of Abar are constant along the fiber and
    // cancel in the normalization
    std::vector<double> q(static_cast<std::size_t>(fiber.size()));
    double total = 0.0;
    std::vector<double> probe(static_cast<std::size_t>(op.dim()), 0.0);
    for (int i = 0; i < fiber.size(); ++i) {
      probe[0] = fiber.nodes[static_cast<std::size_t>(i)];
      const TruncatedVector p(probe, op.space());
      q[static_cast<std::size_t>(i)] = fiber.weights[static_cast<std::size_t>(i)] *
                                       std::exp(a(p)) * spectral.psi.interpolate(p);
      total += q[static_cast<std::size_t>(i)];
    }
    if (!(total > 0.0))
      throw std::runtime_error("run_gibbs_chain: kernel mass underflowed along the fiber");
    for (long s = 0; s < spec.burn_in + spec.steps; ++s) {
      const int sel = draw_from_weights(q, total, rng);
      x = op.preimage(x, fiber.nodes[static_cast<std::size_t>(sel)]);
      if (s >= spec.burn_in) {
        m.trajectory.push_back(x);
        m.node_index.push_back(sel);
      }
    }
    return m;
  }

  for (long s = 0; s < spec.burn_in + spec.steps; ++s) {
    int sel = -1;
    x = gibbs_chain_step(abar, x, op, fiber, rng, &sel);
    if (s >= spec.burn_in) {
      m.trajectory.push_back(x);
      m.node_index.push_back(sel);
    }
  }
  return m;
}

std::pair<double, double> estimate_integral(
    MeasureEstimate& measure, const std::string& label,
    const std::function<double(const TruncatedVector&)>& f, int batches) {
  if (!label.empty()) {
    auto it = measure.cache.find(label);
    if (it != measure.cache.end()) return it->second;
  }
  const long n = static_cast<long>(measure.trajectory.size());
  if (n < batches)
    throw std::invalid_argument("estimate_integral: too few steps for " +
                                std::to_string(batches) + " batches");
  const long bs = n / batches;
  std::vector<double> bm(static_cast<std::size_t>(batches), 0.0);
  double mean = 0.0;
  for (int b = 0; b < batches; ++b) {
    double s = 0.0;
    for (long i = b * bs; i < (b + 1) * bs; ++i)
      s += f(measure.trajectory[static_cast<std::size_t>(i)]);
    bm[static_cast<std::size_t>(b)] = s / bs;
    mean += bm[static_cast<std::size_t>(b)];
  }
  mean /= batches;
  double var = 0.0;
  for (double v : bm) var += (v - mean) * (v - mean);
  var /= (batches - 1);
  const double se = std::sqrt(var / batches);
  auto out = std::make_pair(mean, se);
  if (!label.empty()) measure.cache[label] = out;
  return out;
}

namespace {

// Mean and batch stderr of log(L_0(u)/u) along a strided subsample of the
// trajectory.
std::pair<double, double> dict_value(const std::function<double(const TruncatedVector&)>& u,
                                     const MeasureEstimate& measure, const ShiftOperator& op,
                                     const QuadratureRule& fiber, int stride) {
  const Potential zero = zero_potential();
  std::vector<double> vals;
  vals.reserve(measure.trajectory.size() / static_cast<std::size_t>(stride) + 1);
  for (std::size_t i = 0; i < measure.trajectory.size(); i += static_cast<std::size_t>(stride)) {
    const TruncatedVector& x = measure.trajectory[i];
    const double num = transfer_apply_point(zero, u, x, op, fiber);
    const double den = u(x);
    if (!(num > 0.0) || !(den > 0.0))
      throw std::runtime_error("entropy dictionary: test function lost positivity");
    vals.push_back(std::log(num / den));
  }
  const int batches = 20;
  const std::size_t n = vals.size();
  if (n < static_cast<std::size_t>(batches))
    throw std::runtime_error("entropy dictionary: subsample too short");
  const std::size_t bs = n / batches;
  double mean = 0.0;
  std::vector<double> bm(batches, 0.0);
  for (int b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t i = b * bs; i < (b + 1) * bs; ++i) s += vals[i];
    bm[static_cast<std::size_t>(b)] = s / static_cast<double>(bs);
    mean += bm[static_cast<std::size_t>(b)];
  }
  mean /= batches;
  double var = 0.0;
  for (double v : bm) var += (v - mean) * (v - mean);
  var /= (batches - 1);
  return {mean, std::sqrt(var / batches)};
}

}  // namespace

EntropyReport entropy(const Potential& a, const SpectralData& spectral,
                      MeasureEstimate& measure, int dict_stride) {
  EntropyReport rep;
  const Potential abar = normalized_potential(a, spectral);
  auto [m, se] = estimate_integral(measure, "abar", abar.eval);
  rep.value = -m;
  rep.stderr_value = se;

  const ShiftOperator& op = *spectral.op;
  const QuadratureRule& fiber = spectral.grid.fiber_rule(*spectral.nu);
  auto psi_grid = spectral.psi;
  auto abar_eval = abar.eval;

  std::vector<std::pair<std::string, std::function<double(const TruncatedVector&)>>> dict;
  dict.emplace_back("one", [](const TruncatedVector&) { return 1.0; });
  dict.emplace_back("exp_abar",
                    [abar_eval](const TruncatedVector& x) { return std::exp(abar_eval(x)); });
  dict.emplace_back("psi", [psi_grid](const TruncatedVector& x) {
    return psi_grid.interpolate(x);
  });
  dict.emplace_back("psi_exp_abar", [psi_grid, abar_eval](const TruncatedVector& x) {
    return psi_grid.interpolate(x) * std::exp(abar_eval(x));
  });
  // a few fixed random positive grid functions widen the dictionary
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> un(-0.5, 0.5);
  for (int r = 0; r < 3; ++r) {
    FunctionGrid g(spectral.psi.depth(), spectral.grid.radius, 9);
    for (double& v : g.values()) v = std::exp(un(rng));
    dict.emplace_back("random" + std::to_string(r),
                      [g](const TruncatedVector& x) { return g.interpolate(x); });
  }

  bool first = true;
  for (auto& [name, u] : dict) {
    auto [dm, dse] = dict_value(u, measure, op, fiber, dict_stride);
    rep.dict_values[name] = {dm, dse};
    if (first || dm < rep.dict_bound) {
      rep.dict_bound = dm;
      rep.dict_stderr = dse;
      rep.dict_argmin = name;
      first = false;
    }
  }
  return rep;
}

PressureReport pressure_check(const Potential& a, const SpectralData& spectral,
                              MeasureEstimate& measure) {
  PressureReport rep;
  rep.log_lambda = std::log(spectral.lambda);
  EntropyReport h = entropy(a, spectral, measure);
  rep.entropy_value = h.value;
  rep.entropy_dict = h.dict_bound;
  auto [ia, se] = estimate_integral(measure, "a", a.eval);
  rep.int_a = ia;
  rep.int_a_stderr = se;
  rep.residual_vp = std::abs(rep.log_lambda - (rep.entropy_value + rep.int_a));
  rep.residual_dict = std::abs(rep.log_lambda - (rep.entropy_dict + rep.int_a));
  rep.combined_stderr = std::sqrt(se * se + h.dict_stderr * h.dict_stderr);
  return rep;
}

CylinderCheck gibbs_cylinder_check(const Potential& a, const SpectralData& spectral,
                                   const MeasureEstimate& measure, int k,
                                   const std::vector<std::pair<double, double>>& intervals,
                                   const TruncatedVector& x_tilde, double vt_estimate,
                                   double holder_estimate, long min_hits) {
  if (static_cast<int>(intervals.size()) != k)
    throw std::invalid_argument("gibbs_cylinder_check: need one interval per coordinate");
  for (int i = 0; i < k; ++i) {
    const double c = x_tilde[i];
    if (c < intervals[static_cast<std::size_t>(i)].first ||
        c > intervals[static_cast<std::size_t>(i)].second)
      throw std::invalid_argument("gibbs_cylinder_check: x_tilde outside the cylinder");
  }
  CylinderCheck chk;
  chk.intervals = intervals;
  long hits = 0;
  for (const TruncatedVector& x : measure.trajectory) {
    bool in = true;
    for (int i = 0; i < k && in; ++i)
      in = x[i] >= intervals[static_cast<std::size_t>(i)].first &&
           x[i] <= intervals[static_cast<std::size_t>(i)].second;
    if (in) ++hits;
  }
  chk.hits = hits;
  chk.mu_hat = static_cast<double>(hits) / static_cast<double>(measure.trajectory.size());

  const ShiftOperator& op = *spectral.op;
  const double sk = op.birkhoff_sum(a.eval, x_tilde, k);
  chk.denom = std::exp(sk - k * std::log(spectral.lambda));
  chk.ratio = chk.mu_hat / chk.denom;

  chk.osc_log_psi = std::log(spectral.psi.max_value() / spectral.psi.min_value());
  chk.vt_hat = vt_estimate;
  chk.kappa_hat = vt_estimate > 1e-12 ? chk.osc_log_psi / vt_estimate : 0.0;
  chk.holder_hat = holder_estimate;

  // diameter of the interval box in the space norm
  double diam = 0.0;
  if (op.space().kind == NormKind::Sup) {
    for (auto& [lo, hi] : chk.intervals) diam = std::max(diam, hi - lo);
  } else {
    double s = 0.0;
    for (auto& [lo, hi] : chk.intervals) s += std::pow(hi - lo, op.space().p);
    diam = std::pow(s, 1.0 / op.space().p);
  }
  double norm_pow_sum = 0.0;
  double pw = 1.0;
  for (int i = 1; i <= k; ++i) {
    norm_pow_sum += pw;
    pw *= op.operator_norm();
  }
  // exponent (1 + 3 kappa) V_T = V_T + 3 osc(log psi)
  chk.bound = std::exp(vt_estimate + 3.0 * chk.osc_log_psi +
                       holder_estimate * diam * norm_pow_sum);
  chk.conclusive = hits >= min_hits;
  chk.pass = chk.conclusive && chk.ratio <= chk.bound;
  return chk;
}

SweepResult zero_temp_sweep(const Potential& a, std::shared_ptr<const ShiftOperator> op,
                            std::shared_ptr<const AprioriMeasure> nu, const GridSpec& grid,
                            const SweepSpec& spec,
                            const std::optional<TruncatedVector>& candidate) {
  SweepResult out;
  for (double t : spec.t_values)
    if (!(t > 0.0))
      throw std::invalid_argument("zero_temp_sweep: inverse temperatures must be positive");
  // decay of the shell suprema is what keeps the equilibrium family tight;
  // flag potentials whose closed-form shells do not head downward
  if (a.shell_sup) {
    bool decaying = true;
    for (int j = 2; j <= 12 && decaying; ++j)
      decaying = (*a.shell_sup)(1, j) <= (*a.shell_sup)(1, j - 1) + 1e-12;
    if (!decaying || (*a.shell_sup)(1, 12) > (*a.shell_sup)(1, 1) - 1e-9)
      out.summability_warning = "shell suprema of the potential do not decay";
  }
  for (std::size_t ti = 0; ti < spec.t_values.size(); ++ti) {
    const double t = spec.t_values[ti];
    SweepPoint pt;
    pt.t = t;
    try {
      Potential at = scale_potential(a, t);
      GridSpec g = grid;
      if (spec.refine_fiber_with_t) {
        const double hol = a.holder_constant.value_or(1.0);
        g.fiber = refined_fiber_rule(*nu, t * hol);
      }
      SpectralData sd = power_iteration(at, op, nu, g, spec.power);
      pt.log_lambda = std::log(sd.lambda);
      pt.log_lambda_over_t = pt.log_lambda / t;
      if (spec.run_chain) {
        const Potential abar = normalized_potential(at, sd);
        ChainSpec cs = spec.chain;
        cs.seed = spec.chain.seed + ti;
        MeasureEstimate m = run_gibbs_chain(at, abar, sd, cs);
        auto [ia, se] = estimate_integral(m, "a", a.eval);
        pt.int_a = ia;
        pt.int_a_stderr = se;
        auto [ab, abse] = estimate_integral(m, "abar", abar.eval);
        pt.entropy = -ab;
        if (candidate) {
          auto [dm, dse] = estimate_integral(m, "dist", [&](const TruncatedVector& x) {
            return distance(x, *candidate);
          });
          pt.dist_to_candidate = dm;
          pt.dist_stderr = dse;
        }
      } else {
        pt.int_a = std::numeric_limits<double>::quiet_NaN();
        pt.int_a_stderr = std::numeric_limits<double>::quiet_NaN();
        pt.entropy = std::numeric_limits<double>::quiet_NaN();
        pt.dist_to_candidate = std::numeric_limits<double>::quiet_NaN();
      }
      pt.ok = true;
    } catch (const std::exception& e) {
      pt.ok = false;
      pt.error = e.what();
    }
    out.points.push_back(std::move(pt));
  }
  for (std::size_t i = 1; i < out.points.size(); ++i)
    if (out.points[i].ok && out.points[i - 1].ok)
      out.int_a_successive_diffs.push_back(out.points[i].int_a - out.points[i - 1].int_a);
  return out;
}

std::vector<double> depth1_node_stationary(const Potential& abar, const ShiftOperator& op,
                                           const QuadratureRule& fiber) {
  const int n = fiber.size();
  // column j: distribution of the next node given current first coordinate
  // node j; valid when the kernel depends on the state only through it
  std::vector<std::vector<double>> cols(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<double> state(static_cast<std::size_t>(op.dim()), 0.0);
    state[0] = fiber.nodes[static_cast<std::size_t>(j)];
    const TruncatedVector xj(state, op.space());
    std::vector<double>& q = cols[static_cast<std::size_t>(j)];
    q.resize(static_cast<std::size_t>(n));
    double tot = 0.0;
    for (int i = 0; i < n; ++i) {
      const TruncatedVector pre = op.preimage(xj, fiber.nodes[static_cast<std::size_t>(i)]);
      q[static_cast<std::size_t>(i)] =
          fiber.weights[static_cast<std::size_t>(i)] * std::exp(abar(pre));
      tot += q[static_cast<std::size_t>(i)];
    }
    for (double& v : q) v /= tot;
  }
  std::vector<double> p(static_cast<std::size_t>(n), 1.0 / n);
  std::vector<double> next(static_cast<std::size_t>(n), 0.0);
  for (int it = 0; it < 10000; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        next[static_cast<std::size_t>(i)] +=
            cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
            p[static_cast<std::size_t>(j)];
    double diff = 0.0;
    for (int i = 0; i < n; ++i) diff += std::abs(next[static_cast<std::size_t>(i)] -
                                                 p[static_cast<std::size_t>(i)]);
    p.swap(next);
    if (diff < 1e-14) break;
  }
  return p;
}

double node_histogram_tv(const MeasureEstimate& measure, const std::vector<double>& reference) {
  std::vector<double> freq(reference.size(), 0.0);
  for (int idx : measure.node_index) {
    if (idx < 0 || idx >= static_cast<int>(reference.size()))
      throw std::invalid_argument("node_histogram_tv: node index out of range");
    freq[static_cast<std::size_t>(idx)] += 1.0;
  }
  for (double& f : freq) f /= static_cast<double>(measure.node_index.size());
  double tv = 0.0;
  for (std::size_t i = 0; i < freq.size(); ++i) tv += std::abs(freq[i] - reference[i]);
  return 0.5 * tv;
}

}  // namespace lindyn

#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lindyn/shift.hpp"
#include "lindyn/space.hpp"

namespace lindyn {

// Monotone decreasing modulating factor r with r(0) = 1 and limit 0.
struct Modulator {
  std::string name;
  std::function<double(double)> value;

  static Modulator exp_decay();            // r(s) = e^{-s}
  static Modulator hat();                  // r(s) = max(0, 1 - s)
  static Modulator from_name(const std::string& n);
};

// An evaluatable potential together with its regularity metadata.
struct Potential {
  std::string name;
  std::function<double(const TruncatedVector&)> eval;
  double holder_alpha = 1.0;
  std::optional<double> holder_constant;   // analytic bound when known
  std::optional<int> effective_depth;      // coordinates beyond it are ignored
  // Closed form for sup{A on the shell j <= |x_i| <= j+1}, when the potential
  // admits one.
  std::optional<std::function<double(int, int)>> shell_sup;

  double operator()(const TruncatedVector& x) const { return eval(x); }
};

Potential zero_potential();
Potential constant_potential(double kappa);
// A(x) = -||x - v||
Potential neg_dist(const TruncatedVector& v);
// A(x) = -||P_M x - P_M v|| restricted to the first `depth` coordinates
Potential neg_dist_projected(const TruncatedVector& v, int depth);
// A(x) = -r(||x - v||) ||x - v||
Potential modulated_dist(const TruncatedVector& v, const Modulator& r);
// A(x) = -[r(||x-v||)||x-v|| + r(||x-w||)||x-w||]
Potential two_point(const TruncatedVector& v, const TruncatedVector& w, const Modulator& r);
// A(x) = -r(d(x, W)) d(x, W) with W the even-coordinate-zero subspace
Potential subspace_dist_even_zero(const SpaceSpec& space, const Modulator& r);
// A(x) = -weight * x_coord^2  (depth-limited smooth test potential)
Potential quadratic_well(int coord, double weight, int depth_hint = 0);
// A(x) = -|x_coord|^exponent
Potential power_well(int coord, double exponent);

Potential scale_potential(const Potential& a, double t);
Potential shift_potential(const Potential& a, double kappa);

// Distance from x to the subspace of vectors vanishing on even coordinates.
double distance_to_even_zero_subspace(const TruncatedVector& x);

// Monte-Carlo lower bound of the variation of A along directions beyond the
// first n coordinates: sup |A(z + x) - A(z + y)| with z on the first n
// coordinates and x, y supported beyond them, all inside the box of the
// given radius.  Running max, so monotone in the sample count.
double estimate_variation(const Potential& a, const SpaceSpec& space, int n,
                          double box_radius, int samples, std::mt19937_64& rng);

// Sum of variation estimates for n = 1..n_cut.
double estimate_variation_sum(const Potential& a, const SpaceSpec& space, int n_cut,
                              double box_radius, int samples, std::mt19937_64& rng);

// Monte-Carlo lower bound of the alpha-Hoelder constant over box samples.
double estimate_holder(const Potential& a, const SpaceSpec& space, double alpha,
                       double box_radius, int samples, std::mt19937_64& rng);

struct SummabilityReport {
  int coord = 1;
  std::vector<double> sup_values;    // estimated sup of A on each shell j
  std::vector<bool> sup_is_analytic; // closed form vs box-constrained estimate
  std::vector<double> partial_sums;  // running sums of e^{sup}
  bool sup_decreasing = false;
  bool converging = false;
  std::string verdict;  // "converging trend" | "diverging" | "inconclusive"
};

SummabilityReport summability_check(const Potential& a, const SpaceSpec& space, int coord,
                                    int j_max, double box_radius, int samples,
                                    std::mt19937_64& rng);

// Box-sampled vector with every coordinate uniform in [-radius, radius].
TruncatedVector random_box_vector(const SpaceSpec& space, double radius,
                                  std::mt19937_64& rng);

// Random vector with geometrically decaying coordinates, the natural regime
// for truncated sequence data: coordinate n is uniform in
// [-scale*decay^{n-1}, scale*decay^{n-1}].
TruncatedVector random_decaying_vector(const SpaceSpec& space, double scale, double decay,
                                       std::mt19937_64& rng);

}  // namespace lindyn

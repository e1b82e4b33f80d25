#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace lindyn {

struct SimplexOptions {
  int max_iter = 400;
  double x_tol = 1e-11;
  double f_tol = 1e-13;
  double initial_step = 0.5;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Nelder-Mead maximization of f.
SimplexResult nelder_mead_max(const std::function<double(const std::vector<double>&)>& f,
                              const std::vector<double>& start, const SimplexOptions& opts = {});

// Cyclic golden-section polish along the coordinate axes; sharpens simplex
// output near kink-type maxima where the simplex stalls.
SimplexResult coordinate_polish_max(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& start, double span,
                                    int sweeps = 4, double x_tol = 1e-13);

struct MultistartSpec {
  int starts = 16;
  double box_radius = 2.0;
  SimplexOptions simplex;
  bool polish = true;
  std::uint64_t seed = 1;
};

// Multistart simplex + polish; deterministic given the seed.  Extra
// deterministic seed points can be supplied (tried before the random ones).
SimplexResult multistart_max(const std::function<double(const std::vector<double>&)>& f,
                             int dim, const MultistartSpec& spec,
                             const std::vector<std::vector<double>>& seeds = {});

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
};

// Grid scan followed by golden-section refinement; for unimodal-after-scan
// one-dimensional maximizations.
GoldenResult grid_golden_max(const std::function<double(double)>& f, double lo, double hi,
                             int grid_points = 65, double x_tol = 1e-12);

}  // namespace lindyn

#include "lindyn/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lindyn {

SimplexResult nelder_mead_max(const std::function<double(const std::vector<double>&)>& f,
                              const std::vector<double>& start, const SimplexOptions& opts) {
  const int n = static_cast<int>(start.size());
  if (n < 1) throw std::invalid_argument("nelder_mead_max: empty start point");
  auto g = [&f](const std::vector<double>& x) { return -f(x); };  // minimize -f

  std::vector<std::vector<double>> pts(static_cast<std::size_t>(n + 1), start);
  for (int i = 0; i < n; ++i) {
    double step = opts.initial_step;
    if (start[static_cast<std::size_t>(i)] != 0.0)
      step = std::max(step, 0.1 * std::abs(start[static_cast<std::size_t>(i)]));
    pts[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] += step;
  }
  std::vector<double> fv(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) fv[static_cast<std::size_t>(i)] = g(pts[static_cast<std::size_t>(i)]);

  auto order = [&]() {
    std::vector<int> idx(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return fv[static_cast<std::size_t>(a)] < fv[static_cast<std::size_t>(b)];
    });
    std::vector<std::vector<double>> p2;
    std::vector<double> f2;
    p2.reserve(idx.size());
    f2.reserve(idx.size());
    for (int i : idx) {
      p2.push_back(pts[static_cast<std::size_t>(i)]);
      f2.push_back(fv[static_cast<std::size_t>(i)]);
    }
    pts.swap(p2);
    fv.swap(f2);
  };

  SimplexResult res;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    order();
    // convergence: simplex spread in x and f
    double xs = 0.0;
    for (int i = 0; i < n; ++i)
      xs = std::max(xs, std::abs(pts.back()[static_cast<std::size_t>(i)] -
                                 pts.front()[static_cast<std::size_t>(i)]));
    const double fs = std::abs(fv.back() - fv.front());
    if (xs <= opts.x_tol && fs <= opts.f_tol) {
      res.converged = true;
      break;
    }
    // centroid of all but the worst
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      for (int d = 0; d < n; ++d)
        c[static_cast<std::size_t>(d)] += pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] / n;
    auto blend = [&](double t) {
      std::vector<double> x(static_cast<std::size_t>(n));
      for (int d = 0; d < n; ++d)
        x[static_cast<std::size_t>(d)] = c[static_cast<std::size_t>(d)] +
                                         t * (pts.back()[static_cast<std::size_t>(d)] -
                                              c[static_cast<std::size_t>(d)]);
      return x;
    };
    const std::vector<double> xr = blend(-1.0);
    const double fr = g(xr);
    if (fr < fv.front()) {
      const std::vector<double> xe = blend(-2.0);
      const double fe = g(xe);
      if (fe < fr) {
        pts.back() = xe;
        fv.back() = fe;
      } else {
        pts.back() = xr;
        fv.back() = fr;
      }
    } else if (fr < fv[static_cast<std::size_t>(n - 1)]) {
      pts.back() = xr;
      fv.back() = fr;
    } else {
      const bool outside = fr < fv.back();
      const std::vector<double> xc = blend(outside ? -0.5 : 0.5);
      const double fc = g(xc);
      if (fc < (outside ? fr : fv.back())) {
        pts.back() = xc;
        fv.back() = fc;
      } else {
        // shrink toward the best vertex
        for (int i = 1; i <= n; ++i) {
          for (int d = 0; d < n; ++d)
            pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] =
                0.5 * (pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] +
                       pts.front()[static_cast<std::size_t>(d)]);
          fv[static_cast<std::size_t>(i)] = g(pts[static_cast<std::size_t>(i)]);
        }
      }
    }
  }
  order();
  res.x = pts.front();
  res.value = -fv.front();
  res.iterations = it;
  return res;
}

SimplexResult coordinate_polish_max(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& start, double span, int sweeps,
                                    double x_tol) {
  const double phi = 0.6180339887498949;
  std::vector<double> x = start;
  double fx = f(x);
  double width = span;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t d = 0; d < x.size(); ++d) {
      double a = x[d] - width;
      double b = x[d] + width;
      auto fd = [&](double t) {
        std::vector<double> y = x;
        y[d] = t;
        return f(y);
      };
      double x1 = b - phi * (b - a);
      double x2 = a + phi * (b - a);
      double f1 = fd(x1);
      double f2 = fd(x2);
      while (b - a > x_tol) {
        if (f1 < f2) {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + phi * (b - a);
          f2 = fd(x2);
        } else {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - phi * (b - a);
          f1 = fd(x1);
        }
      }
      const double t = 0.5 * (a + b);
      const double ft = fd(t);
      if (ft > fx) {
        x[d] = t;
        fx = ft;
      }
    }
    width *= 0.25;
  }
  SimplexResult res;
  res.x = std::move(x);
  res.value = fx;
  res.converged = true;
  return res;
}

SimplexResult multistart_max(const std::function<double(const std::vector<double>&)>& f,
                             int dim, const MultistartSpec& spec,
                             const std::vector<std::vector<double>>& seeds) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> u(-spec.box_radius, spec.box_radius);
  SimplexResult best;
  bool have = false;
  auto consider = [&](const std::vector<double>& start) {
    SimplexResult r = nelder_mead_max(f, start, spec.simplex);
    if (spec.polish) {
      SimplexResult p = coordinate_polish_max(f, r.x, std::max(1e-3, spec.box_radius * 0.1));
      if (p.value > r.value) r = std::move(p);
    }
    if (!have || r.value > best.value) {
      best = std::move(r);
      have = true;
    }
  };
  for (const auto& s : seeds) {
    if (static_cast<int>(s.size()) != dim)
      throw std::invalid_argument("multistart_max: seed dimension mismatch");
    consider(s);
  }
  consider(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
  for (int s = 0; s < spec.starts; ++s) {
    std::vector<double> start(static_cast<std::size_t>(dim));
    for (double& v : start) v = u(rng);
    consider(start);
  }
  return best;
}

GoldenResult grid_golden_max(const std::function<double(double)>& f, double lo, double hi,
                             int grid_points, double x_tol) {
  if (!(hi > lo)) throw std::invalid_argument("grid_golden_max: empty interval");
  if (grid_points < 3) throw std::invalid_argument("grid_golden_max: need >= 3 grid points");
  const double h = (hi - lo) / (grid_points - 1);
  double best_x = lo;
  double best_f = f(lo);
  for (int i = 1; i < grid_points; ++i) {
    const double x = lo + i * h;
    const double v = f(x);
    if (v > best_f) {
      best_f = v;
      best_x = x;
    }
  }
  double a = std::max(lo, best_x - h);
  double b = std::min(hi, best_x + h);
  const double phi = 0.6180339887498949;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > x_tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  GoldenResult res;
  res.x = 0.5 * (a + b);
  res.value = f(res.x);
  if (best_f > res.value) {
    res.x = best_x;
    res.value = best_f;
  }
  return res;
}

}  // namespace lindyn

#include "lindyn/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lindyn {

FunctionGrid::FunctionGrid(int depth, double radius, int resolution, double fill)
    : depth_(depth), radius_(radius), resolution_(resolution) {
  if (depth < 1 || depth > 6) throw std::invalid_argument("FunctionGrid: depth out of range");
  if (!(radius > 0.0)) throw std::invalid_argument("FunctionGrid: radius must be > 0");
  if (resolution < 2) throw std::invalid_argument("FunctionGrid: resolution must be >= 2");
  std::size_t n = 1;
  for (int d = 0; d < depth; ++d) n *= static_cast<std::size_t>(resolution);
  values_.assign(n, fill);
}

FunctionGrid FunctionGrid::from_function(
    int depth, double radius, int resolution,
    const std::function<double(const std::vector<double>&)>& f) {
  FunctionGrid g(depth, radius, resolution);
  for (std::size_t i = 0; i < g.size(); ++i) g.values_[i] = f(g.point(i));
  return g;
}

double FunctionGrid::axis_point(int idx) const {
  const double h = 2.0 * radius_ / (resolution_ - 1);
  return -radius_ + h * idx;
}

std::vector<double> FunctionGrid::point(std::size_t flat) const {
  std::vector<double> p(static_cast<std::size_t>(depth_));
  for (int d = depth_ - 1; d >= 0; --d) {
    p[static_cast<std::size_t>(d)] =
        axis_point(static_cast<int>(flat % static_cast<std::size_t>(resolution_)));
    flat /= static_cast<std::size_t>(resolution_);
  }
  return p;
}

double FunctionGrid::interpolate(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) < depth_)
    throw std::invalid_argument("FunctionGrid: query has fewer coordinates than the depth");
  const double h = 2.0 * radius_ / (resolution_ - 1);
  // per-axis cell index and fractional offset, clamped to the box
  int lo[6];
  double frac[6];
  for (int d = 0; d < depth_; ++d) {
    double t = (std::clamp(x[static_cast<std::size_t>(d)], -radius_, radius_) + radius_) / h;
    int i = static_cast<int>(std::floor(t));
    i = std::clamp(i, 0, resolution_ - 2);
    lo[d] = i;
    frac[d] = std::clamp(t - i, 0.0, 1.0);
  }
  // accumulate the 2^depth corners
  double out = 0.0;
  const int corners = 1 << depth_;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    std::size_t flat = 0;
    for (int d = 0; d < depth_; ++d) {
      const int hi = (c >> d) & 1;
      w *= hi ? frac[d] : (1.0 - frac[d]);
      flat = flat * static_cast<std::size_t>(resolution_) +
             static_cast<std::size_t>(lo[d] + hi);
    }
    out += w * values_[flat];
  }
  return out;
}

double FunctionGrid::interpolate(const TruncatedVector& x) const {
  return interpolate(x.coords);
}

double FunctionGrid::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double FunctionGrid::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

double FunctionGrid::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace lindyn

#pragma once

#include <functional>
#include <vector>

#include "lindyn/space.hpp"

namespace lindyn {

// Tensor-product grid for a cylinder function of the first `depth`
// coordinates: `resolution` uniformly spaced points per axis on
// [-radius, radius], multilinear interpolation, clamped at the box boundary.
class FunctionGrid {
 public:
  FunctionGrid() = default;
  FunctionGrid(int depth, double radius, int resolution, double fill = 1.0);

  static FunctionGrid from_function(int depth, double radius, int resolution,
                                    const std::function<double(const std::vector<double>&)>& f);

  int depth() const { return depth_; }
  double radius() const { return radius_; }
  int resolution() const { return resolution_; }
  std::size_t size() const { return values_.size(); }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double axis_point(int idx) const;
  // Coordinates of the grid point with the given flat index.
  std::vector<double> point(std::size_t flat) const;

  // Multilinear interpolation on the leading coordinates of x; queries
  // outside the box are clamped to the boundary.
  double interpolate(const std::vector<double>& x) const;
  double interpolate(const TruncatedVector& x) const;

  double min_value() const;
  double max_value() const;
  double sup_norm() const;

  bool same_layout(const FunctionGrid& o) const {
    return depth_ == o.depth_ && radius_ == o.radius_ && resolution_ == o.resolution_;
  }

 private:
  int depth_ = 0;
  double radius_ = 0.0;
  int resolution_ = 0;
  std::vector<double> values_;
};

}  // namespace lindyn

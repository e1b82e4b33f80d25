#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lindyn {

// Norm carried by a truncated sequence space: either the sup norm of
// c_0-type spaces or the l^p norm, p >= 1.
enum class NormKind { Sup, Lp };

struct SpaceSpec {
  NormKind kind = NormKind::Lp;
  double p = 1.0;    // only meaningful for NormKind::Lp
  int dim = 64;      // truncation depth N

  static SpaceSpec sup(int dim);
  static SpaceSpec lp(double p, int dim);
  static SpaceSpec l1(int dim) { return lp(1.0, dim); }
  static SpaceSpec l2(int dim) { return lp(2.0, dim); }

  bool operator==(const SpaceSpec& o) const {
    return kind == o.kind && dim == o.dim && (kind == NormKind::Sup || p == o.p);
  }
  bool operator!=(const SpaceSpec& o) const { return !(*this == o); }

  std::string describe() const;
};

// A point of the space represented by its first N basis coordinates.
// Immutable by convention: operations return fresh vectors.
struct TruncatedVector {
  std::vector<double> coords;
  SpaceSpec space;

  TruncatedVector() = default;
  TruncatedVector(std::vector<double> c, SpaceSpec s);

  static TruncatedVector zero(const SpaceSpec& s);

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
};

double norm(const TruncatedVector& v);
double distance(const TruncatedVector& u, const TruncatedVector& v);

// Zeroes every coordinate beyond depth (1-based); idempotent.
TruncatedVector project_depth(const TruncatedVector& v, int depth);

TruncatedVector add(const TruncatedVector& u, const TruncatedVector& v);
TruncatedVector sub(const TruncatedVector& u, const TruncatedVector& v);
TruncatedVector scale(const TruncatedVector& v, double c);

}  // namespace lindyn

#include "lindyn/space.hpp"

#include <cmath>
#include <stdexcept>

namespace lindyn {

SpaceSpec SpaceSpec::sup(int dim) {
  if (dim < 1) throw std::invalid_argument("SpaceSpec: truncation dim must be >= 1");
  SpaceSpec s;
  s.kind = NormKind::Sup;
  s.p = 0.0;
  s.dim = dim;
  return s;
}

SpaceSpec SpaceSpec::lp(double p, int dim) {
  if (p < 1.0) throw std::invalid_argument("SpaceSpec: l^p norm requires p >= 1");
  if (dim < 1) throw std::invalid_argument("SpaceSpec: truncation dim must be >= 1");
  SpaceSpec s;
  s.kind = NormKind::Lp;
  s.p = p;
  s.dim = dim;
  return s;
}

std::string SpaceSpec::describe() const {
  if (kind == NormKind::Sup) return "sup(N=" + std::to_string(dim) + ")";
  return "l" + std::to_string(p) + "(N=" + std::to_string(dim) + ")";
}

TruncatedVector::TruncatedVector(std::vector<double> c, SpaceSpec s)
    : coords(std::move(c)), space(s) {
  if (static_cast<int>(coords.size()) != space.dim)
    throw std::invalid_argument("TruncatedVector: coordinate count does not match space dim");
  for (double x : coords)
    if (!std::isfinite(x))
      throw std::invalid_argument("TruncatedVector: non-finite coordinate");
}

TruncatedVector TruncatedVector::zero(const SpaceSpec& s) {
  return TruncatedVector(std::vector<double>(static_cast<std::size_t>(s.dim), 0.0), s);
}

double norm(const TruncatedVector& v) {
  if (v.space.kind == NormKind::Sup) {
    double m = 0.0;
    for (double x : v.coords) m = std::max(m, std::abs(x));
    return m;
  }
  const double p = v.space.p;
  if (p == 1.0) {
    double s = 0.0;
    for (double x : v.coords) s += std::abs(x);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double x : v.coords) s += x * x;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double x : v.coords) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

double distance(const TruncatedVector& u, const TruncatedVector& v) {
  if (u.space != v.space)
    throw std::invalid_argument("distance: vectors live in different spaces");
  return norm(sub(u, v));
}

TruncatedVector project_depth(const TruncatedVector& v, int depth) {
  if (depth < 1 || depth > v.space.dim)
    throw std::invalid_argument("project_depth: depth out of range [1, N]");
  std::vector<double> c = v.coords;
  for (std::size_t i = static_cast<std::size_t>(depth); i < c.size(); ++i) c[i] = 0.0;
  return TruncatedVector(std::move(c), v.space);
}

TruncatedVector add(const TruncatedVector& u, const TruncatedVector& v) {
  if (u.space != v.space) throw std::invalid_argument("add: space mismatch");
  std::vector<double> c(u.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = u.coords[i] + v.coords[i];
  return TruncatedVector(std::move(c), u.space);
}

TruncatedVector sub(const TruncatedVector& u, const TruncatedVector& v) {
  if (u.space != v.space) throw std::invalid_argument("sub: space mismatch");
  std::vector<double> c(u.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = u.coords[i] - v.coords[i];
  return TruncatedVector(std::move(c), u.space);
}

TruncatedVector scale(const TruncatedVector& v, double c) {
  std::vector<double> out(v.coords.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * v.coords[i];
  return TruncatedVector(std::move(out), v.space);
}

}  // namespace lindyn

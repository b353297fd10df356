#include "pauli/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pauli/errors.hpp"

namespace pauli {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

Grid Grid::make(int dim, std::array<std::size_t, 3> n, Vec3 spacing, Vec3 origin, std::size_t point_budget) {
  if (dim < 1 || dim > 3) throw ValidationError("grid: dim must be 1, 2 or 3, got " + std::to_string(dim));
  Grid g;
  g.dim_ = dim;
  for (int axis = 0; axis < 3; ++axis) {
    if (axis < dim) {
      if (n[axis] < 8 || !is_power_of_two(n[axis]))
        throw ValidationError("grid: n on axis " + std::to_string(axis) +
                              " must be a power of two >= 8, got " + std::to_string(n[axis]));
      if (!(spacing[axis] > 0.0) || !std::isfinite(spacing[axis]))
        throw ValidationError("grid: spacing on axis " + std::to_string(axis) + " must be positive");
      if (!std::isfinite(origin[axis])) throw ValidationError("grid: origin must be finite");
      g.n_[axis] = n[axis];
      g.h_[axis] = spacing[axis];
      g.origin_[axis] = origin[axis];
    }
  }
  if (g.size() > point_budget)
    throw ValidationError("grid: " + std::to_string(g.size()) + " points exceed the budget of " +
                          std::to_string(point_budget));
  return g;
}

Grid Grid::centered(int dim, std::array<std::size_t, 3> n, Vec3 extent, std::size_t point_budget) {
  Vec3 spacing{1.0, 1.0, 1.0};
  Vec3 origin{0.0, 0.0, 0.0};
  for (int axis = 0; axis < dim && axis < 3; ++axis) {
    spacing[axis] = n[axis] ? extent[axis] / static_cast<double>(n[axis]) : 0.0;
    origin[axis] = -0.5 * extent[axis];
  }
  return make(dim, n, spacing, origin, point_budget);
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int axis = 0; axis < dim_; ++axis) v *= h_[axis];
  return v;
}

std::array<std::size_t, 3> Grid::index(std::size_t flat) const {
  const std::size_t iz = flat % n_[2];
  const std::size_t rest = flat / n_[2];
  return {rest / n_[1], rest % n_[1], iz};
}

Vec3 Grid::position(std::size_t flat) const {
  const auto idx = index(flat);
  Vec3 r{0.0, 0.0, 0.0};
  for (int axis = 0; axis < dim_; ++axis) r[axis] = coordinate(axis, idx[axis]);
  return r;
}

double Grid::wavenumber(int axis, std::size_t i) const {
  const auto n = static_cast<long long>(n_[axis]);
  long long m = static_cast<long long>(i);
  if (m >= n / 2) m -= n;
  return 2.0 * std::numbers::pi * static_cast<double>(m) / (static_cast<double>(n) * h_[axis]);
}

bool Grid::contains(const Vec3& r) const {
  for (int axis = 0; axis < dim_; ++axis) {
    const double lo = origin_[axis];
    const double hi = origin_[axis] + extent(axis);
    if (!(r[axis] >= lo && r[axis] < hi)) return false;
  }
  return true;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::max() const {
  double m = -INFINITY;
  for (double v : values) m = std::max(m, v);
  return m;
}

VectorField VectorField::zeros(const Grid& grid) {
  VectorField v;
  v.grid = grid;
  for (auto& c : v.components) c.assign(grid.size(), 0.0);
  return v;
}

double VectorField::max_norm() const {
  double m = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double len = std::sqrt(components[0][k] * components[0][k] + components[1][k] * components[1][k] +
                                 components[2][k] * components[2][k]);
    m = std::max(m, len);
  }
  return m;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int c = 0; c < 3; ++c)
    for (std::size_t k = 0; k < components[c].size(); ++k) components[c][k] += o.components[c][k];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  for (int c = 0; c < 3; ++c)
    for (std::size_t k = 0; k < components[c].size(); ++k) components[c][k] -= o.components[c][k];
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& comp : components)
    for (double& v : comp) v *= s;
  return *this;
}

Vec3 integrate(const VectorField& v) {
  Vec3 sum{0.0, 0.0, 0.0};
  for (int c = 0; c < 3; ++c)
    for (double x : v.components[c]) sum[c] += x;
  const double w = v.grid.cell_volume();
  return {sum[0] * w, sum[1] * w, sum[2] * w};
}

double integrate(const ScalarField& f) {
  double sum = 0.0;
  for (double x : f.values) sum += x;
  return sum * f.grid.cell_volume();
}

Vec3 integrate_moment(const VectorField& v) {
  Vec3 sum{0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < v.grid.size(); ++k) {
    const Vec3 m = cross(v.grid.position(k), v.at(k));
    for (int c = 0; c < 3; ++c) sum[c] += m[c];
  }
  const double w = v.grid.cell_volume();
  return {sum[0] * w, sum[1] * w, sum[2] * w};
}

}  // namespace pauli

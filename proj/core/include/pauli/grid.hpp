#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace pauli {

using Vec3 = std::array<double, 3>;
using Complex = std::complex<double>;
using ComplexArray = std::vector<Complex>;
using RealArray = std::vector<double>;

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Uniform periodic Cartesian grid in 1-3 dimensions. Axes beyond `dim`
/// have a single point and contribute no derivative. Flat indices are
/// row-major with x slowest: ((ix * ny) + iy) * nz + iz.
class Grid {
 public:
  static constexpr std::size_t kDefaultPointBudget = std::size_t{1} << 24;

  /// Throws ValidationError unless 1 <= dim <= 3, every used axis has a
  /// power-of-two count >= 8, spacing > 0 and the point count fits the budget.
  static Grid make(int dim, std::array<std::size_t, 3> n, Vec3 spacing, Vec3 origin,
                   std::size_t point_budget = kDefaultPointBudget);

  /// Spacing extent/n per axis; origin defaults to -extent/2 (centred box).
  static Grid centered(int dim, std::array<std::size_t, 3> n, Vec3 extent,
                       std::size_t point_budget = kDefaultPointBudget);

  int dim() const { return dim_; }
  std::size_t n(int axis) const { return n_[axis]; }
  const std::array<std::size_t, 3>& shape() const { return n_; }
  double h(int axis) const { return h_[axis]; }
  const Vec3& spacing() const { return h_; }
  const Vec3& origin() const { return origin_; }
  double extent(int axis) const { return h_[axis] * static_cast<double>(n_[axis]); }
  std::size_t size() const { return n_[0] * n_[1] * n_[2]; }

  /// h^dim, the quadrature weight of each point.
  double cell_volume() const;

  std::array<std::size_t, 3> index(std::size_t flat) const;
  std::size_t flat(std::size_t ix, std::size_t iy, std::size_t iz) const {
    return (ix * n_[1] + iy) * n_[2] + iz;
  }
  double coordinate(int axis, std::size_t i) const {
    return origin_[axis] + static_cast<double>(i) * h_[axis];
  }
  Vec3 position(std::size_t flat) const;

  /// Standard DFT wavenumber of mode i on `axis`, in [-pi/h, pi/h).
  double wavenumber(int axis, std::size_t i) const;

  /// True when r lies inside the half-open box [origin, origin + extent)
  /// on every used axis.
  bool contains(const Vec3& r) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.h_ == b.h_ && a.origin_ == b.origin_;
  }

 private:
  int dim_ = 1;
  std::array<std::size_t, 3> n_{1, 1, 1};
  Vec3 h_{1.0, 1.0, 1.0};
  Vec3 origin_{0.0, 0.0, 0.0};
};

struct ScalarField {
  Grid grid;
  RealArray values;

  static ScalarField zeros(const Grid& grid) { return {grid, RealArray(grid.size(), 0.0)}; }
  double max_abs() const;
  double max() const;
};

struct VectorField {
  Grid grid;
  std::array<RealArray, 3> components;

  static VectorField zeros(const Grid& grid);
  Vec3 at(std::size_t flat) const {
    return {components[0][flat], components[1][flat], components[2][flat]};
  }
  /// max over points of the Euclidean length.
  double max_norm() const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(double s, VectorField a) { return a *= s; }
};

/// Riemann-sum integral of a vector field: sum(v) h^dim.
Vec3 integrate(const VectorField& v);
double integrate(const ScalarField& f);

/// sum over points of r x v(r) h^dim, r measured from the coordinate origin.
Vec3 integrate_moment(const VectorField& v);

}  // namespace pauli

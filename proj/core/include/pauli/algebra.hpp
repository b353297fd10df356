#pragma once

// Exact Pauli / Dirac matrix machinery for the linearized Schroedinger
// equation. Every identity here is checked with zero tolerance over the
// Gaussian rationals; only theta_symbol works in floating point.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace pauli {

using Rational = boost::rational<std::int64_t>;

/// Complex number with rational real and imaginary parts.
class ExactComplex {
 public:
  constexpr ExactComplex() = default;
  ExactComplex(Rational re, Rational im = Rational(0)) : re_(re), im_(im) {}
  ExactComplex(std::int64_t re) : re_(re) {}  // NOLINT: integers promote

  static ExactComplex i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.numerator() == 0 && im_.numerator() == 0; }
  ExactComplex conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const;

  ExactComplex operator-() const { return {-re_, -im_}; }
  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& operator/=(const ExactComplex& o);  // throws on zero divisor

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const ExactComplex& z);
std::string to_string(const ExactComplex& z);

/// Dense N x N matrix, row-major. Used with ExactComplex for the algebra
/// checks and with std::complex<double> for the Fourier symbol.
template <typename T, std::size_t N>
class SquareMatrix {
 public:
  static constexpr std::size_t kDim = N;

  SquareMatrix() { entries_.fill(T(0)); }
  explicit SquareMatrix(const std::array<T, N * N>& entries) : entries_(entries) {}

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t k = 0; k < N; ++k) m(k, k) = T(1);
    return m;
  }
  static SquareMatrix zero() { return SquareMatrix(); }

  T& operator()(std::size_t r, std::size_t c) { return entries_[r * N + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return entries_[r * N + c]; }

  SquareMatrix adjoint() const {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = conj_of((*this)(r, c));
    return out;
  }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) entries_[k] += o.entries_[k];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) entries_[k] -= o.entries_[k];
    return *this;
  }
  SquareMatrix& operator*=(const T& s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator-(SquareMatrix a) { return a *= T(-1); }
  friend SquareMatrix operator*(SquareMatrix a, const T& s) { return a *= s; }
  friend SquareMatrix operator*(const T& s, SquareMatrix a) { return a *= s; }
  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) {
        T acc(0);
        for (std::size_t k = 0; k < N; ++k) acc += a(r, k) * b(k, c);
        out(r, c) = acc;
      }
    return out;
  }
  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.entries_ == b.entries_;
  }

  const std::array<T, N * N>& entries() const { return entries_; }

 private:
  static T conj_of(const T& v) {
    if constexpr (std::is_same_v<T, ExactComplex>) {
      return v.conj();
    } else {
      return std::conj(v);
    }
  }

  std::array<T, N * N> entries_;
};

using Matrix2 = SquareMatrix<ExactComplex, 2>;
using Matrix4 = SquareMatrix<ExactComplex, 4>;
using ComplexMatrix2 = SquareMatrix<std::complex<double>, 2>;
using ComplexMatrix4 = SquareMatrix<std::complex<double>, 4>;

template <typename T, std::size_t N>
std::ostream& operator<<(std::ostream& os, const SquareMatrix<T, N>& m) {
  for (std::size_t r = 0; r < N; ++r) {
    os << (r == 0 ? "[[" : " [");
    for (std::size_t c = 0; c < N; ++c) os << (c ? ", " : "") << m(r, c);
    os << (r + 1 == N ? "]]" : "]\n");
  }
  return os;
}

/// mn + nm. Dimension agreement is enforced by the type.
template <typename T, std::size_t N>
SquareMatrix<T, N> anticommutator(const SquareMatrix<T, N>& m, const SquareMatrix<T, N>& n) {
  return m * n + n * m;
}

/// Standard-representation Pauli matrix sigma_i, i in {1, 2, 3}.
/// Throws std::out_of_range otherwise.
Matrix2 pauli_matrix(int i);

/// Block layout [[m11 N, m12 N], [m21 N, m22 N]].
Matrix4 kron(const Matrix2& m, const Matrix2& n);

/// Exact 4x4 determinant (fraction-free cofactor expansion).
ExactComplex determinant(const Matrix4& m);

/// v1 sigma_1 + v2 sigma_2 + v3 sigma_3.
Matrix2 sigma_dot(const std::array<ExactComplex, 3>& v);
ComplexMatrix2 sigma_dot(const std::array<double, 3>& v);

enum class RepKind { Original, Convenient };

/// Sign applied to i in the B4/B5 <-> A/C relations. Printed uses
/// B5 = -(i/2)(A/a - C/b), i.e. A = a(B4 + i B5), C = b(B4 - i B5).
enum class ImaginarySign { Printed, Flipped };

std::string to_string(RepKind kind);

/// Five matrices of the Dirac algebra plus the linearization operators
/// A and C built from them for a chosen a (b = -1/(2a)).
struct DiracRep {
  RepKind kind = RepKind::Convenient;
  ImaginarySign sign = ImaginarySign::Printed;
  std::array<Matrix4, 5> b;
  ExactComplex a;
  ExactComplex b_param;
  Matrix4 A;
  Matrix4 C;
};

/// Throws std::invalid_argument if a == 0.
DiracRep dirac_rep(RepKind kind, const ExactComplex& a,
                   ImaginarySign sign = ImaginarySign::Printed);

/// Rebuilds A and C after the caller has edited rep.b (fault injection).
DiracRep rebuild_linear_operators(DiracRep rep);

/// One named identity check. `residual` is lhs - rhs; it is zero iff passed.
struct ConditionCheck {
  std::string name;
  bool passed = false;
  bool gated = true;  // informational rows do not affect all_passed()
  Matrix4 residual;
};

struct ConditionReport {
  std::string title;
  std::vector<ConditionCheck> checks;

  bool all_passed() const;
  std::size_t gated_count() const;
  std::size_t passed_count() const;
  std::vector<const ConditionCheck*> failures() const;
};

/// Prints one aligned line per check plus failing residuals.
std::ostream& operator<<(std::ostream& os, const ConditionReport& report);

/// A^2 = 0, C^2 = 0, {A,C} = -2I, {A,B_i} = 0, {C,B_i} = 0,
/// {B_i,B_j} = 2 delta_ij I for i, j in 1..3; plus informational det(A), det(C).
ConditionReport check_linearization_conditions(const DiracRep& rep);

/// All 15 unordered pairs mu <= nu of {B_mu, B_nu} = 2 delta I.
ConditionReport check_dirac_algebra(const std::array<Matrix4, 5>& b);

/// B1 B2 B3 B4; throws std::invalid_argument if the four inputs do not
/// themselves satisfy the Dirac algebra.
Matrix4 fifth_matrix(const std::array<Matrix4, 4>& b);

/// theta(k, omega) = (A/c) hbar omega + B_i hbar k_i + m c C, with
/// hbar = c = 1.
ComplexMatrix4 theta_symbol(const DiracRep& rep, const std::array<double, 3>& k, double omega,
                            double mass = 1.0);

template <typename T, std::size_t N>
SquareMatrix<std::complex<double>, N> to_complex(const SquareMatrix<T, N>& m) {
  SquareMatrix<std::complex<double>, N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) {
      if constexpr (std::is_same_v<T, ExactComplex>) {
        out(r, c) = m(r, c).to_complex();
      } else {
        out(r, c) = m(r, c);
      }
    }
  return out;
}

}  // namespace pauli

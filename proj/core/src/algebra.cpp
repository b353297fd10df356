#include "pauli/algebra.hpp"

#include <boost/rational.hpp>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace pauli {

namespace {

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

const Matrix2& identity2() {
  static const Matrix2 id = Matrix2::identity();
  return id;
}

const Matrix4& identity4() {
  static const Matrix4 id = Matrix4::identity();
  return id;
}

ConditionCheck make_check(std::string name, const Matrix4& lhs, const Matrix4& rhs) {
  ConditionCheck check;
  check.name = std::move(name);
  check.residual = lhs - rhs;
  check.passed = check.residual == Matrix4::zero();
  return check;
}

ExactComplex det3(const Matrix4& m, std::array<std::size_t, 3> rows, std::array<std::size_t, 3> cols) {
  auto e = [&](std::size_t r, std::size_t c) { return m(rows[r], cols[c]); };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
         e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

}  // namespace

std::complex<double> ExactComplex::to_complex() const { return {to_double(re_), to_double(im_)}; }

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  const Rational re = re_ * o.re_ - im_ * o.im_;
  const Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = re;
  im_ = im;
  return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) {
  const Rational den = o.norm2();
  if (den.numerator() == 0) throw std::domain_error("ExactComplex: division by zero");
  *this *= o.conj();
  re_ /= den;
  im_ /= den;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const ExactComplex& z) { return os << to_string(z); }

std::string to_string(const ExactComplex& z) {
  if (z.im().numerator() == 0) return rational_text(z.re());
  // i/2 rather than 1/2i, which reads as 1/(2i)
  auto imag_text = [](const Rational& r) {
    const auto n = r.numerator();
    std::string out = n == 1 ? "i" : n == -1 ? "-i" : std::to_string(n) + "i";
    if (r.denominator() != 1) out += "/" + std::to_string(r.denominator());
    return out;
  };
  if (z.re().numerator() == 0) return imag_text(z.im());
  const std::string im = imag_text(z.im());
  return rational_text(z.re()) + (im.front() == '-' ? im : "+" + im);
}

Matrix2 pauli_matrix(int i) {
  const ExactComplex I = ExactComplex::i();
  switch (i) {
    case 1:
      return Matrix2({0, 1, 1, 0});
    case 2:
      return Matrix2({0, -I, I, 0});
    case 3:
      return Matrix2({1, 0, 0, -1});
    default:
      throw std::out_of_range("pauli_matrix: index must be 1, 2 or 3, got " + std::to_string(i));
  }
}

Matrix4 kron(const Matrix2& m, const Matrix2& n) {
  Matrix4 out;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out(r, c) = m(r / 2, c / 2) * n(r % 2, c % 2);
  return out;
}

ExactComplex determinant(const Matrix4& m) {
  ExactComplex det;
  for (std::size_t c = 0; c < 4; ++c) {
    std::array<std::size_t, 3> cols{};
    for (std::size_t k = 0, j = 0; k < 4; ++k)
      if (k != c) cols[j++] = k;
    const ExactComplex minor = det3(m, {1, 2, 3}, cols);
    const ExactComplex term = m(0, c) * minor;
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

Matrix2 sigma_dot(const std::array<ExactComplex, 3>& v) {
  Matrix2 out;
  for (int i = 0; i < 3; ++i) out += pauli_matrix(i + 1) * v[i];
  return out;
}

ComplexMatrix2 sigma_dot(const std::array<double, 3>& v) {
  using C = std::complex<double>;
  return ComplexMatrix2({C(v[2], 0), C(v[0], -v[1]), C(v[0], v[1]), C(-v[2], 0)});
}

std::string to_string(RepKind kind) { return kind == RepKind::Original ? "original" : "convenient"; }

DiracRep rebuild_linear_operators(DiracRep rep) {
  const ExactComplex i_signed =
      rep.sign == ImaginarySign::Printed ? ExactComplex::i() : -ExactComplex::i();
  rep.A = rep.a * (rep.b[3] + i_signed * rep.b[4]);
  rep.C = rep.b_param * (rep.b[3] - i_signed * rep.b[4]);
  return rep;
}

DiracRep dirac_rep(RepKind kind, const ExactComplex& a, ImaginarySign sign) {
  if (a.is_zero()) throw std::invalid_argument("dirac_rep: a must be nonzero");
  DiracRep rep;
  rep.kind = kind;
  rep.sign = sign;
  rep.a = a;
  rep.b_param = ExactComplex(-1) / (ExactComplex(2) * a);

  const Matrix2 s1 = pauli_matrix(1);
  const Matrix2 s3 = pauli_matrix(3);
  const Matrix2 outer = kind == RepKind::Original ? s1 : s3;
  for (int i = 0; i < 3; ++i) rep.b[i] = kron(outer, pauli_matrix(i + 1));
  rep.b[3] = kron(kind == RepKind::Original ? s3 : s1, identity2());
  rep.b[4] = fifth_matrix({rep.b[0], rep.b[1], rep.b[2], rep.b[3]});
  return rebuild_linear_operators(std::move(rep));
}

bool ConditionReport::all_passed() const {
  for (const auto& c : checks)
    if (c.gated && !c.passed) return false;
  return true;
}

std::size_t ConditionReport::gated_count() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.gated ? 1 : 0;
  return n;
}

std::size_t ConditionReport::passed_count() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += (c.gated && c.passed) ? 1 : 0;
  return n;
}

std::vector<const ConditionCheck*> ConditionReport::failures() const {
  std::vector<const ConditionCheck*> out;
  for (const auto& c : checks)
    if (c.gated && !c.passed) out.push_back(&c);
  return out;
}

std::ostream& operator<<(std::ostream& os, const ConditionReport& report) {
  std::size_t width = 0;
  for (const auto& c : report.checks) width = std::max(width, c.name.size());
  os << report.title << '\n';
  for (const auto& c : report.checks) {
    os << "  " << std::left << std::setw(static_cast<int>(width)) << c.name << "  ";
    if (!c.gated) {
      os << "info  " << (c.passed ? "holds" : "does not hold") << '\n';
      continue;
    }
    os << (c.passed ? "pass" : "FAIL") << '\n';
    if (!c.passed) {
      std::ostringstream residual;
      residual << c.residual;
      std::istringstream lines(residual.str());
      std::string line;
      os << "    residual:\n";
      while (std::getline(lines, line)) os << "      " << line << '\n';
    }
  }
  os << "  " << report.passed_count() << '/' << report.gated_count() << " conditions pass\n";
  return os;
}

ConditionReport check_linearization_conditions(const DiracRep& rep) {
  ConditionReport report;
  report.title = "linearization conditions (" + to_string(rep.kind) + ", a = " + to_string(rep.a) +
                 ", b = " + to_string(rep.b_param) + ")";
  const Matrix4& A = rep.A;
  const Matrix4& C = rep.C;
  const Matrix4 zero = Matrix4::zero();
  const Matrix4& I = identity4();

  report.checks.push_back(make_check("A^2 = 0", A * A, zero));
  report.checks.push_back(make_check("C^2 = 0", C * C, zero));
  report.checks.push_back(make_check("AC + CA = -2I", anticommutator(A, C), ExactComplex(-2) * I));
  for (int i = 0; i < 3; ++i) {
    const std::string idx = std::to_string(i + 1);
    report.checks.push_back(make_check("AB" + idx + " + B" + idx + "A = 0", anticommutator(A, rep.b[i]), zero));
  }
  for (int i = 0; i < 3; ++i) {
    const std::string idx = std::to_string(i + 1);
    report.checks.push_back(make_check("CB" + idx + " + B" + idx + "C = 0", anticommutator(C, rep.b[i]), zero));
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const std::string name = "B" + std::to_string(i + 1) + "B" + std::to_string(j + 1) + " + B" +
                               std::to_string(j + 1) + "B" + std::to_string(i + 1) + " = " +
                               (i == j ? "2I" : "0");
      report.checks.push_back(
          make_check(name, anticommutator(rep.b[i], rep.b[j]), i == j ? ExactComplex(2) * I : zero));
    }

  // A and C are singular; reported, not gated.
  for (const auto& [label, m] : {std::pair<const char*, const Matrix4*>{"det A = 0", &A}, {"det C = 0", &C}}) {
    ConditionCheck info;
    info.name = label;
    info.gated = false;
    const ExactComplex det = determinant(*m);
    info.passed = det.is_zero();
    info.residual = Matrix4::identity() * det;
    report.checks.push_back(std::move(info));
  }
  return report;
}

ConditionReport check_dirac_algebra(const std::array<Matrix4, 5>& b) {
  ConditionReport report;
  report.title = "Dirac algebra {B_mu, B_nu} = 2 delta_mu_nu I";
  const Matrix4& I = identity4();
  for (std::size_t mu = 0; mu < 5; ++mu)
    for (std::size_t nu = mu; nu < 5; ++nu) {
      const std::string name = "{B" + std::to_string(mu + 1) + ", B" + std::to_string(nu + 1) + "} = " +
                               (mu == nu ? "2I" : "0");
      report.checks.push_back(
          make_check(name, anticommutator(b[mu], b[nu]), mu == nu ? ExactComplex(2) * I : Matrix4::zero()));
    }
  return report;
}

Matrix4 fifth_matrix(const std::array<Matrix4, 4>& b) {
  const Matrix4& I = identity4();
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = p; q < 4; ++q) {
      const Matrix4 expected = p == q ? ExactComplex(2) * I : Matrix4::zero();
      if (!(anticommutator(b[p], b[q]) == expected))
        throw std::invalid_argument("fifth_matrix: inputs violate {B" + std::to_string(p + 1) + ", B" +
                                    std::to_string(q + 1) + "} = " + (p == q ? "2I" : "0"));
    }
  return b[0] * b[1] * b[2] * b[3];
}

ComplexMatrix4 theta_symbol(const DiracRep& rep, const std::array<double, 3>& k, double omega, double mass) {
  constexpr double hbar = 1.0;
  constexpr double c = 1.0;
  ComplexMatrix4 theta = to_complex(rep.A) * std::complex<double>(hbar * omega / c);
  for (int i = 0; i < 3; ++i) theta += to_complex(rep.b[i]) * std::complex<double>(hbar * k[i]);
  theta += to_complex(rep.C) * std::complex<double>(mass * c);
  return theta;
}

}  // namespace pauli

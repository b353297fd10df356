#include <gtest/gtest.h>

#include <random>

#include "pauli/algebra.hpp"

using namespace pauli;

namespace {

const ExactComplex kI = ExactComplex::i();

ExactComplex frac(std::int64_t n, std::int64_t d) { return ExactComplex(Rational(n, d)); }

Matrix2 m2(ExactComplex a, ExactComplex b, ExactComplex c, ExactComplex d) { return Matrix2({a, b, c, d}); }

// 2x2 block (br, bc) of a 4x4 matrix
Matrix2 block(const Matrix4& m, int br, int bc) {
  return m2(m(2 * br, 2 * bc), m(2 * br, 2 * bc + 1), m(2 * br + 1, 2 * bc), m(2 * br + 1, 2 * bc + 1));
}

bool has_failure(const ConditionReport& r, const std::string& name) {
  for (const auto* c : r.failures())
    if (c->name == name) return true;
  return false;
}

}  // namespace

TEST(Pauli, StandardRepresentation) {
  EXPECT_EQ(pauli_matrix(1), m2(0, 1, 1, 0));
  EXPECT_EQ(pauli_matrix(2), m2(0, -kI, kI, 0));
  EXPECT_EQ(pauli_matrix(3), m2(1, 0, 0, -1));
  EXPECT_THROW(pauli_matrix(0), std::out_of_range);
  EXPECT_THROW(pauli_matrix(4), std::out_of_range);
}

TEST(Pauli, TripleProductIsIIdentity) {
  EXPECT_EQ(pauli_matrix(1) * pauli_matrix(2) * pauli_matrix(3), kI * Matrix2::identity());
}

TEST(Kron, BlockLayout) {
  const Matrix2 s1 = pauli_matrix(1);
  const Matrix4 k = kron(s1, s1);
  EXPECT_EQ(block(k, 0, 0), Matrix2::zero());
  EXPECT_EQ(block(k, 0, 1), s1);
  EXPECT_EQ(block(k, 1, 0), s1);
  EXPECT_EQ(block(k, 1, 1), Matrix2::zero());

  EXPECT_EQ(kron(Matrix2::identity(), Matrix2::identity()), Matrix4::identity());

  const Matrix4 k32 = kron(pauli_matrix(3), pauli_matrix(2));
  EXPECT_EQ(block(k32, 0, 0), pauli_matrix(2));
  EXPECT_EQ(block(k32, 1, 1), -pauli_matrix(2));
  EXPECT_EQ(block(k32, 0, 1), Matrix2::zero());
}

TEST(Anticommutator, PauliPairs) {
  EXPECT_EQ(anticommutator(pauli_matrix(1), pauli_matrix(2)), Matrix2::zero());
  EXPECT_EQ(anticommutator(pauli_matrix(1), pauli_matrix(1)), ExactComplex(2) * Matrix2::identity());
  const DiracRep rep = dirac_rep(RepKind::Convenient, frac(-1, 2));
  EXPECT_EQ(anticommutator(rep.b[3], rep.b[4]), Matrix4::zero());
}

TEST(DiracRep, ConvenientAHasSingleLowerLeftBlock) {
  const DiracRep rep = dirac_rep(RepKind::Convenient, frac(-1, 2));
  EXPECT_EQ(block(rep.A, 1, 0), -Matrix2::identity());
  EXPECT_EQ(block(rep.A, 0, 0), Matrix2::zero());
  EXPECT_EQ(block(rep.A, 0, 1), Matrix2::zero());
  EXPECT_EQ(block(rep.A, 1, 1), Matrix2::zero());
  EXPECT_EQ(rep.b_param, ExactComplex(1));
}

TEST(DiracRep, OriginalFifthMatrixBlocks) {
  const DiracRep rep = dirac_rep(RepKind::Original, frac(-1, 2));
  const Matrix4& b5 = rep.b[4];
  EXPECT_EQ(block(b5, 0, 1), -kI * Matrix2::identity());
  EXPECT_EQ(block(b5, 1, 0), kI * Matrix2::identity());
  EXPECT_EQ(block(b5, 0, 0), Matrix2::zero());
  EXPECT_EQ(block(b5, 1, 1), Matrix2::zero());
}

TEST(DiracRep, ImaginaryAGivesImaginaryB) {
  const DiracRep rep = dirac_rep(RepKind::Convenient, ExactComplex(Rational(0), Rational(1, 2)));
  EXPECT_EQ(rep.b_param, kI);
  EXPECT_EQ(ExactComplex(2) * rep.a * rep.b_param, ExactComplex(-1));
}

TEST(DiracRep, ZeroAIsRejected) { EXPECT_THROW(dirac_rep(RepKind::Original, ExactComplex(0)), std::invalid_argument); }

TEST(Linearization, ShippedRepresentationsPass) {
  for (RepKind kind : {RepKind::Convenient, RepKind::Original}) {
    for (const ExactComplex& a : {frac(-1, 2), frac(1, 2)}) {
      const ConditionReport r = check_linearization_conditions(dirac_rep(kind, a));
      EXPECT_TRUE(r.all_passed()) << r;
      EXPECT_EQ(r.gated_count(), 15u);
    }
  }
}

TEST(Linearization, SweepOverAAndSign) {
  const std::vector<ExactComplex> values = {frac(1, 2),
                                            frac(-1, 2),
                                            ExactComplex(Rational(0), Rational(1, 2)),
                                            ExactComplex(Rational(0), Rational(-1, 2)),
                                            ExactComplex(1),
                                            ExactComplex(-1),
                                            frac(3, 7)};
  for (RepKind kind : {RepKind::Convenient, RepKind::Original})
    for (const auto& a : values)
      for (ImaginarySign sign : {ImaginarySign::Printed, ImaginarySign::Flipped}) {
        const DiracRep rep = dirac_rep(kind, a, sign);
        EXPECT_TRUE(check_linearization_conditions(rep).all_passed()) << to_string(kind) << " a=" << to_string(a);
        EXPECT_TRUE(check_dirac_algebra(rep.b).all_passed());
        EXPECT_EQ(ExactComplex(2) * rep.a * rep.b_param, ExactComplex(-1));
      }
}

TEST(Linearization, ReplacingB5ByB4BreaksNilpotency) {
  DiracRep rep = dirac_rep(RepKind::Convenient, frac(-1, 2));
  rep.b[4] = rep.b[3];
  rep = rebuild_linear_operators(rep);
  // A = a(1 + i) B4, whose square is 2 i a^2 I
  EXPECT_EQ(rep.A * rep.A, ExactComplex(Rational(0), Rational(1, 2)) * Matrix4::identity());
  const ConditionReport r = check_linearization_conditions(rep);
  EXPECT_FALSE(r.all_passed());
  EXPECT_TRUE(has_failure(r, "A^2 = 0"));
  EXPECT_TRUE(has_failure(check_dirac_algebra(rep.b), "{B4, B5} = 0"));
}

TEST(Linearization, DeterminantsAreInformational) {
  const ConditionReport r = check_linearization_conditions(dirac_rep(RepKind::Convenient, frac(-1, 2)));
  std::size_t info = 0;
  for (const auto& c : r.checks) info += c.gated ? 0 : 1;
  EXPECT_EQ(info, 2u);
  EXPECT_EQ(r.checks.size(), r.gated_count() + info);
}

TEST(DiracAlgebra, FifteenPairsForBothRepresentations) {
  for (RepKind kind : {RepKind::Convenient, RepKind::Original}) {
    const ConditionReport r = check_dirac_algebra(dirac_rep(kind, frac(-1, 2)).b);
    EXPECT_EQ(r.gated_count(), 15u);
    EXPECT_EQ(r.passed_count(), 15u);
  }
}

TEST(DiracAlgebra, CommutingTensorFactorsFail) {
  const Matrix2 id = Matrix2::identity();
  std::array<Matrix4, 5> b{kron(pauli_matrix(1), id), kron(pauli_matrix(2), id), kron(pauli_matrix(3), id),
                           kron(id, pauli_matrix(1)), Matrix4()};
  b[4] = b[0] * b[1] * b[2] * b[3];
  const ConditionReport r = check_dirac_algebra(b);
  EXPECT_FALSE(r.all_passed());
  EXPECT_TRUE(has_failure(r, "{B1, B4} = 0"));
}

TEST(FifthMatrix, ReproducesRepresentationsAndSquaresToIdentity) {
  for (RepKind kind : {RepKind::Convenient, RepKind::Original}) {
    const DiracRep rep = dirac_rep(kind, frac(1, 2));
    const Matrix4 b5 = fifth_matrix({rep.b[0], rep.b[1], rep.b[2], rep.b[3]});
    EXPECT_EQ(b5, rep.b[4]);
    EXPECT_EQ(b5 * b5, Matrix4::identity());
    for (int p = 0; p < 4; ++p) EXPECT_EQ(b5 * rep.b[p], -(rep.b[p] * b5));
  }
}

TEST(FifthMatrix, RejectsInvalidInput) {
  const Matrix2 id = Matrix2::identity();
  EXPECT_THROW(fifth_matrix({kron(pauli_matrix(1), id), kron(pauli_matrix(2), id), kron(pauli_matrix(3), id),
                             kron(id, pauli_matrix(1))}),
               std::invalid_argument);
}

TEST(SigmaDot, ExactExamples) {
  const std::array<ExactComplex, 3> x{1, 0, 0}, y{0, 1, 0};
  EXPECT_EQ(sigma_dot(x) * sigma_dot(y), kI * pauli_matrix(3));

  const std::array<ExactComplex, 3> u{1, 1, 0}, v{1, -1, 0};
  const std::array<ExactComplex, 3> cross_uv{0, 0, -2};
  EXPECT_EQ(sigma_dot(u) * sigma_dot(v), kI * sigma_dot(cross_uv));

  const std::array<ExactComplex, 3> w{frac(3, 7), -2, frac(1, 3)};
  const ExactComplex len2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
  EXPECT_EQ(sigma_dot(w) * sigma_dot(w), len2 * Matrix2::identity());
}

TEST(SigmaDot, SpinIdentityRandomDraws) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::array<double, 3> a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
    const std::array<double, 3> axb{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    const double adotb = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    const ComplexMatrix2 lhs = sigma_dot(a) * sigma_dot(b);
    const ComplexMatrix2 rhs = adotb * ComplexMatrix2::identity() + std::complex<double>(0.0, 1.0) * sigma_dot(axb);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) worst = std::max(worst, std::abs(lhs(r, c) - rhs(r, c)));
  }
  EXPECT_LT(worst, 1e-13);
}

TEST(ThetaSymbol, SquareIsSchroedingerSymbol) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (RepKind kind : {RepKind::Convenient, RepKind::Original}) {
    const DiracRep rep = dirac_rep(kind, frac(-1, 2));
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const std::array<double, 3> k{u(rng), u(rng), u(rng)};
      const double omega = u(rng);
      const ComplexMatrix4 th = theta_symbol(rep, k, omega);
      const ComplexMatrix4 sq = th * th;
      const double target = k[0] * k[0] + k[1] * k[1] + k[2] * k[2] - 2.0 * omega;
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) worst = std::max(worst, std::abs(sq(r, c) - (r == c ? target : 0.0)));
    }
    EXPECT_LT(worst, 1e-12);
  }
}

TEST(ThetaSymbol, OnShellAndZeroSymbol) {
  const DiracRep rep = dirac_rep(RepKind::Convenient, frac(-1, 2));
  const ComplexMatrix4 on_shell = theta_symbol(rep, {1.0, 0.0, 0.0}, 0.5);
  const ComplexMatrix4 sq = on_shell * on_shell;
  for (const auto& e : sq.entries()) EXPECT_LT(std::abs(e), 1e-15);

  const ComplexMatrix4 th0 = theta_symbol(rep, {0.0, 0.0, 0.0}, 0.0);
  EXPECT_EQ(th0, to_complex(rep.C));
  const ComplexMatrix4 sq0 = th0 * th0;
  for (const auto& e : sq0.entries()) EXPECT_EQ(std::abs(e), 0.0);
}

TEST(ExactComplex, Arithmetic) {
  const ExactComplex z(Rational(1, 3), Rational(-2, 5));
  EXPECT_EQ(z * z.conj(), ExactComplex(z.norm2()));
  EXPECT_EQ((z / z), ExactComplex(1));
  EXPECT_THROW(z / ExactComplex(0), std::domain_error);
  EXPECT_EQ(to_string(ExactComplex(Rational(0), Rational(1, 2))), "i/2");
  EXPECT_EQ(to_string(ExactComplex(Rational(3, 7))), "3/7");
}

TEST(Determinant, KnownValues) {
  EXPECT_EQ(determinant(Matrix4::identity()), ExactComplex(1));
  const DiracRep rep = dirac_rep(RepKind::Original, frac(1, 2));
  EXPECT_EQ(determinant(rep.A), ExactComplex(0));
  EXPECT_EQ(determinant(rep.b[0]), ExactComplex(1));
}

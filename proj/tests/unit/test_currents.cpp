#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pauli/currents.hpp"
#include "pauli/errors.hpp"
#include "pauli/spectral.hpp"
#include "random_fields.hpp"

using namespace pauli;
using std::numbers::pi;

namespace {

double max_diff(const VectorField& a, const VectorField& b) { return (a - b).max_norm(); }

SpinorField spin_up_gaussian(const Grid& g, double sigma, std::array<Complex, 2> spinor = {Complex(1), Complex(0)}) {
  GaussianPacket pk;
  pk.width = {sigma, sigma, sigma};
  pk.spinor = spinor;
  return init_gaussian(g, pk);
}

const Grid& grid3() {
  static const Grid g = Grid::centered(3, {64, 64, 64}, {16, 16, 16});
  return g;
}

}  // namespace

TEST(Decompose, PlaneWaveCarriesConvectiveCurrentOnly) {
  const Grid g = Grid::centered(2, {16, 16, 1}, {2 * pi, 2 * pi, 1});
  const SpinorField f = init_plane_wave(g, {2.0, -1.0, 0.0}, {Complex(0.6), Complex(0.0, 0.8)});
  const CurrentDecomposition d = decompose_current(f, preset(Preset::Zero, {}), 0.0);
  const double rho = 1.0 / (4 * pi * pi);
  for (std::size_t n = 0; n < g.size(); ++n) {
    EXPECT_NEAR(d.j_conv.components[0][n], 2.0 * rho, 1e-14);
    EXPECT_NEAR(d.j_conv.components[1][n], -1.0 * rho, 1e-14);
  }
  EXPECT_LT(d.j_spin.max_norm(), 1e-15);
  EXPECT_EQ(d.j_gauge.max_norm(), 0.0);
}

TEST(Decompose, GaugeTermFollowsVectorPotential) {
  std::mt19937_64 rng(1);
  const Grid g = Grid::centered(2, {32, 32, 1}, {12, 12, 1});
  const SpinorField f = pauli::testing::random_smooth_spinor(g, rng);
  const Particle particle{-1.0, 2.0};
  const CurrentDecomposition d = decompose_current(f, preset(Preset::UniformBLandau, {{"B0", 0.8}}), 0.0, particle);
  const ScalarField rho = density(f);
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double ax = -0.8 * g.position(n)[1];
    EXPECT_NEAR(d.j_gauge.components[0][n], -(particle.charge / particle.mass) * ax * rho.values[n], 1e-15);
    EXPECT_EQ(d.j_gauge.components[1][n], 0.0);
  }
  EXPECT_LT(max_diff(d.j_total, d.j_conv + d.j_gauge + d.j_spin), 1e-15);
  EXPECT_LT(max_diff(d.without_spin(), d.j_conv + d.j_gauge), 1e-15);
}

TEST(SpinCurrent, SpinUpGaussianCirculates) {
  const Grid g = Grid::centered(2, {64, 64, 1}, {16, 16, 1});
  const SpinorField f = spin_up_gaussian(g, 1.0);
  const VectorField js = spin_current(f);
  const RealArray rho = density(f).values;
  const auto grad = spectral::gradient(g, rho);
  double scale = js.max_norm();
  for (std::size_t n = 0; n < g.size(); ++n) {
    // (hbar/2m) grad rho x z = (hbar/2m) (d_y rho, -d_x rho, 0)
    EXPECT_NEAR(js.components[0][n], 0.5 * grad[1][n], 1e-12 * scale);
    EXPECT_NEAR(js.components[1][n], -0.5 * grad[0][n], 1e-12 * scale);
  }
  const VectorField jm = mita_current(f);
  EXPECT_EQ(max_diff(0.5 * js, jm), 0.0);
}

TEST(Mita, SpinIntegralMatchesExpectation) {
  const SpinorField up = spin_up_gaussian(grid3(), 1.0);
  const Vec3 s = spin_from_mita(up);
  EXPECT_NEAR(s[2], 0.5, 1e-6);
  EXPECT_NEAR(s[0], 0.0, 1e-6);
  const double r = 1.0 / std::sqrt(2.0);
  const SpinorField x = spin_up_gaussian(grid3(), 1.0, {Complex(r), Complex(r)});
  const Vec3 sx = spin_from_mita(x);
  EXPECT_NEAR(sx[0], 0.5, 1e-6);
  EXPECT_NEAR(sx[2], 0.0, 1e-6);
  const Vec3 s0 = spin_from_mita(SpinorField::zeros(grid3()));
  EXPECT_EQ(s0, (Vec3{0.0, 0.0, 0.0}));
}

TEST(Mita, MomentRatios) {
  const SpinorField up = spin_up_gaussian(grid3(), 1.0);
  const Particle electron;
  EXPECT_NEAR(moment_from_spin_current(up, electron)[2], -0.5, 1e-6);
  EXPECT_NEAR(moment_from_current(mita_current(up, electron), electron)[2], -0.25, 1e-6);
  EXPECT_EQ(moment_from_spin_current(up, Particle{0.0, 1.0})[2], 0.0);
}

TEST(Mita, Preconditions) {
  const Grid g2 = Grid::centered(2, {32, 32, 1}, {8, 8, 1});
  EXPECT_THROW(spin_from_mita(spin_up_gaussian(g2, 1.0)), ValidationError);
  const Grid g = Grid::centered(3, {32, 32, 32}, {8, 8, 8});
  EXPECT_THROW(spin_from_mita(spin_up_gaussian(g, 1.0)), NumericalError);
  EXPECT_THROW(moment_from_spin_current(spin_up_gaussian(g, 1.0)), NumericalError);
}

TEST(Auxiliary, PlaneWave) {
  const Grid g = Grid::centered(1, {16, 1, 1}, {2 * pi, 1, 1});
  const SpinorField f = init_plane_wave(g, {3.0, 0, 0}, {Complex(1.0), Complex(0.0)});
  const SpinorField chi = auxiliary_spinor(f, preset(Preset::Zero, {}), 0.0);
  for (std::size_t n = 0; n < g.size(); ++n) {
    EXPECT_NEAR(std::abs(chi.comp[0][n]), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(chi.comp[1][n] - (-1.5) * f.comp[0][n]), 0.0, 1e-14);
  }
  SpinorField constant = SpinorField::zeros(g);
  for (auto& v : constant.comp[0]) v = Complex(0.3, 0.1);
  EXPECT_LT(auxiliary_spinor(constant, preset(Preset::Zero, {}), 0.0).max_abs(), 1e-15);
}

TEST(LevyLeblondCurrent, ZeroAuxiliaryAndGridMismatch) {
  std::mt19937_64 rng(2);
  const Grid g = Grid::centered(2, {16, 16, 1}, {8, 8, 1});
  const SpinorField f = pauli::testing::random_smooth_spinor(g, rng);
  EXPECT_EQ(levy_leblond_current(f, SpinorField::zeros(g)).max_norm(), 0.0);
  const Grid other = Grid::centered(2, {16, 16, 1}, {9, 8, 1});
  EXPECT_THROW(levy_leblond_current(f, SpinorField::zeros(other)), ValidationError);
}

TEST(LevyLeblondCurrent, MatchesDecompositionFreeAndLandau) {
  // psi itself (not only rho) must vanish at the periodic wrap
  const Grid g = Grid::centered(2, {64, 64, 1}, {20, 20, 1});
  GaussianPacket pk;
  pk.width = {1.0, 1.0, 1.0};
  pk.momentum = {0.5, 0.3, 0.0};
  pk.spinor = {Complex(0.6), Complex(0.0, 0.8)};
  const SpinorField f = init_gaussian(g, pk);
  EXPECT_LT(dual_route_difference(f, preset(Preset::Zero, {}), 0.0), 1e-10);
  EXPECT_LT(dual_route_difference(f, preset(Preset::UniformBLandau, {{"B0", 1.0}}), 0.0), 1e-10);
}

TEST(LevyLeblondResidual, ConsistentPairIsSmall) {
  std::mt19937_64 rng(8);
  const Grid g = Grid::centered(2, {64, 64, 1}, {20, 20, 1});
  pauli::testing::SmoothFieldOptions opts;
  opts.envelope_width = 0.8;
  const SpinorField f = pauli::testing::random_smooth_spinor(g, rng, opts);
  const Particle particle;
  const EMPotential p = preset(Preset::UniformBSymmetric, {{"B0", 1.0}});
  SpinorField dpsi = apply_hamiltonian(f, p, 0.0, particle);
  dpsi *= Complex(0.0, -1.0);
  const BispinorField bi{f, auxiliary_spinor(f, p, 0.0, particle)};
  EXPECT_LT(levy_leblond_residual(bi, p, 0.0, particle, dpsi).value(), 1e-9);
}

TEST(LevyLeblondResidual, PerturbedAuxiliaryScalesWithMass) {
  const Grid g = Grid::centered(2, {32, 32, 1}, {12, 12, 1});
  GaussianPacket pk;
  pk.width = {1.2, 1.2, 1.0};
  const SpinorField f = init_gaussian(g, pk);
  const Particle particle;
  const EMPotential p = preset(Preset::Zero, {});
  SpinorField dpsi = apply_hamiltonian(f, p, 0.0, particle);
  dpsi *= Complex(0.0, -1.0);
  const double eps = 1e-6;
  SpinorField chi = auxiliary_spinor(f, p, 0.0, particle);
  for (auto& v : chi.comp[1]) v += eps * f.max_abs();
  const LevyLeblondResidual r = levy_leblond_residual({f, chi}, p, 0.0, particle, dpsi);
  EXPECT_NEAR(r.constraint, 2.0 * eps, 1e-3 * eps);
  EXPECT_LT(r.dynamics, 1e-12);
}

TEST(LevyLeblondResidual, OnShellPlaneWave) {
  const Grid g = Grid::centered(1, {32, 1, 1}, {2 * pi, 1, 1});
  const SpinorField f = init_plane_wave(g, {2.0, 0, 0}, {Complex(0.0), Complex(1.0)});
  const EMPotential p = preset(Preset::Zero, {});
  SpinorField dpsi = f;
  dpsi *= Complex(0.0, -2.0);  // omega = k^2 / 2
  const LevyLeblondResidual r = levy_leblond_residual({f, auxiliary_spinor(f, p, 0.0)}, p, 0.0, Particle{}, dpsi);
  EXPECT_LT(r.value(), 1e-11);
}

TEST(Continuity, FreeGaussian3D) {
  GaussianPacket pk;
  pk.width = {1.0, 1.0, 1.0};
  pk.momentum = {2 * pi / 20, 0.0, -2 * pi / 20};  // periodic on the box
  pk.spinor = {Complex(0.6), Complex(0.0, 0.8)};
  // box wide enough that psi, not only rho, is negligible at the wrap
  const SpinorField f = init_gaussian(Grid::centered(3, {64, 64, 64}, {20, 20, 20}), pk);
  const EMPotential p = preset(Preset::Zero, {});
  const ScalarField with = continuity_residual(f, p, 0.0);
  const ScalarField without = continuity_residual(f, p, 0.0, Particle{}, false);
  EXPECT_LT(with.max_abs(), 1e-10);
  double diff = 0.0;
  for (std::size_t n = 0; n < f.grid.size(); ++n) diff = std::max(diff, std::abs(with.values[n] - without.values[n]));
  EXPECT_LT(diff, 1e-12);
}

TEST(Continuity, LandauRandomField) {
  std::mt19937_64 rng(9);
  const Grid g = Grid::centered(2, {64, 64, 1}, {16, 16, 1});
  pauli::testing::SmoothFieldOptions opts;
  opts.envelope_width = 0.8;
  const SpinorField f = pauli::testing::random_smooth_spinor(g, rng, opts);
  EXPECT_LT(continuity_residual(f, preset(Preset::UniformBLandau, {{"B0", 1.0}}), 0.0).max_abs(), 1e-9);
}

TEST(Continuity, DivergenceFreeAdditionsDoNotMatter) {
  std::mt19937_64 rng(10);
  const Grid g = Grid::centered(3, {32, 32, 32}, {12, 12, 12});
  VectorField w = VectorField::zeros(g);
  for (std::size_t n = 0; n < g.size(); ++n) {
    const Vec3 r = g.position(n);
    const double e = std::exp(-dot(r, r) / 4.0);
    w.components[0][n] = r[1] * e;
    w.components[1][n] = std::cos(r[2]) * e;
    w.components[2][n] = r[0] * r[1] * e;
  }
  const VectorField c = spectral::curl(w);
  const SpinorField f = pauli::testing::random_smooth_spinor(g, rng);
  const CurrentDecomposition d = decompose_current(f, preset(Preset::Zero, {}), 0.0);
  const ScalarField a = spectral::divergence(d.j_total);
  const ScalarField b = spectral::divergence(d.j_total + c);
  double diff = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) diff = std::max(diff, std::abs(a.values[n] - b.values[n]));
  EXPECT_LT(diff, 1e-12);
}

TEST(GaugeInvariance, DensityAndCurrent) {
  std::mt19937_64 rng(11);
  const double b0 = 0.5;
  const Grid g = Grid::centered(2, {64, 64, 1}, {20, 20, 1});
  pauli::testing::SmoothFieldOptions opts;
  opts.envelope_width = 1.0;
  const SpinorField f = pauli::testing::random_smooth_spinor(g, rng, opts);
  const Particle particle;
  SpinorField fp = f;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const Vec3 r = g.position(n);
    const Complex phase = std::exp(Complex(0.0, particle.charge * 0.5 * b0 * r[0] * r[1]));
    for (int c = 0; c < 2; ++c) fp.comp[c][n] *= phase;
  }
  const CurrentDecomposition d = decompose_current(f, preset(Preset::UniformBLandau, {{"B0", b0}}), 0.0, particle);
  const CurrentDecomposition dp = decompose_current(fp, preset(Preset::UniformBSymmetric, {{"B0", b0}}), 0.0, particle);
  EXPECT_LT(max_diff(d.j_total, dp.j_total), 1e-8);
  const ScalarField r1 = density(f), r2 = density(fp);
  for (std::size_t n = 0; n < g.size(); ++n) EXPECT_NEAR(r1.values[n], r2.values[n], 1e-12);
}

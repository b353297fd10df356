#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pauli/errors.hpp"
#include "pauli/state.hpp"
#include "random_fields.hpp"

using namespace pauli;
using std::numbers::pi;

namespace {

double max_diff(const SpinorField& a, const SpinorField& b) {
  double m = 0.0;
  for (int c = 0; c < 2; ++c)
    for (std::size_t k = 0; k < a.grid.size(); ++k) m = std::max(m, std::abs(a.comp[c][k] - b.comp[c][k]));
  return m;
}

std::vector<EMPotential> all_presets() {
  return {preset(Preset::Zero, {}),
          preset(Preset::UniformBLandau, {{"B0", 0.7}}),
          preset(Preset::UniformBSymmetric, {{"B0", 0.7}}),
          preset(Preset::UniformE, {{"Ex", 0.2}, {"Ey", -0.1}, {"Ez", 0.0}}),
          preset(Preset::Harmonic, {{"omega", 0.5}}),
          preset(Preset::UniformBZeeman, {{"B0", 0.7}})};
}

}  // namespace

TEST(InitGaussian, NormalizedWithRequestedMoments) {
  const Grid g = Grid::centered(2, {64, 64, 1}, {16, 16, 1});
  GaussianPacket pk;
  pk.center = {1.0, -0.5, 0.0};
  pk.width = {0.8, 1.1, 1.0};
  pk.momentum = {0.5, -1.0, 0.0};
  pk.spinor = {Complex(3.0), Complex(0.0, 4.0)};
  const SpinorField f = init_gaussian(g, pk);
  EXPECT_NEAR(norm(f), 1.0, 1e-14);
  const Vec3 c = expect_position(f);
  EXPECT_NEAR(c[0], 1.0, 1e-10);
  EXPECT_NEAR(c[1], -0.5, 1e-10);
  const Vec3 s = position_spread(f);
  EXPECT_NEAR(s[0], 0.8, 1e-8);
  EXPECT_NEAR(s[1], 1.1, 1e-8);
  const Vec3 p = expect_momentum(f);
  EXPECT_NEAR(p[0], 0.5, 1e-10);
  EXPECT_NEAR(p[1], -1.0, 1e-10);
  // spinor (3, 4i)/5: <sigma_y> = 2 Im(3 * 4i)/25
  const Vec3 spin = expect_spin(f);
  EXPECT_NEAR(spin[0], 0.0, 1e-14);
  EXPECT_NEAR(spin[1], 0.5 * 24.0 / 25.0, 1e-14);
  EXPECT_NEAR(spin[2], 0.5 * (9.0 - 16.0) / 25.0, 1e-14);
}

TEST(InitGaussian, Validation) {
  const Grid g = Grid::centered(1, {64, 1, 1}, {16, 1, 1});
  GaussianPacket pk;
  pk.width = {0.5, 1, 1};  // 3h = 0.75
  EXPECT_THROW(init_gaussian(g, pk), ValidationError);
  pk.width = {1.0, 1, 1};
  pk.center = {5.0, 0, 0};
  EXPECT_THROW(init_gaussian(g, pk), ValidationError);
  pk.center = {0.0, 0, 0};
  pk.spinor = {Complex(0.0), Complex(0.0)};
  EXPECT_THROW(init_gaussian(g, pk), ValidationError);
}

TEST(InitPlaneWave, PeriodicityIsEnforced) {
  const Grid g = Grid::centered(2, {16, 16, 1}, {10, 10, 1});
  const double k0 = 2 * pi / 10;
  const SpinorField f = init_plane_wave(g, {2 * k0, -k0, 0}, {Complex(1.0), Complex(0.0)});
  EXPECT_NEAR(norm(f), 1.0, 1e-14);
  const Vec3 p = expect_momentum(f);
  EXPECT_NEAR(p[0], 2 * k0, 1e-12);
  EXPECT_NEAR(p[1], -k0, 1e-12);
  EXPECT_THROW(init_plane_wave(g, {0.5, 0, 0}, {Complex(1.0), Complex(0.0)}), ValidationError);
}

TEST(Moments, ChargeScalesMoment) {
  const Grid g = Grid::centered(1, {64, 1, 1}, {16, 1, 1});
  GaussianPacket pk;
  pk.width = {1.5, 1, 1};
  const SpinorField f = init_gaussian(g, pk);
  EXPECT_NEAR(expect_moment(f, Particle{-1.0, 1.0})[2], -0.5, 1e-14);
  EXPECT_NEAR(expect_moment(f, Particle{2.0, 4.0})[2], 0.25, 1e-14);
  EXPECT_EQ(expect_moment(f, Particle{0.0, 1.0})[2], 0.0);
}

TEST(Hamiltonian, HermitianForEveryPreset) {
  std::mt19937_64 rng(3);
  const Grid g = Grid::centered(2, {32, 32, 1}, {12, 12, 1});
  for (const auto& p : all_presets()) {
    const SpinorField a = pauli::testing::random_smooth_spinor(g, rng);
    const SpinorField b = pauli::testing::random_smooth_spinor(g, rng);
    const Hamiltonian h(g, p, 0.0, Particle{});
    const Complex lhs = inner_product(a, h.apply(b));
    const Complex rhs = inner_product(h.apply(a), b);
    EXPECT_LT(std::abs(lhs - rhs), 1e-12 * (1.0 + std::abs(lhs))) << p.preset_name;
    const EnergyExpectation e = expect_energy(a, p, 0.0, Particle{});
    EXPECT_LT(std::abs(e.imaginary), 1e-12) << p.preset_name;
  }
}

TEST(Hamiltonian, Linear) {
  std::mt19937_64 rng(4);
  const Grid g = Grid::centered(2, {32, 32, 1}, {12, 12, 1});
  const EMPotential p = preset(Preset::UniformBSymmetric, {{"B0", 1.0}});
  const SpinorField a = pauli::testing::random_smooth_spinor(g, rng);
  const SpinorField b = pauli::testing::random_smooth_spinor(g, rng);
  const Complex alpha(0.3, -1.2);
  const SpinorField lhs = apply_hamiltonian(alpha * a + b, p, 0.0, Particle{});
  const SpinorField rhs = alpha * apply_hamiltonian(a, p, 0.0, Particle{}) + apply_hamiltonian(b, p, 0.0, Particle{});
  EXPECT_LT(max_diff(lhs, rhs), 1e-12);
}

TEST(Hamiltonian, FreeKineticTermIsSigmaDotPSquared) {
  std::mt19937_64 rng(5);
  const Grid g = Grid::centered(3, {16, 16, 16}, {8, 8, 8});
  const EMPotential p = preset(Preset::Zero, {});
  const Hamiltonian h(g, p, 0.0, Particle{});
  const SpinorField f = pauli::testing::random_smooth_spinor(g, rng);
  SpinorField sq = h.sigma_dot_pi(h.sigma_dot_pi(f));
  sq *= 0.5;
  EXPECT_LT(max_diff(sq, h.apply(f)), 1e-11);
}

TEST(Hamiltonian, PlaneWaveEigenvalue) {
  const Grid g = Grid::centered(1, {32, 1, 1}, {2 * pi, 1, 1});
  const SpinorField f = init_plane_wave(g, {3.0, 0, 0}, {Complex(0.0), Complex(1.0)});
  const EMPotential z = preset(Preset::UniformBZeeman, {{"B0", 2.0}});
  // E = k^2/2 - (q/2m) B0 * (-1) for spin down, q = -1
  const double e = 4.5 - 1.0;
  SpinorField expected = f;
  expected *= e;
  EXPECT_LT(max_diff(apply_hamiltonian(f, z, 0.0, Particle{}), expected), 1e-11);
}

TEST(Hamiltonian, GaugeCovariance) {
  // symmetric gauge = Landau gauge + grad(B0 x y / 2); psi' = exp(i q Lambda) psi
  std::mt19937_64 rng(6);
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
  const SpinorField h = apply_hamiltonian(f, preset(Preset::UniformBLandau, {{"B0", b0}}), 0.0, particle);
  SpinorField hp = apply_hamiltonian(fp, preset(Preset::UniformBSymmetric, {{"B0", b0}}), 0.0, particle);
  for (std::size_t n = 0; n < g.size(); ++n) {
    const Vec3 r = g.position(n);
    const Complex phase = std::exp(Complex(0.0, -particle.charge * 0.5 * b0 * r[0] * r[1]));
    for (int c = 0; c < 2; ++c) hp.comp[c][n] *= phase;
  }
  EXPECT_LT(max_diff(h, hp) / h.max_abs(), 1e-8);
}

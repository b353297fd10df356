#pragma once

// Electromagnetic potentials as closed-form evaluators. Grids sample them
// on demand, so minimal-coupling terms carry no interpolation error.

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "pauli/grid.hpp"
#include "pauli/units.hpp"

namespace pauli {

using ScalarFunction = std::function<double(const Vec3&, double)>;
using VectorFunction = std::function<Vec3(const Vec3&, double)>;

struct EMPotential {
  ScalarFunction phi;
  VectorFunction a_vec;
  /// curl A in closed form, when known.
  std::optional<VectorFunction> b_analytic;
  std::string preset_name;
  std::map<std::string, double> params;
  bool time_dependent = false;
};

/// Shipped presets. UniformBZeeman couples a uniform field to spin only
/// (A = 0, B = B0 z); it is the spin-precession model the split-step
/// propagator can handle and deliberately has B != curl A.
enum class Preset { Zero, UniformBLandau, UniformBSymmetric, UniformE, Harmonic, UniformBZeeman };

Preset parse_preset(const std::string& name);
std::string to_string(Preset p);

/// Required and optional parameter names per preset.
struct PresetParameters {
  std::vector<std::string> required;
  std::map<std::string, double> optional;  // name -> default
};
const PresetParameters& preset_parameters(Preset p);

/// Zero:              phi = 0, A = 0.
/// UniformBLandau:    A = (-B0 y, 0, 0), B = (0, 0, B0).
/// UniformBSymmetric: A = B0/2 (-y, x, 0), B = (0, 0, B0).
/// UniformE:          phi = -(Ex x + Ey y + Ez z).
/// Harmonic:          phi = m omega^2 |r - c|^2 / (2 q), so q phi is the
///                    isotropic oscillator potential.
/// UniformBZeeman:    phi = 0, A = 0, B = (0, 0, B0).
/// Throws ValidationError for missing or unknown parameters.
EMPotential preset(Preset p, const std::map<std::string, double>& params, const Particle& particle = {});

struct GaugeFunction {
  ScalarFunction lambda;
  VectorFunction grad_lambda;
  ScalarFunction dt_lambda;
};

/// A' = A + grad Lambda, phi' = phi - dLambda/dt; B is unchanged.
EMPotential gauge_transform(const EMPotential& p, const GaugeFunction& g);

/// Second-order central-difference curl of a vector function.
Vec3 finite_difference_curl(const VectorFunction& a, const Vec3& r, double t, double h);

/// Central-difference gradient and time derivative of a scalar function.
Vec3 finite_difference_gradient(const ScalarFunction& f, const Vec3& r, double t, double h);
double finite_difference_time_derivative(const ScalarFunction& f, const Vec3& r, double t, double h);

/// B at a point: b_analytic when present, otherwise a fine central-difference
/// curl of A.
Vec3 magnetic_field(const EMPotential& p, const Vec3& r, double t);

/// Potentials evaluated on every grid point at a fixed time.
struct SampledPotential {
  RealArray phi;
  std::array<RealArray, 3> a;
  std::array<RealArray, 3> b;
  bool has_vector_potential = false;
  bool has_magnetic_field = false;
  bool has_scalar_potential = false;
};

SampledPotential sample(const Grid& grid, const EMPotential& p, double t);

}  // namespace pauli

#include "pauli/fields.hpp"

#include <cmath>

#include "pauli/errors.hpp"

namespace pauli {

namespace {

const std::map<Preset, std::string>& preset_names() {
  static const std::map<Preset, std::string> names{
      {Preset::Zero, "Zero"},
      {Preset::UniformBLandau, "UniformBLandau"},
      {Preset::UniformBSymmetric, "UniformBSymmetric"},
      {Preset::UniformE, "UniformE"},
      {Preset::Harmonic, "Harmonic"},
      {Preset::UniformBZeeman, "UniformBZeeman"},
  };
  return names;
}

std::map<std::string, double> resolve_params(Preset p, const std::map<std::string, double>& given) {
  const PresetParameters& spec = preset_parameters(p);
  std::map<std::string, double> out;
  for (const auto& name : spec.required) {
    auto it = given.find(name);
    if (it == given.end())
      throw ValidationError("preset " + to_string(p) + ": missing parameter '" + name + "'");
    out[name] = it->second;
  }
  for (const auto& [name, def] : spec.optional) {
    auto it = given.find(name);
    out[name] = it == given.end() ? def : it->second;
  }
  for (const auto& [name, value] : given) {
    if (!out.count(name)) throw ValidationError("preset " + to_string(p) + ": unknown parameter '" + name + "'");
    if (!std::isfinite(value))
      throw ValidationError("preset " + to_string(p) + ": parameter '" + name + "' is not finite");
  }
  return out;
}

ScalarFunction zero_scalar() {
  return [](const Vec3&, double) { return 0.0; };
}

VectorFunction zero_vector() {
  return [](const Vec3&, double) { return Vec3{0.0, 0.0, 0.0}; };
}

VectorFunction uniform_bz(double b0) {
  return [b0](const Vec3&, double) { return Vec3{0.0, 0.0, b0}; };
}

}  // namespace

Preset parse_preset(const std::string& name) {
  for (const auto& [p, n] : preset_names())
    if (n == name) return p;
  throw ValidationError("unknown potential preset '" + name + "'");
}

std::string to_string(Preset p) { return preset_names().at(p); }

const PresetParameters& preset_parameters(Preset p) {
  static const std::map<Preset, PresetParameters> table{
      {Preset::Zero, {}},
      {Preset::UniformBLandau, {{"B0"}, {}}},
      {Preset::UniformBSymmetric, {{"B0"}, {}}},
      {Preset::UniformE, {{"Ex", "Ey", "Ez"}, {}}},
      {Preset::Harmonic, {{"omega"}, {{"cx", 0.0}, {"cy", 0.0}, {"cz", 0.0}}}},
      {Preset::UniformBZeeman, {{"B0"}, {}}},
  };
  return table.at(p);
}

EMPotential preset(Preset p, const std::map<std::string, double>& params, const Particle& particle) {
  EMPotential out;
  out.params = resolve_params(p, params);
  out.preset_name = to_string(p);
  out.phi = zero_scalar();
  out.a_vec = zero_vector();
  out.b_analytic = zero_vector();
  const auto& prm = out.params;

  switch (p) {
    case Preset::Zero:
      break;
    case Preset::UniformBLandau: {
      const double b0 = prm.at("B0");
      out.a_vec = [b0](const Vec3& r, double) { return Vec3{-b0 * r[1], 0.0, 0.0}; };
      out.b_analytic = uniform_bz(b0);
      break;
    }
    case Preset::UniformBSymmetric: {
      const double b0 = prm.at("B0");
      out.a_vec = [b0](const Vec3& r, double) { return Vec3{-0.5 * b0 * r[1], 0.5 * b0 * r[0], 0.0}; };
      out.b_analytic = uniform_bz(b0);
      break;
    }
    case Preset::UniformE: {
      const Vec3 e{prm.at("Ex"), prm.at("Ey"), prm.at("Ez")};
      out.phi = [e](const Vec3& r, double) { return -dot(e, r); };
      break;
    }
    case Preset::Harmonic: {
      if (particle.charge == 0.0)
        throw ValidationError("preset Harmonic: the oscillator is expressed through phi and needs q != 0");
      const double w = prm.at("omega");
      const Vec3 c{prm.at("cx"), prm.at("cy"), prm.at("cz")};
      const double coeff = 0.5 * particle.mass * w * w / particle.charge;
      out.phi = [coeff, c](const Vec3& r, double) {
        const Vec3 d{r[0] - c[0], r[1] - c[1], r[2] - c[2]};
        return coeff * dot(d, d);
      };
      break;
    }
    case Preset::UniformBZeeman:
      out.b_analytic = uniform_bz(prm.at("B0"));
      break;
  }
  return out;
}

EMPotential gauge_transform(const EMPotential& p, const GaugeFunction& g) {
  EMPotential out = p;
  out.preset_name = p.preset_name + "+gauge";
  auto a = p.a_vec;
  auto grad = g.grad_lambda;
  out.a_vec = [a, grad](const Vec3& r, double t) {
    const Vec3 base = a(r, t);
    const Vec3 dl = grad(r, t);
    return Vec3{base[0] + dl[0], base[1] + dl[1], base[2] + dl[2]};
  };
  auto phi = p.phi;
  auto dt = g.dt_lambda;
  out.phi = [phi, dt](const Vec3& r, double t) { return phi(r, t) - dt(r, t); };
  return out;
}

Vec3 finite_difference_curl(const VectorFunction& a, const Vec3& r, double t, double h) {
  auto partial = [&](int axis, int comp) {
    Vec3 lo = r, hi = r;
    lo[axis] -= h;
    hi[axis] += h;
    return (a(hi, t)[comp] - a(lo, t)[comp]) / (2.0 * h);
  };
  return {partial(1, 2) - partial(2, 1), partial(2, 0) - partial(0, 2), partial(0, 1) - partial(1, 0)};
}

Vec3 finite_difference_gradient(const ScalarFunction& f, const Vec3& r, double t, double h) {
  Vec3 g{};
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 lo = r, hi = r;
    lo[axis] -= h;
    hi[axis] += h;
    g[axis] = (f(hi, t) - f(lo, t)) / (2.0 * h);
  }
  return g;
}

double finite_difference_time_derivative(const ScalarFunction& f, const Vec3& r, double t, double h) {
  return (f(r, t + h) - f(r, t - h)) / (2.0 * h);
}

Vec3 magnetic_field(const EMPotential& p, const Vec3& r, double t) {
  if (p.b_analytic) return (*p.b_analytic)(r, t);
  return finite_difference_curl(p.a_vec, r, t, 1e-5);
}

SampledPotential sample(const Grid& grid, const EMPotential& p, double t) {
  SampledPotential s;
  const std::size_t n = grid.size();
  s.phi.resize(n);
  for (auto& c : s.a) c.resize(n);
  for (auto& c : s.b) c.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 r = grid.position(k);
    s.phi[k] = p.phi(r, t);
    const Vec3 a = p.a_vec(r, t);
    const Vec3 b = magnetic_field(p, r, t);
    for (int c = 0; c < 3; ++c) {
      s.a[c][k] = a[c];
      s.b[c][k] = b[c];
      s.has_vector_potential |= a[c] != 0.0;
      s.has_magnetic_field |= b[c] != 0.0;
    }
    s.has_scalar_potential |= s.phi[k] != 0.0;
  }
  return s;
}

}  // namespace pauli

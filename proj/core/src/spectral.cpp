#include "pauli/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "pauli/parallel.hpp"

namespace pauli::spectral {

namespace {

// Plans are made with FFTW_ESTIMATE so the chosen algorithm (and hence
// the rounding) is the same on every run.
class Engine {
 public:
  explicit Engine(const Grid& grid) : grid_(grid) {
    int dims[3];
    for (int axis = 0; axis < grid.dim(); ++axis) dims[axis] = static_cast<int>(grid.n(axis));
    const std::size_t n = grid.size();
    auto* scratch = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_dft(grid.dim(), dims, scratch, scratch, FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft(grid.dim(), dims, scratch, scratch, FFTW_BACKWARD, flags);
    fftw_free(scratch);

    for (int axis = 0; axis < 3; ++axis) {
      auto& k = axis_symbol_[axis];
      k.assign(grid.n(axis), 0.0);
      if (axis >= grid.dim()) continue;
      for (std::size_t i = 0; i < grid.n(axis); ++i)
        k[i] = (i == grid.n(axis) / 2) ? 0.0 : grid.wavenumber(axis, i);
    }
    k2_.assign(n, 0.0);
    for (std::size_t flat = 0; flat < n; ++flat) {
      const auto idx = grid.index(flat);
      double s = 0.0;
      for (int axis = 0; axis < grid.dim(); ++axis) s += axis_symbol_[axis][idx[axis]] * axis_symbol_[axis][idx[axis]];
      k2_[flat] = s;
    }
  }

  ~Engine() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  void forward(ComplexArray& data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(forward_, p, p);
  }

  void inverse(ComplexArray& data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(backward_, p, p);
    const double scale = 1.0 / static_cast<double>(data.size());
    parallel_for(data.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) data[k] *= scale;
    });
  }

  double symbol(int axis, std::size_t flat) const {
    if (axis >= grid_.dim()) return 0.0;
    return axis_symbol_[axis][grid_.index(flat)[axis]];
  }

  // Multiplies spectrum by i*k_axis into `out`.
  void apply_derivative(const ComplexArray& spectrum, int axis, ComplexArray& out) const {
    out.resize(spectrum.size());
    const auto& ks = axis_symbol_[axis];
    const std::size_t n1 = grid_.n(1), n2 = grid_.n(2);
    parallel_for(spectrum.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t flat = b; flat < e; ++flat) {
        std::size_t i;
        if (axis == 0) {
          i = flat / (n1 * n2);
        } else if (axis == 1) {
          i = (flat / n2) % n1;
        } else {
          i = flat % n2;
        }
        const Complex z = spectrum[flat];
        out[flat] = Complex(-ks[i] * z.imag(), ks[i] * z.real());
      }
    });
  }

  const RealArray& k2() const { return k2_; }
  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
  std::array<RealArray, 3> axis_symbol_;
  RealArray k2_;
};

using Key = std::tuple<int, std::array<std::size_t, 3>, Vec3>;

const Engine& engine_for(const Grid& grid) {
  static std::mutex mutex;
  static std::map<Key, std::unique_ptr<Engine>> cache;
  std::lock_guard lock(mutex);
  Key key{grid.dim(), grid.shape(), grid.spacing()};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<Engine>(grid)).first;
  return *it->second;
}

ComplexArray to_complex(const RealArray& f) {
  ComplexArray out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k];
  return out;
}

RealArray real_part(const ComplexArray& f) {
  RealArray out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k].real();
  return out;
}

}  // namespace

void forward(const Grid& grid, ComplexArray& data) { engine_for(grid).forward(data); }

void inverse(const Grid& grid, ComplexArray& data) { engine_for(grid).inverse(data); }

double derivative_symbol(const Grid& grid, int axis, std::size_t flat) {
  return engine_for(grid).symbol(axis, flat);
}

const RealArray& laplacian_symbol(const Grid& grid) { return engine_for(grid).k2(); }

ComplexArray multiply_ik(const Grid& grid, const ComplexArray& spectrum, int axis) {
  if (axis >= grid.dim()) return ComplexArray(spectrum.size(), Complex(0.0, 0.0));
  ComplexArray out;
  engine_for(grid).apply_derivative(spectrum, axis, out);
  return out;
}

ComplexArray derivative(const Grid& grid, const ComplexArray& f, int axis) {
  if (axis >= grid.dim()) return ComplexArray(f.size(), Complex(0.0, 0.0));
  const Engine& eng = engine_for(grid);
  ComplexArray spectrum = f;
  eng.forward(spectrum);
  ComplexArray out;
  eng.apply_derivative(spectrum, axis, out);
  eng.inverse(out);
  return out;
}

std::array<ComplexArray, 3> gradient(const Grid& grid, const ComplexArray& f) {
  const Engine& eng = engine_for(grid);
  ComplexArray spectrum = f;
  eng.forward(spectrum);
  std::array<ComplexArray, 3> out;
  for (int axis = 0; axis < 3; ++axis) {
    if (axis >= grid.dim()) {
      out[axis].assign(f.size(), Complex(0.0, 0.0));
      continue;
    }
    eng.apply_derivative(spectrum, axis, out[axis]);
    eng.inverse(out[axis]);
  }
  return out;
}

ComplexArray laplacian(const Grid& grid, const ComplexArray& f) {
  const Engine& eng = engine_for(grid);
  ComplexArray spectrum = f;
  eng.forward(spectrum);
  const RealArray& k2 = eng.k2();
  for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] *= -k2[k];
  eng.inverse(spectrum);
  return spectrum;
}

RealArray derivative(const Grid& grid, const RealArray& f, int axis) {
  return real_part(derivative(grid, to_complex(f), axis));
}

std::array<RealArray, 3> gradient(const Grid& grid, const RealArray& f) {
  auto g = gradient(grid, to_complex(f));
  return {real_part(g[0]), real_part(g[1]), real_part(g[2])};
}

ScalarField divergence(const VectorField& v) {
  const Grid& grid = v.grid;
  const Engine& eng = engine_for(grid);
  ComplexArray total(grid.size(), Complex(0.0, 0.0));
  ComplexArray tmp;
  for (int axis = 0; axis < grid.dim(); ++axis) {
    ComplexArray spectrum = to_complex(v.components[axis]);
    eng.forward(spectrum);
    eng.apply_derivative(spectrum, axis, tmp);
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += tmp[k];
  }
  eng.inverse(total);
  return {grid, real_part(total)};
}

VectorField curl(const VectorField& v) {
  const Grid& grid = v.grid;
  const Engine& eng = engine_for(grid);
  std::array<ComplexArray, 3> spectra;
  for (int c = 0; c < 3; ++c) {
    spectra[c] = to_complex(v.components[c]);
    eng.forward(spectra[c]);
  }
  // d_i v_j in Fourier space, lazily per (i, j) pair.
  auto d = [&](int axis, int comp) {
    ComplexArray out;
    if (axis >= grid.dim()) return ComplexArray(grid.size(), Complex(0.0, 0.0));
    eng.apply_derivative(spectra[comp], axis, out);
    return out;
  };
  VectorField out;
  out.grid = grid;
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3;
    const int b = (c + 2) % 3;
    ComplexArray term = d(a, b);
    const ComplexArray other = d(b, a);
    for (std::size_t k = 0; k < term.size(); ++k) term[k] -= other[k];
    eng.inverse(term);
    out.components[c] = real_part(term);
  }
  return out;
}

}  // namespace pauli::spectral

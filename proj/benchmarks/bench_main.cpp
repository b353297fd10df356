#include <benchmark/benchmark.h>

#include <cmath>

#include "pauli/currents.hpp"
#include "pauli/evolve.hpp"

using namespace pauli;

namespace {

SpinorField packet(std::size_t n) {
  const Grid g = Grid::centered(2, {n, n, 1}, {20.0, 20.0, 1.0});
  GaussianPacket pk;
  pk.width = {1.0, 1.0, 1.0};
  pk.momentum = {0.5, 0.0, 0.0};
  pk.spinor = {Complex(0.6), Complex(0.0, 0.8)};
  return init_gaussian(g, pk);
}

const EMPotential& landau() {
  static const EMPotential p = preset(Preset::UniformBLandau, {{"B0", 1.0}});
  return p;
}

void BM_ApplyHamiltonian(benchmark::State& state) {
  const SpinorField f = packet(static_cast<std::size_t>(state.range(0)));
  const Hamiltonian h(f.grid, landau(), 0.0, Particle{});
  for (auto _ : state) benchmark::DoNotOptimize(h.apply(f));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.grid.size()));
}
BENCHMARK(BM_ApplyHamiltonian)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_KrylovStep(benchmark::State& state) {
  const SpinorField f = packet(static_cast<std::size_t>(state.range(0)));
  PropagatorConfig cfg;
  for (auto _ : state) {
    const KrylovStep s = step_krylov(f, landau(), 0.0, 0.03, cfg);
    benchmark::DoNotOptimize(s.state);
    state.counters["dim"] = s.dimension;
  }
}
BENCHMARK(BM_KrylovStep)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SplitStep(benchmark::State& state) {
  const SpinorField f = packet(static_cast<std::size_t>(state.range(0)));
  const EMPotential p = preset(Preset::Harmonic, {{"omega", 0.5}});
  for (auto _ : state) benchmark::DoNotOptimize(step_splitstep(f, p, 0.0, 0.01));
}
BENCHMARK(BM_SplitStep)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_DecomposeCurrent(benchmark::State& state) {
  const SpinorField f = packet(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose_current(f, landau(), 0.0));
}
BENCHMARK(BM_DecomposeCurrent)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();

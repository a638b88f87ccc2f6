#include <benchmark/benchmark.h>

#include "holosurf/analysis.hpp"
#include "holosurf/deformation.hpp"
#include "holosurf/experiments.hpp"
#include "holosurf/matching.hpp"
#include "holosurf/noise.hpp"
#include "holosurf/rng.hpp"

using namespace holosurf;

namespace {

PauliOp random_pauli(Rng& rng, uint32_t qubits, std::size_t weight) {
  PauliOp p;
  while (p.weight() < weight) {
    p.set_factor(static_cast<QubitId>(rng.next_below(qubits)),
                 static_cast<Axis>(1 + rng.next_below(3)));
  }
  return p;
}

void BM_PauliMultiply(benchmark::State& state) {
  Rng rng(1);
  const PauliOp a = random_pauli(rng, 1000, 4);
  const PauliOp b = random_pauli(rng, 1000, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_PauliMultiply);

void BM_RotationStep(benchmark::State& state) {
  const Lattice lat = Lattice::build(static_cast<int>(state.range(0)));
  Tableau tab = Tableau::from_lattice(lat);
  Rng rng(2);
  const PauliOp q = random_pauli(rng, static_cast<uint32_t>(lat.num_qubits()), 4);
  for (auto _ : state) {
    tab.apply_rotation(q);
  }
}
BENCHMARK(BM_RotationStep)->Arg(8)->Arg(16);

void BM_SyndromeRound(benchmark::State& state) {
  const Lattice lat = Lattice::build(8);
  NoiseParams prm;
  prm.p = 1e-3;
  Rng rng(3);
  for (auto _ : state) {
    PauliOp frame;
    benchmark::DoNotOptimize(syndrome_round(lat, frame, prm, rng));
  }
}
BENCHMARK(BM_SyndromeRound);

void BM_MatchExact(benchmark::State& state) {
  Rng rng(4);
  MatchInstance inst;
  inst.n = static_cast<std::size_t>(state.range(0));
  inst.pair_w.assign(inst.n * inst.n, 0);
  inst.boundary_w.assign(inst.n, 3);
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = i + 1; j < inst.n; ++j) {
      const long long w = 1 + static_cast<long long>(rng.next_below(12));
      inst.pw(i, j) = w;
      inst.pw(j, i) = w;
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(match_exact(inst));
  }
}
BENCHMARK(BM_MatchExact)->Arg(8)->Arg(14);

void BM_MemoryTrial(benchmark::State& state) {
  experiments::MemoryParams prm;
  prm.L = static_cast<int>(state.range(0));
  prm.p = 1e-3;
  prm.trials = 1;
  uint64_t seed = 0;
  for (auto _ : state) {
    prm.seed = ++seed;
    benchmark::DoNotOptimize(experiments::memory_monte_carlo(prm));
  }
}
BENCHMARK(BM_MemoryTrial)->Arg(3)->Arg(5);

void BM_LogicalRate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        analysis::logical_rate({11, 100000000LL, 1e-3, 12.0}));
  }
}
BENCHMARK(BM_LogicalRate);

}  // namespace

BENCHMARK_MAIN();

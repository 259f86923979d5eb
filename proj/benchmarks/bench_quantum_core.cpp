#include <benchmark/benchmark.h>

#include "qesim/density_matrix.hpp"
#include "qesim/gates.hpp"
#include "qesim/prng.hpp"
#include "qesim/random_states.hpp"
#include "qesim/state_vector.hpp"

using namespace qesim;

namespace {

void BM_StateVectorGate(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Prng rng(1);
  StateVector psi = random_pure_state(n, rng);
  const ComplexMatrix h = gates::hadamard();
  std::size_t q = 0;
  for (auto _ : state) {
    psi.apply(h, q);
    q = (q + 1) % n;
    benchmark::DoNotOptimize(psi);
  }
}
BENCHMARK(BM_StateVectorGate)->Arg(4)->Arg(8)->Arg(10)->Arg(12);

void BM_StateVectorCz(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Prng rng(2);
  StateVector psi = random_pure_state(n, rng);
  const ComplexMatrix cz = gates::cz();
  std::size_t q = 0;
  for (auto _ : state) {
    psi.apply(cz, q, (q + 1) % n);
    q = (q + 1) % n;
    benchmark::DoNotOptimize(psi);
  }
}
BENCHMARK(BM_StateVectorCz)->Arg(4)->Arg(8)->Arg(10);

void BM_DensityGate(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Prng rng(3);
  DensityMatrix rho = random_mixed_state(n, rng);
  const ComplexMatrix z = gates::z_rotation(Angle::from_index(3));
  std::size_t q = 0;
  for (auto _ : state) {
    rho.apply(z, q);
    q = (q + 1) % n;
    benchmark::DoNotOptimize(rho);
  }
}
BENCHMARK(BM_DensityGate)->Arg(2)->Arg(4)->Arg(6);

void BM_PartialTrace(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Prng rng(4);
  const DensityMatrix rho = random_mixed_state(n, rng);
  const std::size_t keep[1] = {0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho.partial_trace_keep(keep));
  }
}
BENCHMARK(BM_PartialTrace)->Arg(2)->Arg(4)->Arg(6);

void BM_TraceDistance(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Prng rng(5);
  const DensityMatrix a = random_mixed_state(n, rng);
  const DensityMatrix b = random_mixed_state(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace_distance(a, b));
  }
}
BENCHMARK(BM_TraceDistance)->Arg(2)->Arg(4)->Arg(6);

void BM_HermitianEig(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Prng rng(6);
  const DensityMatrix rho = random_mixed_state(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eigenvalues(rho.matrix()));
  }
}
BENCHMARK(BM_HermitianEig)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

#include <benchmark/benchmark.h>

#include "qesim/ac/equivalence.hpp"
#include "qesim/enclave/protocol.hpp"
#include "qesim/ubqc/blindness.hpp"
#include "qesim/ubqc/session.hpp"

using namespace qesim;

namespace {

void BM_SecurityDistance(benchmark::State& state) {
  const std::size_t aux = static_cast<std::size_t>(state.range(0));
  Prng rng(7);
  const DensityMatrix input = random_server_input(aux, true, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ac::security_distance(input));
  }
}
BENCHMARK(BM_SecurityDistance)->Arg(0)->Arg(1)->Arg(2);

void BM_UbqcRun(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::vector<Angle> phi;
  for (int i = 0; i < m; ++i) phi.push_back(Angle::from_index(i % 8));
  const ubqc::Pattern pattern(
      ubqc::PatternGraph::build(1, m, ubqc::GraphKind::LinearCluster), phi);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Prng rng(seed++);
    ubqc::RunOptions opt;
    benchmark::DoNotOptimize(ubqc::run_ubqc(pattern, opt, rng));
  }
}
BENCHMARK(BM_UbqcRun)->Arg(2)->Arg(3)->Arg(4);

void BM_UbqcBranchEnumeration(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::vector<Angle> phi;
  for (int i = 0; i < m; ++i) phi.push_back(Angle::from_index((i * 3) % 8));
  const ubqc::Pattern pattern(
      ubqc::PatternGraph::build(1, m, ubqc::GraphKind::LinearCluster), phi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ubqc::enumerate_signal_branches(pattern, ubqc::Preparation::Rsr, 1));
  }
}
BENCHMARK(BM_UbqcBranchEnumeration)->Arg(2)->Arg(3)->Arg(4);

void BM_ServerViewEnumeration(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::vector<Angle> phi;
  for (int i = 0; i < m; ++i) phi.push_back(Angle::from_index((i * 5) % 8));
  const ubqc::Pattern pattern(
      ubqc::PatternGraph::build(1, m, ubqc::GraphKind::LinearCluster), phi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ubqc::server_view_distribution(pattern));
  }
}
BENCHMARK(BM_ServerViewEnumeration)->Arg(1)->Arg(2)->Arg(3);

void BM_EnclaveSession(benchmark::State& state) {
  const enclave::CryptoSuite suite = state.range(0) == 0
                                         ? enclave::CryptoSuite::toy()
                                         : enclave::CryptoSuite::standard();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(enclave::run_session(enclave::SessionKind::Outsrc, "sum",
                                                  {1, 2, 3}, suite, seed++));
  }
}
BENCHMARK(BM_EnclaveSession)->Arg(0)->Arg(1);

}  // namespace

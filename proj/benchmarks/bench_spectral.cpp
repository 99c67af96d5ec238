#include <benchmark/benchmark.h>

#include "soficlab/spectral.hpp"

using namespace soficlab;

static void BM_BareissDeterminant(benchmark::State& state) {
  GroupSpec z = GroupSpec::lattice(1);
  RingElement f = parse_ring_element(z, "3-t-T");
  GroupSpec q = GroupSpec::cyclic_quotient({state.range(0)});
  IntMatrix m = quotient_matrix(f, q);
  for (auto _ : state) benchmark::DoNotOptimize(bareiss_determinant(m));
}
BENCHMARK(BM_BareissDeterminant)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

static void BM_FkEstimate(benchmark::State& state) {
  GroupSpec z = GroupSpec::lattice(1);
  RingElement f = parse_ring_element(z, "2-t");
  std::vector<std::vector<std::int64_t>> moduli;
  for (int n = 4; n <= state.range(0); ++n) moduli.push_back({n});
  for (auto _ : state) benchmark::DoNotOptimize(fk_det_estimate(f, moduli));
}
BENCHMARK(BM_FkEstimate)->Arg(16)->Arg(32)->Arg(48);

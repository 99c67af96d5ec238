#include <benchmark/benchmark.h>

#include <random>

#include "soficlab/ring.hpp"

using namespace soficlab;

namespace {

RingElement random_element(const GroupSpec& spec, int terms,
                           std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<std::int64_t> pos(-8, 8);
  RingElement f(spec, CoeffMode::Exact);
  for (int i = 0; i < terms; ++i)
    f.add_term(GroupElement{{pos(rng)}}, Int(coeff(rng)));
  return f;
}

}  // namespace

static void BM_RingConvolution(benchmark::State& state) {
  GroupSpec z = GroupSpec::lattice(1);
  std::mt19937_64 rng(1);
  RingElement f = random_element(z, static_cast<int>(state.range(0)), rng);
  RingElement g = random_element(z, static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(f * g);
}
BENCHMARK(BM_RingConvolution)->Arg(4)->Arg(8)->Arg(16);

static void BM_L1Inverse(benchmark::State& state) {
  GroupSpec z = GroupSpec::lattice(1);
  RingElement f = parse_ring_element(z, "2-t");
  L1InverseOptions opts;
  opts.tolerance = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(l1_inverse(RingMatrix::scalar(f), opts));
}
BENCHMARK(BM_L1Inverse)->Arg(6)->Arg(9)->Arg(12);

#include <benchmark/benchmark.h>

#include <random>

#include "soficlab/quasitiling.hpp"

using namespace soficlab;

static void BM_Quasitile(benchmark::State& state) {
  GroupSpec z = GroupSpec::lattice(1);
  int d = static_cast<int>(state.range(0));
  SoficMap sigma = quotient_sofic(z, {d}, 6);
  IndexSet v(d);
  for (int i = 0; i < d; ++i) v[i] = i;
  std::vector<std::vector<GroupElement>> shapes = {ball(z, 2), ball(z, 5)};
  for (auto _ : state)
    benchmark::DoNotOptimize(quasitile(sigma, shapes, v, 0.0, 0.2));
}
BENCHMARK(BM_Quasitile)->Arg(60)->Arg(240)->Arg(960);

static void BM_CommutingBijection(benchmark::State& state) {
  GroupSpec z = GroupSpec::lattice(1);
  int d = static_cast<int>(state.range(0));
  SoficMap sigma = quotient_sofic(z, {d}, 70);
  std::mt19937_64 rng(3);
  std::vector<int> all(d);
  for (int i = 0; i < d; ++i) all[i] = i;
  auto pick = [&](std::vector<int> v) {
    std::shuffle(v.begin(), v.end(), rng);
    v.resize(d / 2);
    std::sort(v.begin(), v.end());
    return v;
  };
  IndexSet y = pick(all), zset = pick(all);
  for (auto _ : state)
    benchmark::DoNotOptimize(commuting_bijection(sigma, y, zset, 0.25, 0.2));
}
BENCHMARK(BM_CommutingBijection)->Arg(240)->Arg(480);

static void BM_RfMixing(benchmark::State& state) {
  GroupSpec q = GroupSpec::cyclic_quotient({state.range(0)});
  IndexSet y;
  for (int i = 0; i < state.range(0) / 2; ++i) y.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(rf_mixing_check(q, y));
}
BENCHMARK(BM_RfMixing)->Arg(30)->Arg(60);

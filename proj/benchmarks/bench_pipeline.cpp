#include <benchmark/benchmark.h>

#include <random>

#include "dp5/finiteness.hpp"
#include "dp5/invariants.hpp"
#include "dp5/pointconfig.hpp"

using namespace dp5;

namespace {

void BM_QuinticInvariants(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> c(-9, 9);
  std::vector<Rat> cs;
  for (int k = 0; k < 6; ++k) cs.emplace_back(c(rng));
  const BinaryForm<Rat> f(5, cs);
  for (auto _ : state) benchmark::DoNotOptimize(quintic_invariants(f, true));
}
BENCHMARK(BM_QuinticInvariants);

void BM_TuvInvariants(benchmark::State& state) {
  const bool implicit = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(tuv_quintic_invariants(Rat(2), Rat(3), implicit));
}
BENCHMARK(BM_TuvInvariants)->Arg(0)->Arg(1);

void BM_GeneralPosition(benchmark::State& state) {
  const auto cfg = config(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(check_general_position(cfg));
}
BENCHMARK(BM_GeneralPosition)->DenseRange(1, 2);

void BM_Certificate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(good_reduction_certificate(1, 3, 7, 1));
}
BENCHMARK(BM_Certificate);

void BM_FinitenessModular(benchmark::State& state) {
  const auto p = build_problem_deg4();
  for (auto _ : state) benchmark::DoNotOptimize(finiteness_degrees(p, FinitenessMode::Modular, 1));
}
BENCHMARK(BM_FinitenessModular)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

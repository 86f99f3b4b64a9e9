#include <benchmark/benchmark.h>

#include <random>

#include "dp5/cyclotomic.hpp"

using namespace dp5;

namespace {

CycElt random_element(const CycField& K, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> c(-9, 9);
  std::vector<Rat> cs;
  for (std::size_t i = 0; i < K.degree(); ++i) cs.emplace_back(c(rng));
  return K.from_coeffs(cs);
}

void BM_Multiply(benchmark::State& state) {
  const CycField K(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const CycElt a = random_element(K, rng), b = random_element(K, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Multiply)->DenseRange(1, 3);

void BM_Inverse(benchmark::State& state) {
  const CycField K(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(2);
  const CycElt a = random_element(K, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_Inverse)->DenseRange(1, 2);

void BM_Norm(benchmark::State& state) {
  const CycField K(static_cast<int>(state.range(0)));
  const CycElt x = zeta_power(K, 1) - K.one();
  for (auto _ : state) benchmark::DoNotOptimize(norm(x));
}
BENCHMARK(BM_Norm)->DenseRange(1, 2);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "concentro/graphs.hpp"
#include "concentro/norms.hpp"
#include "concentro/poly.hpp"
#include "concentro/rmt.hpp"

using namespace concentro;

namespace {

Tensor gaussian_tensor(int order, int dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  Tensor t(order, dim);
  std::vector<double> v(t.size());
  for (auto& x : v) x = g(gen);
  return Tensor(order, dim, std::move(v));
}

void BM_NormAls(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const int dim = static_cast<int>(state.range(1));
  const Tensor a = gaussian_tensor(order, dim, 1);
  std::vector<int> labels(static_cast<std::size_t>(order));
  for (int k = 0; k < order; ++k) labels[k] = k;
  const auto part = SetPartition::from_labels(labels);
  NormOptions o;
  o.restarts = 8;
  for (auto _ : state) benchmark::DoNotOptimize(norm_J(a, part, o).value);
}
BENCHMARK(BM_NormAls)->Args({3, 3})->Args({3, 10})->Args({4, 6})->Unit(benchmark::kMicrosecond);

void BM_NormSpectral(benchmark::State& state) {
  const Tensor a = gaussian_tensor(4, static_cast<int>(state.range(0)), 2);
  const auto part = SetPartition::parse("1,2|3,4", 4);
  for (auto _ : state) benchmark::DoNotOptimize(norm_J(a, part).value);
}
BENCHMARK(BM_NormSpectral)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_Jacobi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CounterRng rng(3);
  const auto m = sample_wigner({n}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_symmetric(m, n));
}
BENCHMARK(BM_Jacobi)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_TriangleDerivativeTensor(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Polynomial y = counting_polynomial(GraphSpec::clique(3), n);
  const auto dist = ProductDistribution::bernoulli(EdgeIndex(n).size(), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(expected_derivative_tensor(y, dist, 3).frobenius());
}
BENCHMARK(BM_TriangleDerivativeTensor)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

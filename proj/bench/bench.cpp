// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include <numeric>

#include "maxcover/oracle.hpp"
#include "maxcover/random.hpp"
#include "maxcover/triangle.hpp"

using namespace mkc;

namespace {

CoverInstance bench_cover(int n, int u) {
  Rng rng(7);
  return random_cover(rng, n, u, 0.1);
}

void BM_brute_force(benchmark::State& state) {
  const auto inst = bench_cover(static_cast<int>(state.range(0)), 256);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force(inst, 4).value);
}

void BM_brute_force_serial(benchmark::State& state) {
  const auto inst = bench_cover(static_cast<int>(state.range(0)), 256);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_serial(inst, 4).value);
}

SuperNodeGraph bench_graph(int n, int k) {
  const auto inst = bench_cover(n, 512);
  std::vector<Id> xs(n);
  std::iota(xs.begin(), xs.end(), Id{0});
  return build_tripartite(inst, xs, {}, k);
}

void BM_triangle(benchmark::State& state) {
  const auto g = bench_graph(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(max_weight_triangle(g).weight);
}

void BM_triangle_serial(benchmark::State& state) {
  const auto g = bench_graph(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(max_weight_triangle_serial(g).weight);
}

CountMatrix bench_matrix(int n, std::uint64_t seed) {
  Rng rng(seed);
  CountMatrix m(n, n);
  for (auto& v : m.data) v = static_cast<std::int32_t>(rng() % 2);
  return m;
}

void BM_matmul(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = bench_matrix(n, 1), b = bench_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_multiply(a, b).data.data());
}

void BM_matmul_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = bench_matrix(n, 1), b = bench_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_multiply_serial(a, b).data.data());
}

}  // namespace

BENCHMARK(BM_brute_force)->Arg(24)->Arg(40);
BENCHMARK(BM_brute_force_serial)->Arg(24)->Arg(40);
BENCHMARK(BM_triangle)->Arg(30)->Arg(60);
BENCHMARK(BM_triangle_serial)->Arg(30)->Arg(60);
BENCHMARK(BM_matmul)->Arg(128)->Arg(256);
BENCHMARK(BM_matmul_serial)->Arg(128)->Arg(256);

BENCHMARK_MAIN();

// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "lsc/kernels.hpp"

namespace k = lsc::kernels;

namespace {

struct Tri {
  std::vector<double> diag, off;
};

Tri oscillator(std::size_t n) {
  Tri t;
  const double kappa4 = std::pow(4.0 / static_cast<double>(n), 4);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) - 0.5 * static_cast<double>(n);
    t.diag.push_back(2.0 + kappa4 * x * x);
  }
  t.off.assign(n - 1, -1.0);
  return t;
}

std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

void BM_bisect_serial(benchmark::State& state) {
  Tri t = oscillator(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(k::serial::bisect_lowest(t.diag, t.off, 16));
}

void BM_bisect_omp(benchmark::State& state) {
  Tri t = oscillator(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(k::omp::bisect_lowest(t.diag, t.off, 16));
}

void BM_dot_serial(benchmark::State& state) {
  auto a = noise(state.range(0), 1), b = noise(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(k::serial::dot(a, b));
}

void BM_dot_omp(benchmark::State& state) {
  auto a = noise(state.range(0), 1), b = noise(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(k::omp::dot(a, b));
}

struct Grid {
  std::vector<double> diag, x, y;
  std::vector<std::vector<double>> coupling;
  std::vector<std::size_t> stride;
};

Grid grid(std::size_t side) {
  Grid g;
  const std::size_t n = side * side;
  g.diag.assign(n, 4.0);
  g.x = noise(n, 3);
  g.y.resize(n);
  g.coupling.assign(2, std::vector<double>(n, -1.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (i + side >= n) g.coupling[0][i] = 0.0;
    if ((i % side) + 1 == side) g.coupling[1][i] = 0.0;
  }
  g.stride = {side, 1};
  return g;
}

void BM_stencil_serial(benchmark::State& state) {
  Grid g = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    k::serial::stencil_apply(g.diag, g.coupling, g.stride, g.x, g.y);
    benchmark::DoNotOptimize(g.y.data());
  }
}

void BM_stencil_omp(benchmark::State& state) {
  Grid g = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    k::omp::stencil_apply(g.diag, g.coupling, g.stride, g.x, g.y);
    benchmark::DoNotOptimize(g.y.data());
  }
}

}  // namespace

BENCHMARK(BM_bisect_serial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_bisect_omp)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_dot_serial)->Arg(1 << 16)->Arg(1 << 22);
BENCHMARK(BM_dot_omp)->Arg(1 << 16)->Arg(1 << 22);
BENCHMARK(BM_stencil_serial)->Arg(256)->Arg(2048);
BENCHMARK(BM_stencil_omp)->Arg(256)->Arg(2048);

BENCHMARK_MAIN();

#include <doctest.h>

#include <cstring>
#include <random>

#include "lsc/kernels.hpp"
#include "oracles.hpp"

namespace k = lsc::kernels;

namespace {

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("sturm count on a diagonal matrix") {
  std::vector<double> d{1.0, 2.0, 3.0}, off2{0.0, 0.0};
  CHECK(k::sturm_count(d, off2, 0.5, 1e-300) == 0);
  CHECK(k::sturm_count(d, off2, 1.5, 1e-300) == 1);
  CHECK(k::sturm_count(d, off2, 2.5, 1e-300) == 2);
  CHECK(k::sturm_count(d, off2, 9.0, 1e-300) == 3);
}

TEST_CASE("sturm count agrees with the Laplacian closed form") {
  const std::size_t m = 40;
  std::vector<double> d(m, 2.0), off2(m - 1, 1.0);
  auto ev = oracle::laplacian_1d(m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double mid = 0.5 * (ev[i] + ev[i + 1]);
    CHECK(k::sturm_count(d, off2, mid, 1e-300) == i + 1);
  }
}

TEST_CASE("gershgorin interval encloses the spectrum") {
  std::mt19937_64 rng(3);
  auto t = oracle::random_confining(rng, 200);
  double lo, hi;
  k::gershgorin_bounds(t.diag, t.off, lo, hi);
  auto ev = oracle::dstev(t.diag, t.off);
  CHECK(lo <= ev.front());
  CHECK(hi >= ev.back());
}

TEST_CASE("neumaier sum recovers cancelled terms") {
  std::vector<double> v{1e16, 1.0, -1e16};
  CHECK(k::neumaier_sum(v) == 1.0);
  std::vector<double> many(10000, 0.1);
  CHECK(k::neumaier_sum(many) == doctest::Approx(1000.0).epsilon(1e-15));
}

TEST_CASE("bisection matches dstev on random tridiagonals") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 7u, 64u, 301u}) {
    auto t = oracle::random_confining(rng, n);
    auto ref = oracle::dstev(t.diag, t.off);
    std::size_t want = std::min<std::size_t>(n, 12);
    auto got = k::serial::bisect_lowest(t.diag, t.off, want);
    REQUIRE(got.size() == want);
    for (std::size_t i = 0; i < want; ++i) CHECK(oracle::rel_err(got[i], ref[i]) <= 1e-12);
  }
}

TEST_CASE("serial and OpenMP kernels are bit-identical for every thread count") {
  std::mt19937_64 rng(5);
  auto t = oracle::random_confining(rng, 5000);
  auto ref = k::serial::bisect_lowest(t.diag, t.off, 20);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(20000), b(20000);
  for (auto& x : a) x = u(rng);
  for (auto& x : b) x = u(rng);
  double dot_ref = k::serial::dot(a, b);

  // 2-D stencil on a 100×200 grid
  const std::size_t nx = 100, ny = 200, n = nx * ny;
  std::vector<double> diag(n), x(n), y_ref(n), y(n);
  std::vector<std::vector<double>> coupling(2, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = 4.0 + u(rng);
    x[i] = u(rng);
    coupling[0][i] = i + ny < n ? -1.0 : 0.0;
    coupling[1][i] = (i % ny) + 1 < ny ? -1.0 + 0.1 * u(rng) : 0.0;
  }
  std::vector<std::size_t> stride{ny, 1};
  k::serial::stencil_apply(diag, coupling, stride, x, y_ref);

  const int saved = k::max_threads();
  for (int threads : {1, 2, 3, 4}) {
    k::set_threads(threads);
    CHECK(bit_equal(k::omp::bisect_lowest(t.diag, t.off, 20), ref));
    CHECK(k::omp::dot(a, b) == dot_ref);
    k::omp::stencil_apply(diag, coupling, stride, x, y);
    CHECK(bit_equal(y, y_ref));
    std::vector<double> f1(1000), f2(1000);
    k::serial::fill(1000, [](std::size_t i) { return std::sin(0.1 * i); }, f1);
    k::omp::fill(1000, [](std::size_t i) { return std::sin(0.1 * i); }, f2);
    CHECK(bit_equal(f1, f2));
  }
  k::set_threads(saved);
}

TEST_CASE("stencil apply reproduces the dense product") {
  const std::size_t n = 6;
  std::vector<double> diag{1, 2, 3, 4, 5, 6}, x{1, -1, 2, 0.5, 3, -2}, y(n);
  std::vector<std::vector<double>> coupling{{-1, -2, -3, -4, -5, 0}};
  std::vector<std::size_t> stride{1};
  k::serial::stencil_apply(diag, coupling, stride, x, y);
  for (std::size_t i = 0; i < n; ++i) {
    double ref = diag[i] * x[i];
    if (i + 1 < n) ref += coupling[0][i] * x[i + 1];
    if (i > 0) ref += coupling[0][i - 1] * x[i - 1];
    CHECK(y[i] == doctest::Approx(ref).epsilon(1e-15));
  }
}

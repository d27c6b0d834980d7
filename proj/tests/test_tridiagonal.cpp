#include <doctest.h>

#include <random>

#include "lsc/error.hpp"
#include "lsc/tridiagonal.hpp"
#include "oracles.hpp"

using lsc::Tridiagonal;

namespace {

double residual(const Tridiagonal& t, const std::vector<double>& v, double lambda) {
  auto hv = t.apply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += (hv[i] - lambda * v[i]) * (hv[i] - lambda * v[i]);
  return std::sqrt(s);
}

double dotp(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("eigenvalues of the free Laplacian") {
  Tridiagonal t{std::vector<double>(50, 2.0), std::vector<double>(49, -1.0)};
  auto got = lsc::tridiag_eigenvalues(t, 50);
  auto ref = oracle::laplacian_1d(50);
  for (std::size_t i = 0; i < 50; ++i) CHECK(std::abs(got[i] - ref[i]) <= 1e-13 * t.norm_bound());
}

TEST_CASE("serial and parallel eigenvalues agree bit for bit") {
  std::mt19937_64 rng(2);
  auto r = oracle::random_confining(rng, 900);
  Tridiagonal t{r.diag, r.off};
  auto a = lsc::tridiag_eigenvalues(t, 15, false);
  auto b = lsc::tridiag_eigenvalues(t, 15, true);
  CHECK(a == b);
}

TEST_CASE("inverse iteration gives unit vectors with small residual") {
  std::mt19937_64 rng(4);
  auto r = oracle::random_confining(rng, 400);
  Tridiagonal t{r.diag, r.off};
  auto ev = lsc::tridiag_eigenvalues(t, 5);
  std::vector<std::vector<double>> vs;
  for (double lam : ev) {
    auto v = lsc::tridiag_inverse_iteration(t, lam);
    CHECK(std::sqrt(dotp(v, v)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(residual(t, v, lam) <= 1e-10 * (1.0 + std::abs(lam)));
    for (const auto& w : vs) CHECK(std::abs(dotp(v, w)) <= 1e-8);
    vs.push_back(v);
  }
}

TEST_CASE("degenerate pair: orthogonalisation against earlier members") {
  // two decoupled identical blocks give every eigenvalue twice
  std::vector<double> d{2, 2, 2, 2, 2, 2};
  std::vector<double> e{-1, -1, 0, -1, -1};
  Tridiagonal t{d, e};
  auto ev = lsc::tridiag_eigenvalues(t, 2);
  CHECK(ev[0] == doctest::Approx(ev[1]).epsilon(1e-14));
  auto v0 = lsc::tridiag_inverse_iteration(t, ev[0]);
  auto v1 = lsc::tridiag_inverse_iteration(t, ev[1], {v0}, 1);
  CHECK(std::abs(dotp(v0, v1)) <= 1e-12);
  CHECK(residual(t, v1, ev[1]) <= 1e-12);
}

TEST_CASE("sign convention: first significant entry is positive") {
  std::vector<double> v{1e-14, -0.5, 0.3};
  lsc::normalize_sign(v);
  CHECK(v[1] > 0.0);
  CHECK(v[0] < 0.0);
  std::vector<double> w{0.0, 0.0, 0.0};
  lsc::normalize_sign(w);
  CHECK(w[0] == 0.0);
}

TEST_CASE("asking for more eigenvalues than the size is rejected") {
  Tridiagonal t{{1.0, 2.0}, {0.5}};
  CHECK_THROWS_AS(lsc::tridiag_eigenvalues(t, 3), lsc::Error);
}

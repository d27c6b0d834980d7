#include "lsc/tridiagonal.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "lsc/error.hpp"
#include "lsc/kernels.hpp"

namespace lsc {

double Tridiagonal::norm_bound() const {
  double m = 0.0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::abs(diag[i]);
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < n) r += std::abs(off[i]);
    m = std::max(m, r);
  }
  return m;
}

std::vector<double> Tridiagonal::apply(std::span<const double> x) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = diag[i] * x[i];
    if (i > 0) acc += off[i - 1] * x[i - 1];
    if (i + 1 < n) acc += off[i] * x[i + 1];
    y[i] = acc;
  }
  return y;
}

std::vector<double> tridiag_eigenvalues(const Tridiagonal& t, std::size_t k, bool parallel) {
  return parallel ? kernels::omp::bisect_lowest(t.diag, t.off, k) : kernels::serial::bisect_lowest(t.diag, t.off, k);
}

void normalize_sign(std::vector<double>& v, double rel_threshold) {
  double vmax = 0.0;
  for (double e : v) vmax = std::max(vmax, std::abs(e));
  if (vmax == 0.0) return;
  for (double e : v) {
    if (std::abs(e) > rel_threshold * vmax) {
      if (e < 0.0)
        for (double& f : v) f = -f;
      return;
    }
  }
}

namespace {

// splitmix64; portable, so start vectors do not depend on the standard library.
double unit_random(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

double norm2(const std::vector<double>& v) { return std::sqrt(kernels::serial::dot(v, v)); }

}  // namespace

std::vector<double> tridiag_inverse_iteration(const Tridiagonal& t, double lambda,
                                              const std::vector<std::vector<double>>& orthogonal_to,
                                              std::size_t seed, int max_iter) {
  const std::size_t n = t.size();
  require(n >= 1, ErrorCode::InvalidArgument, "empty matrix");
  if (n == 1) return {1.0};
  const double tnorm = t.norm_bound();
  const double eps = std::numeric_limits<double>::epsilon();

  std::vector<double> dl(t.off), d(t.diag), du(t.off), du2(std::max<std::size_t>(n - 2, 1));
  for (double& e : d) e -= lambda;
  std::vector<lapack_int> ipiv(n);
  const auto ln = static_cast<lapack_int>(n);
  lapack_int info = LAPACKE_dgttrf(ln, dl.data(), d.data(), du.data(), du2.data(), ipiv.data());
  require(info >= 0, ErrorCode::InvalidArgument, "dgttrf rejected its arguments");
  // An exactly singular U only needs a nudge to keep the solve finite.
  for (std::size_t i = 0; i < n; ++i)
    if (d[i] == 0.0) d[i] = eps * std::max(tnorm, 1.0);

  std::uint64_t state = 0x5DEECE66Dull + 7919ull * seed;
  std::vector<double> x(n);
  for (double& e : x) e = unit_random(state);

  auto project = [&](std::vector<double>& v) {
    for (const auto& q : orthogonal_to) {
      const double c = kernels::serial::dot(q, v);
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * q[i];
    }
  };
  project(x);
  double nx = norm2(x);
  require(nx > 0.0, ErrorCode::ZeroVector, "start vector vanished after projection");
  for (double& e : x) e /= nx;

  const double target = std::max(1e-10 * (1.0 + std::abs(lambda)), 64.0 * eps * tnorm);
  const double accept = 1e-8 * (1.0 + std::abs(lambda));
  double res = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    info = LAPACKE_dgttrs(LAPACK_COL_MAJOR, 'N', ln, 1, dl.data(), d.data(), du.data(), du2.data(), ipiv.data(),
                          x.data(), ln);
    require(info == 0, ErrorCode::ConvergenceFailure, "tridiagonal solve failed");
    project(x);
    nx = norm2(x);
    require(std::isfinite(nx) && nx > 0.0, ErrorCode::ConvergenceFailure, "inverse iteration broke down");
    for (double& e : x) e /= nx;
    const auto tx = t.apply(x);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) r2 += (tx[i] - lambda * x[i]) * (tx[i] - lambda * x[i]);
    res = std::sqrt(r2);
    if (res <= target && it >= 1) break;
  }
  if (!(res <= accept))
    throw Error(ErrorCode::ConvergenceFailure,
                "inverse iteration residual " + std::to_string(res) + " after " + std::to_string(max_iter) +
                    " iterations");
  normalize_sign(x);
  return x;
}

}  // namespace lsc

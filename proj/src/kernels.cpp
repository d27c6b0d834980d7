#include "lsc/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "lsc/error.hpp"

namespace lsc::kernels {

std::size_t sturm_count(std::span<const double> diag, std::span<const double> off2, double x, double pivmin) {
  std::size_t count = 0;
  double q = diag[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    q = diag[i] - x - off2[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

void gershgorin_bounds(std::span<const double> diag, std::span<const double> off, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < n) r += std::abs(off[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
}

namespace {

struct Compensated {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      c += (sum - t) + v;
    else
      c += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

struct BisectionSetup {
  std::vector<double> off2;
  double lo = 0.0;
  double hi = 0.0;
  double pivmin = 0.0;
  double abs_floor = 0.0;
};

BisectionSetup prepare(std::span<const double> diag, std::span<const double> off, std::size_t k) {
  require(!diag.empty(), ErrorCode::InvalidArgument, "empty tridiagonal matrix");
  require(off.size() + 1 == diag.size(), ErrorCode::InvalidArgument, "off-diagonal length must be n-1");
  require(k <= diag.size(), ErrorCode::InvalidArgument, "requested more eigenvalues than the matrix size");
  BisectionSetup s;
  s.off2.resize(off.size());
  double max2 = 0.0;
  for (std::size_t i = 0; i < off.size(); ++i) {
    s.off2[i] = off[i] * off[i];
    max2 = std::max(max2, s.off2[i]);
  }
  gershgorin_bounds(diag, off, s.lo, s.hi);
  const double norm = std::max(std::abs(s.lo), std::abs(s.hi));
  const double eps = std::numeric_limits<double>::epsilon();
  s.pivmin = std::numeric_limits<double>::min() * std::max(1.0, max2);
  // Relative to the eigenvalue, not to ‖T‖: on graded Schrödinger matrices the
  // Sturm count resolves low eigenvalues far below eps·‖T‖.
  s.abs_floor = eps * eps * norm;
  // Widen slightly so that the brackets strictly enclose the spectrum.
  const double pad = 2.0 * eps * norm * static_cast<double>(diag.size()) + 2.0 * s.pivmin;
  s.lo -= pad;
  s.hi += pad;
  return s;
}

double bisect_one(std::span<const double> diag, const BisectionSetup& s, std::size_t i, double rel_tol) {
  double lo = s.lo;
  double hi = s.hi;
  for (int it = 0; it < 2000; ++it) {
    const double width = hi - lo;
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (width <= std::max(rel_tol * scale, s.abs_floor)) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(diag, s.off2, mid, s.pivmin) > i)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

template <class ApplyRow>
void stencil_rows(std::size_t begin, std::size_t end, ApplyRow&& row) {
  for (std::size_t i = begin; i < end; ++i) row(i);
}

auto stencil_row(std::span<const double> diag, const std::vector<std::vector<double>>& coupling,
                 std::span<const std::size_t> stride, std::span<const double> x, std::span<double> y) {
  return [=, &coupling](std::size_t i) {
    double acc = diag[i] * x[i];
    for (std::size_t a = 0; a < coupling.size(); ++a) {
      const std::size_t s = stride[a];
      const auto& c = coupling[a];
      if (i + s < x.size()) acc += c[i] * x[i + s];
      if (i >= s) acc += c[i - s] * x[i - s];
    }
    y[i] = acc;
  };
}

std::size_t block_count(std::size_t n) { return (n + kSumBlock - 1) / kSumBlock; }

double block_dot(std::span<const double> a, std::span<const double> b, std::size_t blk) {
  Compensated acc;
  const std::size_t end = std::min(a.size(), (blk + 1) * kSumBlock);
  for (std::size_t i = blk * kSumBlock; i < end; ++i) acc.add(a[i] * b[i]);
  return acc.value();
}

double combine(const std::vector<double>& partial) {
  Compensated acc;
  for (double p : partial) acc.add(p);
  return acc.value();
}

}  // namespace

double neumaier_sum(std::span<const double> v) {
  std::vector<double> partial(block_count(v.size()));
  for (std::size_t b = 0; b < partial.size(); ++b) {
    Compensated acc;
    const std::size_t end = std::min(v.size(), (b + 1) * kSumBlock);
    for (std::size_t i = b * kSumBlock; i < end; ++i) acc.add(v[i]);
    partial[b] = acc.value();
  }
  return combine(partial);
}

namespace serial {

std::vector<double> bisect_lowest(std::span<const double> diag, std::span<const double> off, std::size_t k,
                                  double rel_tol) {
  const BisectionSetup s = prepare(diag, off, k);
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = bisect_one(diag, s, i, rel_tol);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::InvalidArgument, "dot: length mismatch");
  std::vector<double> partial(block_count(a.size()));
  for (std::size_t blk = 0; blk < partial.size(); ++blk) partial[blk] = block_dot(a, b, blk);
  return combine(partial);
}

void stencil_apply(std::span<const double> diag, const std::vector<std::vector<double>>& coupling,
                   std::span<const std::size_t> stride, std::span<const double> x, std::span<double> y) {
  stencil_rows(0, x.size(), stencil_row(diag, coupling, stride, x, y));
}

void fill(std::size_t n, const std::function<double(std::size_t)>& f, std::span<double> out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
}

}  // namespace serial

namespace omp {

std::vector<double> bisect_lowest(std::span<const double> diag, std::span<const double> off, std::size_t k,
                                  double rel_tol) {
  const BisectionSetup s = prepare(diag, off, k);
  std::vector<double> out(k);
  const auto kk = static_cast<std::ptrdiff_t>(k);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < kk; ++i)
    out[static_cast<std::size_t>(i)] = bisect_one(diag, s, static_cast<std::size_t>(i), rel_tol);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::InvalidArgument, "dot: length mismatch");
  std::vector<double> partial(block_count(a.size()));
  const auto nb = static_cast<std::ptrdiff_t>(partial.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < nb; ++blk)
    partial[static_cast<std::size_t>(blk)] = block_dot(a, b, static_cast<std::size_t>(blk));
  return combine(partial);
}

void stencil_apply(std::span<const double> diag, const std::vector<std::vector<double>>& coupling,
                   std::span<const std::size_t> stride, std::span<const double> x, std::span<double> y) {
  auto row = stencil_row(diag, coupling, stride, x, y);
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) row(static_cast<std::size_t>(i));
}

void fill(std::size_t n, const std::function<double(std::size_t)>& f, std::span<double> out) {
  const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < nn; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
}

}  // namespace omp

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace lsc::kernels

#include "lsc/intervals.hpp"

#include <algorithm>
#include <cmath>

#include "lsc/error.hpp"
#include "lsc/hermite.hpp"

namespace lsc {

IntervalDecomposition build_interval_decomposition(int n, double kappa) {
  require(n >= 0, ErrorCode::InvalidArgument, "degree must be nonnegative");
  require(kappa > 0.0, ErrorCode::InvalidArgument, "kappa must be positive");
  IntervalDecomposition d;
  d.n = n;
  d.kappa = kappa;
  if (n == 0) return d;

  for (double z : hermite::hermite_zeros(n))
    if (z >= 0.0) d.zeros.push_back(z);
  const int k = d.k();
  double beta_prev = 1.0;
  for (int j = 0; j < k; ++j) {
    const double z = d.zeros[j];
    long a;
    double beta;
    if (z == 0.0) {
      a = 1;
      beta = 1.0;
    } else {
      a = static_cast<long>(std::floor(z / (beta_prev * kappa))) + 1;
      if (a - 1 < 1)
        throw Error(ErrorCode::DegenerateDecomposition,
                    "kappa = " + std::to_string(kappa) + " is too large: a_" + std::to_string(j + 1) + " - 1 = 0");
      beta = z / (kappa * static_cast<double>(a - 1));
    }
    long b = kUnbounded;
    if (j + 1 < k) {
      b = static_cast<long>(std::floor(d.zeros[j + 1] / (beta * kappa))) - 1;
      if (b < a)
        throw Error(ErrorCode::DegenerateDecomposition,
                    "interval I_" + std::to_string(j + 1) + " is empty at kappa = " + std::to_string(kappa));
    }
    d.a.push_back(a);
    d.b.push_back(b);
    d.beta.push_back(beta);
    beta_prev = beta;
  }

  d.has_center = n % 2 == 0;
  for (int j = 0; j < k; ++j) {
    if (d.zeros[j] == 0.0) {
      d.excluded.push_back(0);
    } else {
      d.excluded.push_back(d.a[j] - 1);
      d.excluded.push_back(-(d.a[j] - 1));
    }
  }
  std::sort(d.excluded.begin(), d.excluded.end());
  return d;
}

std::vector<double> beta_upper_bounds(const IntervalDecomposition& d) {
  std::vector<double> out;
  double prev = 1.0;
  for (double z : d.zeros) {
    if (z == 0.0) {
      out.push_back(1.0);
      continue;
    }
    const double gap = z - d.kappa * prev;
    require(gap > 0.0, ErrorCode::DegenerateDecomposition, "kappa too large for the beta bound");
    prev *= z / gap;
    out.push_back(prev);
  }
  return out;
}

long IntervalDecomposition::min_box() const {
  if (k() == 0) return 0;
  if (k() == 1) return std::max(center_half_width(), 0L);
  return b[k() - 2];
}

std::vector<Interval> IntervalDecomposition::intervals(long M) const {
  require(M >= 0, ErrorCode::InvalidArgument, "box half-width must be nonnegative");
  std::vector<Interval> out;
  if (k() == 0) {
    out.push_back({0, -M, M, 1.0, true});
    return out;
  }
  auto push = [&](Interval iv) {
    iv.lo = std::max(iv.lo, -M);
    iv.hi = std::min(iv.hi, M);
    if (iv.lo <= iv.hi) out.push_back(iv);
  };
  for (int j = k(); j >= 1; --j) {
    const bool unb = b[j - 1] == kUnbounded;
    push({-j, unb ? -M : -b[j - 1], -a[j - 1], beta[j - 1], unb});
  }
  if (has_center) push({0, -center_half_width(), center_half_width(), beta.front(), false});
  for (int j = 1; j <= k(); ++j) {
    const bool unb = b[j - 1] == kUnbounded;
    push({j, a[j - 1], unb ? M : b[j - 1], beta[j - 1], unb});
  }
  return out;
}

long interval_box_cap(const IntervalDecomposition& d) {
  // κ⁴M² ≥ 4κ²(2n+1)  ⇔  M ≥ 2√(2n+1)/κ
  const long wall = static_cast<long>(std::ceil(2.0 * std::sqrt(2.0 * d.n + 1.0) / d.kappa));
  long need = d.min_box() + 1;
  if (d.k() > 0) need = std::max(need, d.a.back());
  return std::max(wall, need);
}

bool verify_cover(const IntervalDecomposition& d, long M, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (M < d.min_box()) return fail("box does not contain all bounded intervals");
  std::vector<int> hits(static_cast<std::size_t>(2 * M + 1), 0);
  auto mark = [&](long x) {
    if (x < -M || x > M) return;
    ++hits[static_cast<std::size_t>(x + M)];
  };
  for (const auto& iv : d.intervals(M))
    for (long x = iv.lo; x <= iv.hi; ++x) mark(x);
  for (long x : d.excluded) mark(x);
  for (long x = -M; x <= M; ++x) {
    const int h = hits[static_cast<std::size_t>(x + M)];
    if (h == 0) return fail("point " + std::to_string(x) + " is not covered");
    if (h > 1) return fail("point " + std::to_string(x) + " is covered " + std::to_string(h) + " times");
  }
  return true;
}

}  // namespace lsc

#pragma once

#include <limits>
#include <string>
#include <vector>

namespace lsc {

inline constexpr long kUnbounded = std::numeric_limits<long>::max();

// One piece of the decomposition, already capped to a box [-M, M].
struct Interval {
  int index = 0;  // j; negative for mirrored pieces
  long lo = 0;
  long hi = 0;
  double beta = 1.0;
  bool unbounded = false;  // reaches the box edge in place of ±∞
};

// Nodal decomposition of ℤ for the n-th Hermite function at scale κ.
// a[j-1], b[j-1], beta[j-1] describe I_j = [a_j, b_j] for j = 1..k; b_k = kUnbounded.
struct IntervalDecomposition {
  int n = 0;
  double kappa = 0.0;
  std::vector<double> zeros;  // z_1 < … < z_k, the nonnegative zeros of h_n
  std::vector<long> a;
  std::vector<long> b;
  std::vector<double> beta;
  bool has_center = false;     // I_0 = [-(a_1-2), a_1-2] for even n ≥ 2
  std::vector<long> excluded;  // ascending

  int k() const { return static_cast<int>(zeros.size()); }
  long center_half_width() const { return has_center ? a.front() - 2 : -1; }
  // Smallest M with every bounded interval inside [-M, M].
  long min_box() const;
  // Ascending pieces of the decomposition intersected with [-M, M]; empty pieces are dropped.
  std::vector<Interval> intervals(long M) const;
};

// Worst case of the recursion for β_j (every fractional part equal to 1):
// B_j = B_{j-1} z_j/(z_j - κB_{j-1}), B_0 = 1, so β_j ≤ B_j = 1 + O(κ).
std::vector<double> beta_upper_bounds(const IntervalDecomposition& d);

// Raises DegenerateDecomposition when κ is too large for the construction.
IntervalDecomposition build_interval_decomposition(int n, double kappa);

// Box half-width for the capped outer intervals: v_κ(M) ≥ 4κ²(2n+1), and
// at least min_box() + 1.
long interval_box_cap(const IntervalDecomposition& d);

// Pieces plus excluded points partition [-M, M] ∩ ℤ exactly.
bool verify_cover(const IntervalDecomposition& d, long M, std::string* why = nullptr);

}  // namespace lsc

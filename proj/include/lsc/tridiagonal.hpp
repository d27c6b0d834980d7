#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lsc {

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // size n-1; off[i] couples i and i+1

  std::size_t size() const { return diag.size(); }
  // max_i Σ_j |T_ij|, an upper bound for ‖T‖₂
  double norm_bound() const;
  std::vector<double> apply(std::span<const double> x) const;
};

// Lowest k eigenvalues, ascending. `parallel` selects the OpenMP kernel; the
// result is bit-identical either way.
std::vector<double> tridiag_eigenvalues(const Tridiagonal& t, std::size_t k, bool parallel = true);

// Unit eigenvector for a computed eigenvalue. Vectors in `orthogonal_to` are
// projected out every sweep (cluster members found earlier). Sign: the first
// entry above 1e-10·‖v‖∞ is positive. `seed` varies the start vector.
std::vector<double> tridiag_inverse_iteration(const Tridiagonal& t, double lambda,
                                              const std::vector<std::vector<double>>& orthogonal_to = {},
                                              std::size_t seed = 0, int max_iter = 100);

// Flip v so that its first significant entry is positive.
void normalize_sign(std::vector<double>& v, double rel_threshold = 1e-10);

}  // namespace lsc

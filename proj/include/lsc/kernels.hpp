#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

// Hot loops in two flavours. `serial` is the reference used by tests; `omp`
// is the OpenMP version. Both produce bit-identical output for every thread
// count: reductions use fixed blocks combined in block order.
namespace lsc::kernels {

inline constexpr std::size_t kSumBlock = 4096;

// Number of eigenvalues of the symmetric tridiagonal (diag, off) strictly below x,
// from the signs of the LDLᵀ pivots. `off2` holds squared off-diagonals.
std::size_t sturm_count(std::span<const double> diag, std::span<const double> off2, double x, double pivmin);

// Gershgorin interval enclosing the spectrum.
void gershgorin_bounds(std::span<const double> diag, std::span<const double> off, double& lo, double& hi);

// Sum and dot with Neumaier compensation inside fixed blocks.
double neumaier_sum(std::span<const double> v);

namespace serial {
// Lowest k eigenvalues by bisection, each bracket refined to relative width `rel_tol`.
std::vector<double> bisect_lowest(std::span<const double> diag, std::span<const double> off, std::size_t k,
                                  double rel_tol = 1e-13);
double dot(std::span<const double> a, std::span<const double> b);
// y = diag∘x + Σ_axis forward/backward couplings; coupling[a][i] pairs i with i + stride[a].
void stencil_apply(std::span<const double> diag, const std::vector<std::vector<double>>& coupling,
                   std::span<const std::size_t> stride, std::span<const double> x, std::span<double> y);
void fill(std::size_t n, const std::function<double(std::size_t)>& f, std::span<double> out);
}  // namespace serial

namespace omp {
std::vector<double> bisect_lowest(std::span<const double> diag, std::span<const double> off, std::size_t k,
                                  double rel_tol = 1e-13);
double dot(std::span<const double> a, std::span<const double> b);
void stencil_apply(std::span<const double> diag, const std::vector<std::vector<double>>& coupling,
                   std::span<const std::size_t> stride, std::span<const double> x, std::span<double> y);
void fill(std::size_t n, const std::function<double(std::size_t)>& f, std::span<double> out);
}  // namespace omp

// Set the OpenMP thread count (n ≤ 0 keeps the runtime default).
void set_threads(int n);
int max_threads();

}  // namespace lsc::kernels

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lsc/lattice_box.hpp"

namespace lsc::hermite {

// Physicists' h_n by the three-term recurrence. Throws Overflow past double range.
double hermite_eval(int n, double y);

// Ψ_n(y) = h_n(y) e^{-y²/2}. Each recurrence step carries e^{-y²/(2(n+1))}.
double weighted_eval(int n, double y);

// Ψ_n^{(m)} from h_n^{(k)} = 2^k n!/(n-k)! h_{n-k} and φ^{(j)} = (-1)^j He_j φ.
double weighted_derivative(int n, int m, double y);

// Zeros of h_n, ascending: Jacobi matrix eigenvalues, Newton-polished, symmetrised.
std::vector<double> hermite_zeros(int n);

class HermiteBasis {
 public:
  explicit HermiteBasis(int n_max);
  int n_max() const { return n_max_; }
  const std::vector<double>& zeros(int n) const { return zeros_.at(n); }
  // Nonnegative zeros z_1 < … < z_k (z_1 = 0 for odd n).
  std::vector<double> nonnegative_zeros(int n) const;

 private:
  int n_max_;
  std::vector<std::vector<double>> zeros_;
};

// ψ(x) = Ψ_n(βκ(x - center)), optionally |·|.
struct TestFunction {
  int n = 0;
  double kappa = 1.0;
  double beta = 1.0;
  long center = 0;
  bool absolute = false;

  double operator()(double x) const;
  std::vector<double> sample(const LatticeBox& box) const;
};

// ceil((√(2n+1) + 8)/κ): eight Gaussian widths past the turning point.
long quasimode_radius(int n, double kappa);

struct Quasimode {
  LatticeBox box;
  std::vector<double> psi;
  std::vector<double> residual;  // (Δ + κ⁴x²)ψ - κ²(2n+1)ψ on ℤ, sampled on box
};

Quasimode quasimode_apply(int n, double kappa, const LatticeBox& box);

// R(x,κ) with r(x) = -R(x,κ): the exact second-order Taylor remainders of
// Ψ_n(y ± κ) about y = κx, each ∫₀^κ (κ-t)³/6 Ψ_n⁽⁴⁾(y ± t) dt, by adaptive Gauss–Legendre.
double residual_integral(int n, double kappa, long x);

// One-sided remainder ∫₀^κ (κ-t)³/6 Ψ_n⁽⁴⁾(y + σt) dt, σ = ±1.
double taylor_remainder(int n, double kappa, double y, int sigma);

// The same remainder evaluated directly: Ψ(y+σκ) minus its cubic Taylor polynomial.
double taylor_remainder_direct(int n, double kappa, double y, int sigma);

// ∫_a^b f by adaptive 8-point Gauss–Legendre; QuadratureFailure past depth 20.
double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b, double rel_tol,
                               double abs_tol);

// Σ_{x ∈ box} ψ_n(x) ψ_m(x)
double gram_entry(int n, int m, double kappa, const LatticeBox& box);

// Fraction of Σ_x ψ_n(x)² lying outside the box.
double tail_mass_fraction(int n, double kappa, const LatticeBox& box);

// √π 2ⁿ n! / κ
double gram_norm_limit(int n, double kappa);

}  // namespace lsc::hermite

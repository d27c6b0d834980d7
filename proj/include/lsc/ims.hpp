#pragma once

#include <vector>

#include "lsc/operator.hpp"
#include "lsc/potentials.hpp"

namespace lsc {

// η(y) = 0 ∨ (2 - |y|) ∧ 1
double ims_profile(double y);

// η_0, η_1, …, η_m on the box. Centres are in lattice coordinates; η_l(x) =
// η(2|x - c_l|_∞ / r) and η_0 = √(1 - Σ_{l≥1} η_l²).
std::vector<std::vector<double>> ims_partition(const std::vector<Point>& centers, double inner_radius,
                                               const LatticeBox& box);

// ½ Σ_j (η_j² L + L η_j² - 2 η_j L η_j), entry by entry.
SymmetricLatticeOperator ims_remainder(const SymmetricLatticeOperator& L, const std::vector<std::vector<double>>& eta);

// Σ_j η_j H η_j
SymmetricLatticeOperator ims_localized_sum(const SymmetricLatticeOperator& H,
                                           const std::vector<std::vector<double>>& eta);

// max |H - Σ η_j H η_j - remainder| / max |H|, over all matrix entries.
double ims_identity_residual(const SymmetricLatticeOperator& H, const std::vector<std::vector<double>>& eta);

// [η,[η,L]]: zero diagonal, off-diagonal L(x,y)(η(x) - η(y))².
SymmetricLatticeOperator double_commutator(const SymmetricLatticeOperator& L, const std::vector<double>& eta);

// max over lattice neighbours |η(x) - η(y)|
double max_step_variation(const LatticeBox& box, const std::vector<double>& eta);

// Kinetic (Laplace-type) part: the operator with its potential removed so that L1 = 0 on interior rows.
SymmetricLatticeOperator laplace_part(const SymmetricLatticeOperator& H);

struct NormBound {
  double value = 0.0;
  bool exact = false;  // exact in d = 1 (bisection), otherwise a one-sided estimate
};

// Upper bound for ‖A‖₂: exact extreme eigenvalues in d = 1, Gershgorin otherwise.
NormBound spectral_norm_upper(const SymmetricLatticeOperator& A);
// Lower estimate for ‖A‖₂: exact in d = 1, Rayleigh quotient of power iteration otherwise.
NormBound spectral_norm_lower(const SymmetricLatticeOperator& A);

}  // namespace lsc

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lsc/lattice_box.hpp"
#include "lsc/potentials.hpp"
#include "lsc/tridiagonal.hpp"

namespace lsc {

// Nearest-neighbour symmetric operator on a box with Dirichlet truncation.
// coupling[a][i] is the entry (i, i + stride(a)); it is zero when that
// neighbour lies outside the box. `kinetic` is c in c·Δ + diag(w), or 0 if unknown.
class SymmetricLatticeOperator {
 public:
  struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
  };

  SymmetricLatticeOperator() = default;
  SymmetricLatticeOperator(LatticeBox box, std::vector<double> diagonal, std::vector<std::vector<double>> coupling,
                           double kinetic = 0.0);

  const LatticeBox& box() const { return box_; }
  std::size_t size() const { return box_.size(); }
  int dim() const { return box_.dim(); }
  const std::vector<double>& diagonal() const { return diag_; }
  const std::vector<std::vector<double>>& couplings() const { return coupling_; }
  double kinetic() const { return kinetic_; }

  double entry(std::size_t i, std::size_t j) const;
  void apply(std::span<const double> x, std::span<double> y, bool parallel = true) const;
  std::vector<double> apply(std::span<const double> x, bool parallel = true) const;

  // d = 1 only
  Tridiagonal tridiagonal() const;
  // Row-major dense copy; refuses boxes above `max_size` points.
  std::vector<double> dense(std::size_t max_size = 4096) const;
  // Lower band storage for LAPACK ?sbev (bandwidth = largest stride).
  std::size_t bandwidth() const;

  std::vector<Triplet> triplets() const;
  void dump(const std::string& path) const;

  // Off-diagonals ≤ 0 and the kinetic part annihilates constants on interior rows.
  bool is_laplace_type() const;
  // Rows that lost at least one neighbour to the truncation.
  std::vector<bool> boundary_rows() const;
  // Number of dropped neighbours for each row.
  std::vector<int> dropped_neighbours() const;
  // diag - kinetic·2d
  std::vector<double> potential_part() const;

  // Gershgorin upper bound for ‖H‖₂.
  double norm_bound() const;

 private:
  LatticeBox box_;
  std::vector<double> diag_;
  std::vector<std::vector<double>> coupling_;
  double kinetic_ = 0.0;
};

// c·Δ + diag(w) on the box.
SymmetricLatticeOperator assemble(const LatticeBox& box, double kinetic, std::vector<double> potential);

SymmetricLatticeOperator assemble_laplacian(const LatticeBox& box);
// Δ + κ⁴x², d = 1
SymmetricLatticeOperator assemble_Hkappa(double kappa, const LatticeBox& box);
// (N²/2)Δ + N^{2(1-γ)} V(x/N)
SymmetricLatticeOperator assemble_HN(const Potential& v, const ScalingParams& params, const LatticeBox& box);

struct ModifiedPotentialParams {
  double kappa;
  double delta;

  ModifiedPotentialParams(double kappa, double delta);
  // ⌊κ^{-(1+δ)}⌋
  long spike_location() const;
  // κ^{-δ}
  double spike_value() const;
};

// H_κ with the diagonal at ±x_δ replaced by 2 + κ^{-δ}.
SymmetricLatticeOperator assemble_modified(const ModifiedPotentialParams& params, const LatticeBox& box);

// Principal submatrix on a sub-box.
SymmetricLatticeOperator restrict_to(const SymmetricLatticeOperator& op, const LatticeBox& sub);

}  // namespace lsc

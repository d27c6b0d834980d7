#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lsc/operator.hpp"

namespace lsc {

struct SpectrumResult {
  std::vector<double> values;                // ascending, with multiplicity
  std::vector<std::vector<double>> vectors;  // unit vectors when requested
  std::vector<double> residuals;             // ‖Hv - λv‖ per vector
  LatticeBox box;
  bool truncation_converged = false;
  double truncation_change = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<std::size_t, std::size_t>> clusters;  // [first, last], relative gap ≤ 1e-10
};

// Index ranges of consecutive values whose relative gap is at most `rel_gap`.
std::vector<std::pair<std::size_t, std::size_t>> find_clusters(const std::vector<double>& values,
                                                               double rel_gap = 1e-10);

// Lowest k eigenvalues of a d = 1 operator by Sturm bisection; vectors by inverse iteration.
SpectrumResult eigs_tridiag(const SymmetricLatticeOperator& op, std::size_t k, bool want_vectors = false,
                            bool parallel = true);

// Unit eigenvector for an isolated eigenvalue (d = 1).
std::vector<double> eigvec_inverse_iteration(const SymmetricLatticeOperator& op, double lambda);

// LAPACK banded solver (dsbevx) for any d; at most 4096 points.
SpectrumResult eigs_banded(const SymmetricLatticeOperator& op, std::size_t k, bool want_vectors = false);
// LAPACK dense solver (dsyevr); at most 4096 points.
SpectrumResult eigs_dense(const SymmetricLatticeOperator& op, std::size_t k, bool want_vectors = false);
// d = 1 → bisection, otherwise banded.
SpectrumResult eigs(const SymmetricLatticeOperator& op, std::size_t k, bool want_vectors = false);

struct SeparableLevel {
  double value;
  std::vector<std::size_t> index;  // one entry per axis
};

// k smallest Σ_a λ^{(a)}_{i_a}; ties broken by lexicographic multi-index.
std::vector<SeparableLevel> eigs_separable(const std::vector<std::vector<double>>& axis_spectra, std::size_t k);

enum class Symmetry { Symmetric, Antisymmetric, Neither };
std::string to_string(Symmetry s);

struct NodalReport {
  std::size_t index = 0;
  int domains = 0;
  double threshold = 0.0;
  Symmetry symmetry = Symmetry::Neither;
};

// Runs of constant sign along the path graph; entries below threshold_rel·‖v‖∞ count as zero.
NodalReport nodal_domains(std::span<const double> vec, double threshold_rel = 1e-9);
Symmetry classify_symmetry(const LatticeBox& box, std::span<const double> vec, double tol = 1e-8);

struct SuperharmonicResult {
  bool holds = false;
  double min_value = 0.0;  // min_x ((H+α)u)(x)
  double min_ratio = 0.0;  // min_x ((H+α)u)(x) / u(x)
  long argmin = 0;         // first-axis coordinate of the minimiser
};

// ((H+α)u)(x) ≥ 0 for x in region; u is given on the whole operator box.
SuperharmonicResult verify_superharmonic(const SymmetricLatticeOperator& op, double alpha, std::span<const double> u,
                                         const LatticeBox& region);

double rayleigh(const SymmetricLatticeOperator& op, std::span<const double> vec);

// Ritz values of op on span(test_vectors), ascending; each is an upper bound for the matching eigenvalue.
std::vector<double> subspace_upper_bounds(const SymmetricLatticeOperator& op,
                                          const std::vector<std::vector<double>>& test_vectors);

struct AutoBoxOptions {
  long start = 8;
  long max_half_width = 1L << 22;
  double tol = 1e-11;
};

// Doubles the half-width until max_n |ΔE_n|/(1+|E_n|) ≤ tol, then returns the larger box's result.
SpectrumResult solve_autosized(const std::function<SymmetricLatticeOperator(long)>& build, std::size_t k,
                               const AutoBoxOptions& opts, bool want_vectors = false);

}  // namespace lsc

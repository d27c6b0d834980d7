#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lsc/lattice_box.hpp"

namespace lsc {

using Point = std::vector<double>;

// Non-degenerate zero of a potential.  `axes` is row-major d×d; row i is the
// principal direction carrying frequency i.
struct Well {
  Point location;
  std::vector<double> frequencies;  // ascending, ω_i = sqrt(Hessian eigenvalue)
  std::vector<double> axes;
};

class Potential {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;
  using AxisTerm = std::function<double(double)>;

  Potential(std::string name, int dim, Evaluator eval, std::vector<Well> wells,
            double positivity_radius, double positivity_floor);

  // V(x) = Σ_a terms[a](x_a)
  static Potential separable(std::string name, std::vector<AxisTerm> terms, std::vector<Well> wells,
                             double positivity_radius, double positivity_floor);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  double operator()(std::span<const double> x) const { return eval_(x); }
  const std::vector<Well>& wells() const { return wells_; }
  double positivity_radius() const { return radius_; }
  double positivity_floor() const { return floor_; }
  bool is_separable() const { return !terms_.empty(); }
  const AxisTerm& axis_term(int axis) const { return terms_.at(axis); }

 private:
  std::string name_;
  int dim_;
  Evaluator eval_;
  std::vector<Well> wells_;
  double radius_;
  double floor_;
  std::vector<AxisTerm> terms_;
};

// (N, γ, ω) with λ_N = N^{1-γ}, κ = sqrt(ω / N^{1+γ}), mesh 1/N.
struct ScalingParams {
  long N = 1;
  double gamma = 0.0;
  double omega = 1.0;

  ScalingParams(long N, double gamma, double omega = 1.0);
  double lambda() const;
  double kappa() const;
  double mesh() const { return 1.0 / static_cast<double>(N); }
  // N^{2(1-γ)}, the prefactor of V_N in H_N
  double potential_prefactor() const;
};

namespace potentials {

// ½ Σ ω_a² x_a²
Potential harmonic(std::vector<double> omega);
// ½ (x² - 1)², wells at ±1 with ω = 2
Potential double_well();
// Σ_a ½ (x_a² - 1)², 2^d wells
Potential double_well_sum(int dim);
// min_l ½ ω² |x - a_l|² with a quartic smooth-min across the bisecting slabs
Potential multi_well(std::vector<Point> centers, double omega);

// Catalogue lookup used by the CLI.
Potential by_name(const std::string& id, const std::vector<double>& omega,
                  const std::vector<Point>& wells, int dim);

}  // namespace potentials

double eval_potential(const Potential& v, std::span<const double> x);

// Entry at lattice point x is V(x / N).
std::vector<double> sample_on_lattice(const Potential& v, long N, const LatticeBox& box);

struct HessianResult {
  std::vector<double> frequencies;  // ascending
  std::vector<double> axes;         // row-major, row i pairs with frequencies[i]
  std::vector<double> hessian;      // row-major central-difference Hessian
};

// Central-difference Hessian at a registered zero, diagonalised by cyclic Jacobi.
HessianResult hessian_analysis(const Potential& v, std::span<const double> a);
std::vector<double> hessian_frequencies(const Potential& v, std::span<const double> a);

// Eigen-decomposition of a small symmetric matrix by cyclic Jacobi rotations.
// Returns eigenvalues ascending; eigenvectors as rows of `vectors`.
void jacobi_eigen(std::vector<double> matrix, int n, std::vector<double>& values,
                  std::vector<double>& vectors);

struct ValidationReport {
  bool nonnegative = true;  // V ≥ 0 on the scan grid
  double min_value = 0.0;
  Point min_location;
  bool wells_ok = true;  // registered wells pass the Hessian test
  std::vector<std::string> well_messages;
  std::vector<Point> unregistered_zeros;  // grid points with V < zero_tol far from wells
  bool positive_at_infinity = true;       // V ≥ c on R0 < |x| ≤ scan_radius
  double min_outside = 0.0;
  std::string smoothness = "assumed";
  std::size_t well_count = 0;
  std::size_t grid_points = 0;

  bool passed() const { return nonnegative && wells_ok && unregistered_zeros.empty() && positive_at_infinity; }
};

ValidationReport validate_assumptions(const Potential& v, double scan_radius, double grid_step);

}  // namespace lsc

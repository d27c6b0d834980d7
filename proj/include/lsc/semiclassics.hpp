#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lsc/eigensolve.hpp"
#include "lsc/intervals.hpp"
#include "lsc/operator.hpp"
#include "lsc/potentials.hpp"

namespace lsc {

// ---- limit spectrum Σ(V) ----

struct SigmaEntry {
  double value;
  std::size_t well;
  std::vector<int> multi_index;
};

struct SigmaSequence {
  std::string potential;
  std::vector<SigmaEntry> entries;
  std::vector<double> values() const;
};

// ½ Σ_i ω_i (2 n_i + 1), summed in axis order.
double sigma_level(const Well& w, const std::vector<int>& multi_index);

// Best-first merge over wells; ties ordered by (value, well, multi-index).
SigmaSequence sigma_enumerate(const Potential& v, std::size_t count);

// ---- regimes ----

// 1-γ for γ > -1, 2|γ| for γ < -1.
double predicted_exponent(double gamma);
inline bool is_prescaled(double gamma) { return gamma < -1.0; }

// Lowest k eigenvalues of H_N on an auto-sized box. For γ < -1 the operator is
// N^{2-2|γ|}Δ/2 + N²V(x/N) = N^{-2|γ|}H_N and `log_scale` = 2|γ| ln N.
struct HNSolution {
  std::vector<double> values;
  long half_width = 0;
  bool prescaled = false;
  double log_scale = 0.0;
  bool converged = false;
};

// Starting half-width of the doubling search.
long default_half_width(const Potential& v, const ScalingParams& p, int n_max);

// N^{2-2|γ|}Δ/2 + N²V(x/N) (used for γ < -1)
SymmetricLatticeOperator assemble_HN_prescaled(const Potential& v, const ScalingParams& p, const LatticeBox& box);

// fixed_half_width > 0 skips the doubling search.
HNSolution solve_HN(const Potential& v, const ScalingParams& p, std::size_t k, long fixed_half_width = 0);

// ---- harmonic κ study ----

struct KappaRow {
  double kappa;
  int n;
  double E_n;
  double ratio;   // E_n/κ²
  double target;  // 2n+1
  double abs_err;
  double ritz;    // largest Ritz value of span{ψ_0..ψ_n}, divided by κ²
  long half_width;
};

struct KappaTable {
  double omega = 1.0;
  std::vector<KappaRow> rows;  // κ-major, then n
  std::vector<double> order_estimates;  // per n: log(err_i/err_{i+1}) / log(κ_i/κ_{i+1}) for the last pair
  std::vector<bool> strictly_decreasing;
};

KappaTable harmonic_kappa_study(double omega, const std::vector<double>& kappas, int n_max, bool with_ritz = true);

// ---- convergence in N ----

struct ConvergenceRow {
  double gamma;
  long N;
  int n;
  double E_n;
  double lambda_N;
  double ratio;
  double target;
  double abs_err;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;  // N-major, then n
  std::vector<bool> decreasing;      // per n, abs_err non-increasing over N
  std::vector<double> order_estimates;  // per n, log2(err(N)/err(2N)) at the last doubling pair
};

ConvergenceTable converge_study(const Potential& v, double gamma, const std::vector<long>& Ns, int n_max);

// ---- regime sweep ----

struct RegimePoint {
  double gamma;
  long N;
  std::vector<double> E;  // E_n(H_N), or E_n/N^{2|γ|} when prescaled
  bool prescaled;
  double log_scale;
};

struct RegimeRow {
  double gamma;
  int n;
  double slope_fit;
  double slope_pred;
  double limit_const_fit;   // E_n/N^{h(γ)} at the largest N
  double limit_const_pred;
};

struct RegimeSweep {
  double omega = 1.0;
  std::vector<RegimePoint> points;  // grid order: γ-major, then N
  std::vector<RegimeRow> rows;
  // γ = -1: max_n relative spread of E_n/N² across N
  std::vector<std::pair<double, double>> critical_spread;
};

// ln E_n = slope·ln N + c over the last max(3, ⌊|N|/2⌋) points.
double fit_slope(const std::vector<double>& logN, const std::vector<double>& logE);

RegimeSweep regime_sweep(double omega, const std::vector<double>& gammas, const std::vector<long>& Ns, int n_max);

// ---- interval lower bounds ----

struct IntervalReport {
  Interval piece;
  double ground_ratio = 0.0;  // E_{0,j}/κ²
  bool certificate = false;
  double min_slack_ratio = 0.0;  // min ((H+α)u)/u, divided by κ²
  std::string method;            // "psi", "flat" or "arch"
  bool flat_certificate = false;  // the spike-then-constant continuation alone
  double flat_min_slack_ratio = 0.0;
};

struct LowerBoundReport {
  IntervalDecomposition decomposition;
  long half_width = 0;
  long spike = 0;
  double epsilon = 0.1;
  std::vector<IntervalReport> intervals;
  double min_ground_ratio = 0.0;
  bool all_certified = false;
  double target = 0.0;  // (1-ε)(2n+1)
};

LowerBoundReport interval_lowerbound_experiment(int n, double kappa, double delta, double epsilon = 0.1);

// ---- modified vs plain oscillator ----

struct ModifiedRow {
  double kappa;
  int n;
  double E_plain;
  double E_modified;
  double scaled_gap;  // |Ẽ - E|/κ²
  bool ordered;       // Ẽ ≥ E up to bisection accuracy
  long spike;
  long half_width;
};

std::vector<ModifiedRow> modified_vs_plain(int n_max, const std::vector<double>& kappas, double delta);

// ---- quasimode diagnostics ----

struct QuasimodeRow {
  int n;
  double kappa;
  double residual_sup_scaled;  // sup|r|/κ⁴
  double gram_deviation;       // |⟨ψ_n,ψ_n⟩ - √π2ⁿn!/κ|
  double max_offdiag_gram;     // max_{m<n} |⟨ψ_n,ψ_m⟩|
  double ritz_ratio;           // largest Ritz value of span{ψ_0..ψ_n} / κ²
  double eigen_ratio;          // E_n(κ)/κ²
};

std::vector<QuasimodeRow> quasimode_diagnostics(int n_max, const std::vector<double>& kappas);

// ---- IMS localisation for general potentials ----

struct ImsWellReport {
  std::size_t well;
  double commutator_norm;   // ‖[η_l,[η_l,L]]‖, L = (N²/2)Δ
  bool commutator_exact;
  double commutator_bound;  // 16 λ_N / N^{2δ}
  double potential_error;   // max_x η_l² |N^{2(1-γ)}(V - V_l^harm)(x/N)|
  double potential_scale;   // λ_N² (r/N)³
};

struct ImsReport {
  ScalingParams params{1, 0.0, 1.0};
  double delta_cut = 0.0;
  double inner_radius = 0.0;
  long half_width = 0;
  double identity_residual = 0.0;
  double variation_bump = 0.0;   // max step variation over η_l, l ≥ 1
  double variation_outer = 0.0;  // the same for η_0
  double outer_commutator_norm = 0.0;
  std::vector<ImsWellReport> wells;
  double outside_floor = 0.0;  // min of λ_N² V(x/N) where η_0 > 0, divided by λ_N
  std::vector<double> ratios;  // E_n(H_N)/λ_N
  std::vector<double> targets;
};

ImsReport ims_general_experiment(const Potential& v, const ScalingParams& params, double delta_cut, int n_max = 1);

}  // namespace lsc

#include "lsc/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "lsc/error.hpp"

namespace lsc {

std::vector<double> SigmaSequence::values() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.value);
  return out;
}

double sigma_level(const Well& w, const std::vector<int>& multi_index) {
  double s = 0.0;
  for (std::size_t i = 0; i < multi_index.size(); ++i) s += 0.5 * w.frequencies[i] * (2.0 * multi_index[i] + 1.0);
  return s;
}

SigmaSequence sigma_enumerate(const Potential& v, std::size_t count) {
  require(count >= 1, ErrorCode::InvalidArgument, "count must be positive");
  require(!v.wells().empty(), ErrorCode::InvalidArgument, "potential has no registered wells");
  using State = std::tuple<double, std::size_t, std::vector<int>>;
  std::priority_queue<State, std::vector<State>, std::greater<State>> heap;
  std::set<std::pair<std::size_t, std::vector<int>>> seen;
  for (std::size_t l = 0; l < v.wells().size(); ++l) {
    std::vector<int> origin(v.dim(), 0);
    heap.emplace(sigma_level(v.wells()[l], origin), l, origin);
    seen.emplace(l, origin);
  }
  SigmaSequence out;
  out.potential = v.name();
  while (out.entries.size() < count) {
    auto [value, l, idx] = heap.top();
    heap.pop();
    for (int a = 0; a < v.dim(); ++a) {
      auto next = idx;
      ++next[a];
      if (seen.emplace(l, next).second) heap.emplace(sigma_level(v.wells()[l], next), l, next);
    }
    out.entries.push_back({value, l, std::move(idx)});
  }
  return out;
}

double predicted_exponent(double gamma) { return gamma >= -1.0 ? 1.0 - gamma : 2.0 * std::abs(gamma); }

namespace {

double max_well_radius(const Potential& v) {
  double r = 0.0;
  for (const auto& w : v.wells())
    for (double c : w.location) r = std::max(r, std::abs(c));
  return r;
}

double min_frequency(const Potential& v) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& w : v.wells()) m = std::min(m, w.frequencies.front());
  return m;
}

std::vector<double> scaled_samples(const Potential::AxisTerm& term, long N, const LatticeBox& box, double pref) {
  std::vector<double> w(box.size());
  const double inv = 1.0 / static_cast<double>(N);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = pref * term(static_cast<double>(box.coord(i, 0)) * inv);
  return w;
}

double kinetic_coefficient(const ScalingParams& p) {
  const double n = static_cast<double>(p.N);
  return is_prescaled(p.gamma) ? 0.5 * std::pow(n, 2.0 - 2.0 * std::abs(p.gamma)) : 0.5 * n * n;
}

double potential_coefficient(const ScalingParams& p) {
  const double n = static_cast<double>(p.N);
  return is_prescaled(p.gamma) ? n * n : p.potential_prefactor();
}

}  // namespace

long default_half_width(const Potential& v, const ScalingParams& p, int n_max) {
  const double n = static_cast<double>(p.N);
  const double reach = max_well_radius(v) * n;
  long m;
  if (is_prescaled(p.gamma)) {
    m = static_cast<long>(std::ceil(std::max(v.positivity_radius() * n, reach + n_max + 16.0)));
  } else {
    const double kappa = std::sqrt(min_frequency(v) / std::pow(n, 1.0 + p.gamma));
    const double width = (std::sqrt(2.0 * n_max + 1.0) + 8.0) / kappa;
    double start = reach + width;
    if (v.name() != "harmonic") start = std::max(start, v.positivity_radius() * n);
    m = static_cast<long>(std::ceil(start));
  }
  return std::max({m, 8L, static_cast<long>(n_max) + 2});
}

SymmetricLatticeOperator assemble_HN_prescaled(const Potential& v, const ScalingParams& p, const LatticeBox& box) {
  const double n = static_cast<double>(p.N);
  auto w = sample_on_lattice(v, p.N, box);
  for (double& e : w) e *= n * n;
  return assemble(box, 0.5 * std::pow(n, 2.0 - 2.0 * std::abs(p.gamma)), std::move(w));
}

HNSolution solve_HN(const Potential& v, const ScalingParams& p, std::size_t k, long fixed_half_width) {
  require(k >= 1, ErrorCode::InvalidArgument, "need at least one eigenvalue");
  HNSolution sol;
  sol.prescaled = is_prescaled(p.gamma);
  sol.log_scale = sol.prescaled ? 2.0 * std::abs(p.gamma) * std::log(static_cast<double>(p.N)) : 0.0;
  const int d = v.dim();
  const int n_max = static_cast<int>(k) - 1;
  const double kin = kinetic_coefficient(p);
  const double pot = potential_coefficient(p);

  if (d == 1 || !v.is_separable()) {
    auto build = [&](long M) {
      const auto box = LatticeBox::symmetric(d, M);
      return sol.prescaled ? assemble_HN_prescaled(v, p, box) : assemble_HN(v, p, box);
    };
    if (fixed_half_width > 0) {
      sol.values = eigs(build(fixed_half_width), k).values;
      sol.half_width = fixed_half_width;
      sol.converged = true;
      return sol;
    }
    AutoBoxOptions opts;
    opts.start = default_half_width(v, p, n_max);
    if (d > 1) {
      opts.max_half_width = static_cast<long>((std::floor(std::pow(4096.0, 1.0 / d)) - 1.0) / 2.0);
      opts.start = std::min(opts.start, opts.max_half_width);
    }
    const auto r = solve_autosized(build, k, opts);
    sol.values = r.values;
    sol.half_width = r.box.upper(0);
    sol.converged = r.truncation_converged;
    return sol;
  }

  // Separable: Δ = Σ_a Δ_a, so the spectrum is sums of axis spectra.
  std::vector<std::vector<double>> axis(d);
  sol.converged = true;
  const long start = fixed_half_width > 0 ? fixed_half_width : default_half_width(v, p, n_max);
  for (int a = 0; a < d; ++a) {
    auto build = [&](long M) {
      const auto box = LatticeBox::symmetric(1, M);
      return assemble(box, kin, scaled_samples(v.axis_term(a), p.N, box, pot));
    };
    if (fixed_half_width > 0) {
      axis[a] = eigs(build(start), k).values;
      sol.half_width = start;
    } else {
      AutoBoxOptions opts;
      opts.start = start;
      const auto r = solve_autosized(build, k, opts);
      axis[a] = r.values;
      sol.half_width = std::max(sol.half_width, r.box.upper(0));
      sol.converged = sol.converged && r.truncation_converged;
    }
  }
  for (const auto& lvl : eigs_separable(axis, k)) sol.values.push_back(lvl.value);
  return sol;
}

double fit_slope(const std::vector<double>& logN, const std::vector<double>& logE) {
  require(logN.size() == logE.size() && logN.size() >= 2, ErrorCode::InvalidArgument, "slope fit needs >= 2 points");
  const std::size_t total = logN.size();
  const std::size_t m = std::min(total, std::max<std::size_t>(3, total / 2));
  const std::size_t first = total - m;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = first; i < total; ++i) {
    mx += logN[i];
    my += logE[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = first; i < total; ++i) {
    sxy += (logN[i] - mx) * (logE[i] - my);
    sxx += (logN[i] - mx) * (logN[i] - mx);
  }
  return sxy / sxx;
}

RegimeSweep regime_sweep(double omega, const std::vector<double>& gammas, const std::vector<long>& Ns, int n_max) {
  require(omega > 0.0, ErrorCode::InvalidArgument, "omega must be positive");
  require(n_max >= 0, ErrorCode::InvalidArgument, "n_max must be nonnegative");
  require(Ns.size() >= 3, ErrorCode::InvalidArgument, "regime sweep needs at least three values of N");
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    require(Ns[i] >= 1, ErrorCode::InvalidArgument, "N must be positive");
    if (i > 0) require(Ns[i] > Ns[i - 1], ErrorCode::InvalidArgument, "N list must be strictly increasing");
  }
  for (double g : gammas) {
    require(std::isfinite(g), ErrorCode::InvalidArgument, "gamma must be finite");
    if (is_prescaled(g))
      require(Ns.back() <= 64, ErrorCode::InvalidArgument, "for gamma < -1 the N list is capped at 64");
  }
  const Potential v = potentials::harmonic({omega});
  const std::size_t k = static_cast<std::size_t>(n_max) + 1;

  // γ = -1 uses one box for every N so that H_N = N²H_1 holds entry by entry.
  const long critical_box = solve_HN(v, ScalingParams(1, -1.0, omega), k).half_width;

  RegimeSweep out;
  out.omega = omega;
  out.points.resize(gammas.size() * Ns.size());
  std::vector<std::exception_ptr> errors(out.points.size());
  const auto total = static_cast<std::ptrdiff_t>(out.points.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const std::size_t gi = static_cast<std::size_t>(idx) / Ns.size();
    const std::size_t ni = static_cast<std::size_t>(idx) % Ns.size();
    try {
      const ScalingParams p(Ns[ni], gammas[gi], omega);
      const auto sol = solve_HN(v, p, k, gammas[gi] == -1.0 ? critical_box : 0);
      out.points[idx] = {gammas[gi], Ns[ni], sol.values, sol.prescaled, sol.log_scale};
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<double> critical_ref;
  for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
    const double g = gammas[gi];
    const double h = predicted_exponent(g);
    if (g == -1.0 && critical_ref.empty())
      critical_ref = solve_HN(v, ScalingParams(1, -1.0, omega), k, critical_box).values;
    for (int n = 0; n <= n_max; ++n) {
      std::vector<double> lx, ly;
      for (std::size_t ni = 0; ni < Ns.size(); ++ni) {
        const auto& pt = out.points[gi * Ns.size() + ni];
        lx.push_back(std::log(static_cast<double>(pt.N)));
        ly.push_back(pt.log_scale + std::log(pt.E[n]));
      }
      const auto& last = out.points[gi * Ns.size() + Ns.size() - 1];
      const double nlast = static_cast<double>(last.N);
      const double fit_const = last.prescaled ? last.E[n] : last.E[n] / std::pow(nlast, h);
      double pred;
      if (g > -1.0) {
        pred = omega * (n + 0.5);
      } else if (g == -1.0) {
        pred = critical_ref[n];
      } else {
        const double m = std::ceil(n / 2.0);
        pred = omega * omega * m * m / 2.0;
      }
      out.rows.push_back({g, n, fit_slope(lx, ly), h, fit_const, pred});
    }
    if (g == -1.0) {
      double spread = 0.0;
      for (int n = 0; n <= n_max; ++n) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t ni = 0; ni < Ns.size(); ++ni) {
          const auto& pt = out.points[gi * Ns.size() + ni];
          const double nn = static_cast<double>(pt.N);
          const double s = pt.E[n] / (nn * nn);
          lo = std::min(lo, s);
          hi = std::max(hi, s);
        }
        spread = std::max(spread, (hi - lo) / std::abs(hi));
      }
      out.critical_spread.emplace_back(g, spread);
    }
  }
  return out;
}

}  // namespace lsc

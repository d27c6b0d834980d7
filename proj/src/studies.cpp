#include <algorithm>
#include <cmath>

#include "lsc/error.hpp"
#include "lsc/hermite.hpp"
#include "lsc/ims.hpp"
#include "lsc/semiclassics.hpp"

namespace lsc {

namespace {

SpectrumResult solve_hkappa(double kappa, std::size_t k, bool want_vectors = false) {
  AutoBoxOptions opts;
  opts.start = hermite::quasimode_radius(static_cast<int>(k) - 1, kappa);
  return solve_autosized([kappa](long M) { return assemble_Hkappa(kappa, LatticeBox::symmetric(1, M)); }, k, opts,
                         want_vectors);
}

double largest_ritz(const SymmetricLatticeOperator& op, int n, double kappa) {
  std::vector<std::vector<double>> tv;
  for (int m = 0; m <= n; ++m) tv.push_back(hermite::TestFunction{m, kappa}.sample(op.box()));
  return subspace_upper_bounds(op, tv).back();
}

}  // namespace

KappaTable harmonic_kappa_study(double omega, const std::vector<double>& kappas, int n_max, bool with_ritz) {
  require(omega > 0.0, ErrorCode::InvalidArgument, "omega must be positive");
  require(!kappas.empty(), ErrorCode::InvalidArgument, "kappa list is empty");
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    require(kappas[i] > 0.0, ErrorCode::InvalidArgument, "kappa values must be positive");
    if (i > 0) require(kappas[i] < kappas[i - 1], ErrorCode::InvalidArgument, "kappa list must be descending");
  }
  KappaTable t;
  t.omega = omega;
  const std::size_t k = static_cast<std::size_t>(n_max) + 1;
  for (double kappa : kappas) {
    const auto r = solve_hkappa(kappa, k);
    const long M = r.box.upper(0);
    const auto op = assemble_Hkappa(kappa, r.box);
    const double k2 = kappa * kappa;
    for (int n = 0; n <= n_max; ++n) {
      const double ratio = r.values[n] / k2;
      const double target = 2.0 * n + 1.0;
      const double ritz = with_ritz ? largest_ritz(op, n, kappa) / k2 : std::nan("");
      t.rows.push_back({kappa, n, r.values[n], ratio, target, std::abs(ratio - target), ritz, M});
    }
  }
  for (int n = 0; n <= n_max; ++n) {
    bool dec = true;
    for (std::size_t i = 1; i < kappas.size(); ++i)
      dec = dec && t.rows[i * k + n].abs_err < t.rows[(i - 1) * k + n].abs_err;
    t.strictly_decreasing.push_back(dec);
    if (kappas.size() >= 2) {
      const auto& a = t.rows[(kappas.size() - 2) * k + n];
      const auto& b = t.rows[(kappas.size() - 1) * k + n];
      t.order_estimates.push_back(std::log(a.abs_err / b.abs_err) / std::log(a.kappa / b.kappa));
    }
  }
  return t;
}

ConvergenceTable converge_study(const Potential& v, double gamma, const std::vector<long>& Ns, int n_max) {
  require(gamma > -1.0 && gamma < 1.0, ErrorCode::InvalidArgument, "convergence study needs gamma in (-1, 1)");
  require(!Ns.empty(), ErrorCode::InvalidArgument, "N list is empty");
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    require(Ns[i] >= 1, ErrorCode::InvalidArgument, "N must be positive");
    if (i > 0) require(Ns[i] > Ns[i - 1], ErrorCode::InvalidArgument, "N list must be strictly increasing");
  }
  const std::size_t k = static_cast<std::size_t>(n_max) + 1;
  const auto targets = sigma_enumerate(v, k).values();
  ConvergenceTable t;
  for (long N : Ns) {
    const ScalingParams p(N, gamma, 1.0);
    const auto sol = solve_HN(v, p, k);
    const double lam = p.lambda();
    for (int n = 0; n <= n_max; ++n) {
      const double ratio = sol.values[n] / lam;
      t.rows.push_back({gamma, N, n, sol.values[n], lam, ratio, targets[n], std::abs(ratio - targets[n])});
    }
  }
  for (int n = 0; n <= n_max; ++n) {
    bool dec = true;
    for (std::size_t i = 1; i < Ns.size(); ++i) dec = dec && t.rows[i * k + n].abs_err <= t.rows[(i - 1) * k + n].abs_err;
    t.decreasing.push_back(dec);
    double order = std::nan("");
    if (Ns.size() >= 2 && Ns[Ns.size() - 1] == 2 * Ns[Ns.size() - 2]) {
      const auto& a = t.rows[(Ns.size() - 2) * k + n];
      const auto& b = t.rows[(Ns.size() - 1) * k + n];
      order = std::log2(a.abs_err / b.abs_err);
    }
    t.order_estimates.push_back(order);
  }
  return t;
}

namespace {

// Positive side of the unbounded piece; the negative side is its mirror image.
struct Continuation {
  std::vector<double> u;
  bool ok = true;
};

// ψ̃ past the spike: constant ψ(x_δ) (the "flat" form), or a cosine arch that
// climbs until v_κ ≥ μ and is constant afterwards.
Continuation continue_past_spike(const std::vector<double>& psi, long lo, long spike, double kappa, double mu,
                                 bool arch) {
  Continuation c;
  c.u = psi;
  const std::size_t is = static_cast<std::size_t>(spike - lo);
  if (spike < lo || is >= psi.size()) return c;
  const double a0 = psi[is];
  const double k4 = std::pow(kappa, 4.0);
  auto v = [&](long x) { return k4 * static_cast<double>(x) * static_cast<double>(x); };
  if (!arch || v(spike + 1) >= mu) {
    for (std::size_t i = is + 1; i < psi.size(); ++i) c.u[i] = a0;
    return c;
  }
  long xp = spike + 1;
  while (v(xp) < mu) ++xp;
  const double need = mu - v(spike + 1);
  const double theta = std::acos(1.0 - 0.5 * need * 1.01);
  if (!(theta * static_cast<double>(xp - spike) < 0.5 * std::acos(-1.0))) {
    c.ok = false;
    return c;
  }
  const double amp = a0 / std::cos(theta * static_cast<double>(xp - spike));
  for (std::size_t i = is + 1; i < psi.size(); ++i) {
    const long x = lo + static_cast<long>(i);
    c.u[i] = x <= xp ? amp * std::cos(theta * static_cast<double>(xp - x)) : amp;
  }
  return c;
}

}  // namespace

LowerBoundReport interval_lowerbound_experiment(int n, double kappa, double delta, double epsilon) {
  require(n >= 1, ErrorCode::InvalidArgument, "interval lower bounds need n >= 1");
  require(epsilon > 0.0 && epsilon <= 1.0, ErrorCode::InvalidArgument, "epsilon must lie in (0, 1]");
  const ModifiedPotentialParams mp(kappa, delta);
  LowerBoundReport rep;
  rep.decomposition = build_interval_decomposition(n, kappa);
  rep.epsilon = epsilon;
  rep.spike = mp.spike_location();
  rep.half_width = std::max(interval_box_cap(rep.decomposition), rep.spike + 2);
  const auto full = LatticeBox::symmetric(1, rep.half_width);
  const auto plain = assemble_Hkappa(kappa, full);
  const auto modified = assemble_modified(mp, full);
  const double k2 = kappa * kappa;
  const double mu = (1.0 - epsilon) * k2 * (2.0 * n + 1.0);
  rep.target = (1.0 - epsilon) * (2.0 * n + 1.0);
  rep.all_certified = true;
  rep.min_ground_ratio = std::numeric_limits<double>::infinity();

  for (const auto& piece : rep.decomposition.intervals(rep.half_width)) {
    const auto sub = LatticeBox::interval(piece.lo, piece.hi);
    const auto op = restrict_to(piece.unbounded ? modified : plain, sub);
    IntervalReport ir;
    ir.piece = piece;
    ir.ground_ratio = eigs_tridiag(op, 1).values.front() / k2;
    rep.min_ground_ratio = std::min(rep.min_ground_ratio, ir.ground_ratio);

    const hermite::TestFunction f{n, kappa, piece.beta, 0, true};
    const auto psi = f.sample(sub);
    if (!piece.unbounded) {
      const auto cert = verify_superharmonic(op, -mu, psi, sub);
      ir.method = "psi";
      ir.certificate = cert.holds;
      ir.min_slack_ratio = cert.min_ratio / k2;
    } else {
      // Work on the positive mirror image; the operator and ψ are even.
      const bool negative = piece.index < 0;
      const long lo = negative ? -piece.hi : piece.lo;
      std::vector<double> pos(psi);
      if (negative) std::reverse(pos.begin(), pos.end());
      const auto pos_op = restrict_to(modified, LatticeBox::interval(lo, lo + static_cast<long>(pos.size()) - 1));
      const auto pos_box = pos_op.box();
      const auto flat = continue_past_spike(pos, lo, rep.spike, kappa, mu, false);
      const auto flat_cert = verify_superharmonic(pos_op, -mu, flat.u, pos_box);
      ir.flat_certificate = flat_cert.holds;
      ir.flat_min_slack_ratio = flat_cert.min_ratio / k2;
      if (flat_cert.holds) {
        ir.method = "flat";
        ir.certificate = true;
        ir.min_slack_ratio = ir.flat_min_slack_ratio;
      } else {
        const auto arch = continue_past_spike(pos, lo, rep.spike, kappa, mu, true);
        ir.method = "arch";
        if (arch.ok) {
          const auto cert = verify_superharmonic(pos_op, -mu, arch.u, pos_box);
          ir.certificate = cert.holds;
          ir.min_slack_ratio = cert.min_ratio / k2;
        }
      }
    }
    rep.all_certified = rep.all_certified && ir.certificate;
    rep.intervals.push_back(ir);
  }
  return rep;
}

std::vector<ModifiedRow> modified_vs_plain(int n_max, const std::vector<double>& kappas, double delta) {
  require(n_max >= 0, ErrorCode::InvalidArgument, "n_max must be nonnegative");
  const std::size_t k = static_cast<std::size_t>(n_max) + 1;
  std::vector<ModifiedRow> rows;
  for (double kappa : kappas) {
    const ModifiedPotentialParams mp(kappa, delta);
    const long spike = mp.spike_location();
    const long M = std::max(solve_hkappa(kappa, k).box.upper(0), spike + 1);
    const auto box = LatticeBox::symmetric(1, M);
    const auto plain = eigs_tridiag(assemble_Hkappa(kappa, box), k).values;
    const auto mod = eigs_tridiag(assemble_modified(mp, box), k).values;
    const double k2 = kappa * kappa;
    for (int n = 0; n <= n_max; ++n) {
      const double slack = 1e-12 * (1.0 + std::abs(plain[n]));
      rows.push_back({kappa, n, plain[n], mod[n], std::abs(mod[n] - plain[n]) / k2, mod[n] >= plain[n] - slack, spike, M});
    }
  }
  return rows;
}

std::vector<QuasimodeRow> quasimode_diagnostics(int n_max, const std::vector<double>& kappas) {
  require(n_max >= 0, ErrorCode::InvalidArgument, "n_max must be nonnegative");
  std::vector<QuasimodeRow> rows;
  for (double kappa : kappas) {
    const auto box = LatticeBox::symmetric(1, hermite::quasimode_radius(n_max, kappa));
    const auto op = assemble_Hkappa(kappa, box);
    const auto ev = eigs_tridiag(op, static_cast<std::size_t>(n_max) + 1).values;
    const double k2 = kappa * kappa;
    for (int n = 0; n <= n_max; ++n) {
      const auto q = hermite::quasimode_apply(n, kappa, box);
      double sup = 0.0;
      for (double r : q.residual) sup = std::max(sup, std::abs(r));
      double off = 0.0;
      for (int m = 0; m < n; ++m) off = std::max(off, std::abs(hermite::gram_entry(n, m, kappa, box)));
      const double dev = std::abs(hermite::gram_entry(n, n, kappa, box) - hermite::gram_norm_limit(n, kappa));
      rows.push_back({n, kappa, sup / (k2 * k2), dev, off, largest_ritz(op, n, kappa) / k2, ev[n] / k2});
    }
  }
  return rows;
}

ImsReport ims_general_experiment(const Potential& v, const ScalingParams& params, double delta_cut, int n_max) {
  require(params.gamma > -1.0, ErrorCode::InvalidArgument, "the localisation experiment needs gamma > -1");
  require(delta_cut > 0.0 && delta_cut < 0.5 * (1.0 - params.gamma), ErrorCode::InvalidArgument,
          "delta_cut must lie in (0, (1-gamma)/2)");
  ImsReport rep;
  rep.params = params;
  rep.delta_cut = delta_cut;
  const double N = static_cast<double>(params.N);
  const double lam = params.lambda();
  const double pref = params.potential_prefactor();
  rep.inner_radius = std::pow(N, 1.0 + delta_cut) / std::sqrt(lam);
  const int d = v.dim();

  std::vector<Point> centers;
  double reach = 0.0;
  for (const auto& w : v.wells()) {
    Point c(d);
    for (int a = 0; a < d; ++a) {
      c[a] = N * w.location[a];
      reach = std::max(reach, std::abs(c[a]));
    }
    centers.push_back(c);
  }
  const std::size_t k = static_cast<std::size_t>(n_max) + 1;
  const auto sol = solve_HN(v, params, k);
  rep.half_width = std::max(sol.half_width, static_cast<long>(std::ceil(reach + rep.inner_radius)) + 1);
  const auto targets = sigma_enumerate(v, k).values();
  for (std::size_t n = 0; n < k; ++n) {
    rep.ratios.push_back(sol.values[n] / lam);
    rep.targets.push_back(targets[n]);
  }

  const auto box = LatticeBox::symmetric(d, rep.half_width);
  const auto H = assemble_HN(v, params, box);
  const auto eta = ims_partition(centers, rep.inner_radius, box);
  rep.identity_residual = ims_identity_residual(H, eta);
  const auto L = laplace_part(H);

  for (std::size_t l = 0; l < v.wells().size(); ++l) {
    const auto& e = eta[l + 1];
    rep.variation_bump = std::max(rep.variation_bump, max_step_variation(box, e));
    const auto nb = spectral_norm_upper(double_commutator(L, e));
    const auto& w = v.wells()[l];
    double err = 0.0;
    Point y(d);
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (e[i] == 0.0) continue;
      for (int a = 0; a < d; ++a) y[a] = static_cast<double>(box.coord(i, a)) / N;
      double harm = 0.0;
      for (int r = 0; r < d; ++r) {
        double proj = 0.0;
        for (int a = 0; a < d; ++a) proj += w.axes[r * d + a] * (y[a] - w.location[a]);
        harm += 0.5 * w.frequencies[r] * w.frequencies[r] * proj * proj;
      }
      err = std::max(err, e[i] * e[i] * std::abs(pref * (v(y) - harm)));
    }
    const double rn = rep.inner_radius / N;
    rep.wells.push_back({l, nb.value, nb.exact, 16.0 * lam / std::pow(N, 2.0 * delta_cut), err, lam * lam * rn * rn * rn});
  }
  rep.variation_outer = max_step_variation(box, eta[0]);
  rep.outer_commutator_norm = spectral_norm_upper(double_commutator(L, eta[0])).value;

  rep.outside_floor = std::numeric_limits<double>::infinity();
  const auto pot = H.potential_part();
  for (std::size_t i = 0; i < box.size(); ++i)
    if (eta[0][i] > 0.0) rep.outside_floor = std::min(rep.outside_floor, pot[i] / lam);
  return rep;
}

}  // namespace lsc

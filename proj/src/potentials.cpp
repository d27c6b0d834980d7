#include "lsc/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lsc/error.hpp"

namespace lsc {

Potential::Potential(std::string name, int dim, Evaluator eval, std::vector<Well> wells,
                     double positivity_radius, double positivity_floor)
    : name_(std::move(name)),
      dim_(dim),
      eval_(std::move(eval)),
      wells_(std::move(wells)),
      radius_(positivity_radius),
      floor_(positivity_floor) {
  require(dim_ >= 1, ErrorCode::InvalidArgument, "potential dimension must be positive");
  for (const auto& w : wells_) {
    require(static_cast<int>(w.location.size()) == dim_, ErrorCode::InvalidArgument,
            "well location has wrong dimension");
    require(static_cast<int>(w.frequencies.size()) == dim_, ErrorCode::InvalidArgument,
            "well needs one frequency per axis");
    require(std::is_sorted(w.frequencies.begin(), w.frequencies.end()), ErrorCode::InvalidArgument,
            "well frequencies must be ascending");
    for (double f : w.frequencies)
      require(f > 0.0, ErrorCode::InvalidArgument, "well frequencies must be positive");
  }
}

Potential Potential::separable(std::string name, std::vector<AxisTerm> terms, std::vector<Well> wells,
                               double positivity_radius, double positivity_floor) {
  const int d = static_cast<int>(terms.size());
  auto eval = [terms](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t a = 0; a < terms.size(); ++a) s += terms[a](x[a]);
    return s;
  };
  Potential v(std::move(name), d, eval, std::move(wells), positivity_radius, positivity_floor);
  v.terms_ = std::move(terms);
  return v;
}

ScalingParams::ScalingParams(long N_, double gamma_, double omega_) : N(N_), gamma(gamma_), omega(omega_) {
  require(N >= 1, ErrorCode::InvalidArgument, "N must be a positive integer");
  require(std::isfinite(gamma), ErrorCode::InvalidArgument, "gamma must be finite");
  require(omega > 0.0, ErrorCode::InvalidArgument, "omega must be positive");
}

double ScalingParams::lambda() const { return std::pow(static_cast<double>(N), 1.0 - gamma); }

double ScalingParams::kappa() const {
  return std::sqrt(omega / std::pow(static_cast<double>(N), 1.0 + gamma));
}

double ScalingParams::potential_prefactor() const {
  return std::pow(static_cast<double>(N), 2.0 * (1.0 - gamma));
}

namespace {

std::vector<double> identity_axes(int d) {
  std::vector<double> axes(static_cast<std::size_t>(d * d), 0.0);
  for (int i = 0; i < d; ++i) axes[i * d + i] = 1.0;
  return axes;
}

// Quartic smooth minimum; equals min(a, b) once |a - b| ≥ k and is C¹ across a = b.
double smooth_min(double a, double b, double k) {
  const double t = std::abs(a - b);
  const double m = std::min(a, b);
  if (t >= k) return m;
  const double s = k - t;
  return m - s * s * s * s / (8.0 * k * k * k);
}

}  // namespace

namespace potentials {

Potential harmonic(std::vector<double> omega) {
  require(!omega.empty(), ErrorCode::InvalidArgument, "harmonic potential needs at least one frequency");
  for (double w : omega) require(w > 0.0, ErrorCode::InvalidArgument, "harmonic frequencies must be positive");
  const int d = static_cast<int>(omega.size());
  std::vector<Potential::AxisTerm> terms;
  for (double w : omega) terms.push_back([w](double x) { return 0.5 * w * w * x * x; });

  // Axis order follows the ascending frequency order.
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return omega[i] < omega[j]; });
  Well well{Point(d, 0.0), {}, std::vector<double>(static_cast<std::size_t>(d * d), 0.0)};
  for (int i = 0; i < d; ++i) {
    well.frequencies.push_back(omega[order[i]]);
    well.axes[i * d + order[i]] = 1.0;
  }
  const double wmin = *std::min_element(omega.begin(), omega.end());
  return Potential::separable("harmonic", std::move(terms), {well}, 1.0, 0.5 * wmin * wmin);
}

Potential double_well() {
  auto term = [](double x) {
    const double u = x * x - 1.0;
    return 0.5 * u * u;
  };
  std::vector<Well> wells{{{-1.0}, {2.0}, {1.0}}, {{1.0}, {2.0}, {1.0}}};
  // |x| > 2 ⇒ V ≥ ½·3² = 4.5
  return Potential::separable("double_well", {term}, std::move(wells), 2.0, 4.5);
}

Potential double_well_sum(int dim) {
  require(dim >= 1, ErrorCode::InvalidArgument, "dimension must be positive");
  if (dim == 1) return double_well();
  auto term = [](double x) {
    const double u = x * x - 1.0;
    return 0.5 * u * u;
  };
  std::vector<Potential::AxisTerm> terms(dim, term);
  std::vector<Well> wells;
  for (unsigned mask = 0; mask < (1u << dim); ++mask) {
    Point loc(dim);
    for (int a = 0; a < dim; ++a) loc[a] = (mask >> (dim - 1 - a)) & 1u ? 1.0 : -1.0;
    wells.push_back({loc, std::vector<double>(dim, 2.0), identity_axes(dim)});
  }
  // |x|_2 > 2√d forces some |x_a| > 2, hence V ≥ 4.5
  return Potential::separable("double_well_sum", std::move(terms), std::move(wells),
                              2.0 * std::sqrt(static_cast<double>(dim)), 4.5);
}

Potential multi_well(std::vector<Point> centers, double omega) {
  require(centers.size() >= 1, ErrorCode::InvalidArgument, "multi_well needs at least one center");
  require(omega > 0.0, ErrorCode::InvalidArgument, "omega must be positive");
  const int d = static_cast<int>(centers.front().size());
  double dmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    require(static_cast<int>(centers[i].size()) == d, ErrorCode::InvalidArgument, "centers differ in dimension");
    double r2 = 0.0;
    for (double c : centers[i]) r2 += c * c;
    rmax = std::max(rmax, std::sqrt(r2));
    for (std::size_t j = 0; j < i; ++j) {
      double s = 0.0;
      for (int a = 0; a < d; ++a) s += (centers[i][a] - centers[j][a]) * (centers[i][a] - centers[j][a]);
      dmin = std::min(dmin, std::sqrt(s));
    }
  }
  if (centers.size() == 1) dmin = 2.0;
  require(dmin > 0.0, ErrorCode::InvalidArgument, "well centers must be distinct");
  const double w2 = omega * omega;
  const double k = w2 * dmin * dmin / 32.0;
  auto eval = [centers, w2, k](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t l = 0; l < centers.size(); ++l) {
      double r2 = 0.0;
      for (std::size_t a = 0; a < x.size(); ++a) r2 += (x[a] - centers[l][a]) * (x[a] - centers[l][a]);
      const double q = 0.5 * w2 * r2;
      s = l == 0 ? q : smooth_min(s, q, k);
    }
    return s;
  };
  std::vector<Well> wells;
  for (const auto& c : centers) wells.push_back({c, std::vector<double>(d, omega), identity_axes(d)});
  const double half = 0.5 * dmin;
  return Potential("multi_well", d, eval, std::move(wells), rmax + half, 0.5 * w2 * half * half - k / 8.0);
}

Potential by_name(const std::string& id, const std::vector<double>& omega, const std::vector<Point>& wells,
                  int dim) {
  if (id == "harmonic") {
    if (!omega.empty()) return harmonic(omega);
    return harmonic(std::vector<double>(std::max(dim, 1), 1.0));
  }
  if (id == "double_well") return dim <= 1 ? double_well() : double_well_sum(dim);
  if (id == "double_well_sum") return double_well_sum(std::max(dim, 1));
  if (id == "multi_well" || id == "two_well") {
    const double w = omega.empty() ? 1.0 : omega.front();
    if (!wells.empty()) return multi_well(wells, w);
    return multi_well({{-1.0}, {1.0}}, w);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown potential '" + id + "'");
}

}  // namespace potentials

double eval_potential(const Potential& v, std::span<const double> x) { return v(x); }

std::vector<double> sample_on_lattice(const Potential& v, long N, const LatticeBox& box) {
  require(N >= 1, ErrorCode::InvalidArgument, "N must be positive");
  require(box.dim() == v.dim(), ErrorCode::InvalidArgument, "box and potential dimensions differ");
  std::vector<double> out(box.size());
  const double inv = 1.0 / static_cast<double>(N);
  const int d = box.dim();
  const auto n = static_cast<std::ptrdiff_t>(box.size());
#pragma omp parallel
  {
    Point y(d);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      for (int a = 0; a < d; ++a) y[a] = static_cast<double>(box.coord(static_cast<std::size_t>(i), a)) * inv;
      out[static_cast<std::size_t>(i)] = v(y);
    }
  }
  return out;
}

void jacobi_eigen(std::vector<double> m, int n, std::vector<double>& values, std::vector<double>& vectors) {
  // vectors accumulates rotations as columns; transposed to rows at the end.
  std::vector<double> q(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) q[i * n + i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m[i * n + j] * m[i * n + j];
    if (off == 0.0) break;
    for (int p = 0; p < n; ++p) {
      for (int r = p + 1; r < n; ++r) {
        const double apr = m[p * n + r];
        if (apr == 0.0) continue;
        const double theta = (m[r * n + r] - m[p * n + p]) / (2.0 * apr);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mkp = m[k * n + p], mkr = m[k * n + r];
          m[k * n + p] = c * mkp - s * mkr;
          m[k * n + r] = s * mkp + c * mkr;
        }
        for (int k = 0; k < n; ++k) {
          const double mpk = m[p * n + k], mrk = m[r * n + k];
          m[p * n + k] = c * mpk - s * mrk;
          m[r * n + k] = s * mpk + c * mrk;
        }
        for (int k = 0; k < n; ++k) {
          const double qkp = q[k * n + p], qkr = q[k * n + r];
          q[k * n + p] = c * qkp - s * qkr;
          q[k * n + r] = s * qkp + c * qkr;
        }
      }
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return m[a * n + a] < m[b * n + b]; });
  values.resize(n);
  vectors.assign(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) {
    values[i] = m[order[i] * n + order[i]];
    for (int k = 0; k < n; ++k) vectors[i * n + k] = q[k * n + order[i]];
  }
}

HessianResult hessian_analysis(const Potential& v, std::span<const double> a) {
  const int d = v.dim();
  require(static_cast<int>(a.size()) == d, ErrorCode::InvalidArgument, "point has wrong dimension");
  const double va = v(a);
  require(std::abs(va) <= 1e-12, ErrorCode::NotAZero, "V(a) = " + std::to_string(va) + " is not a zero");

  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  std::vector<double> h(d);
  for (int i = 0; i < d; ++i) h[i] = base * (1.0 + std::abs(a[i]));

  Point x(a.begin(), a.end());
  auto at = [&](int i, double si, int j, double sj) {
    x.assign(a.begin(), a.end());
    x[i] += si;
    if (j >= 0) x[j] += sj;
    return v(x);
  };
  std::vector<double> hess(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i) {
    hess[i * d + i] = (at(i, h[i], -1, 0) - 2.0 * va + at(i, -h[i], -1, 0)) / (h[i] * h[i]);
    for (int j = 0; j < i; ++j) {
      const double mixed = (at(i, h[i], j, h[j]) - at(i, h[i], j, -h[j]) - at(i, -h[i], j, h[j]) +
                            at(i, -h[i], j, -h[j])) /
                           (4.0 * h[i] * h[j]);
      hess[i * d + j] = hess[j * d + i] = mixed;
    }
  }

  std::vector<double> values, vectors;
  jacobi_eigen(hess, d, values, vectors);
  double scale = 0.0;
  for (double e : hess) scale = std::max(scale, std::abs(e));
  const double tol = 1e-8 * (1.0 + scale);
  for (double ev : values)
    require(ev > tol, ErrorCode::NonPositiveHessian,
            "Hessian eigenvalue " + std::to_string(ev) + " is not positive (degenerate minimum)");

  HessianResult out;
  out.hessian = std::move(hess);
  out.axes = std::move(vectors);
  for (double ev : values) out.frequencies.push_back(std::sqrt(ev));
  return out;
}

std::vector<double> hessian_frequencies(const Potential& v, std::span<const double> a) {
  return hessian_analysis(v, a).frequencies;
}

ValidationReport validate_assumptions(const Potential& v, double scan_radius, double grid_step) {
  require(grid_step > 0.0, ErrorCode::InvalidArgument, "grid step must be positive");
  double amax = 0.0;
  for (const auto& w : v.wells()) {
    double r2 = 0.0;
    for (double c : w.location) r2 += c * c;
    amax = std::max(amax, std::sqrt(r2));
  }
  require(scan_radius > amax + 1.0, ErrorCode::InvalidArgument, "scan radius must exceed max |a_l| + 1");

  constexpr double kZeroTol = 1e-8;
  constexpr double kWellExclusion = 0.1;
  constexpr std::size_t kMaxGrid = 4'000'000;
  constexpr std::size_t kMaxReported = 32;

  ValidationReport rep;
  rep.well_count = v.wells().size();
  const int d = v.dim();

  for (std::size_t l = 0; l < v.wells().size(); ++l) {
    const auto& w = v.wells()[l];
    try {
      const auto freq = hessian_frequencies(v, w.location);
      for (int i = 0; i < d; ++i) {
        if (std::abs(freq[i] - w.frequencies[i]) > 1e-6 * w.frequencies[i]) {
          rep.wells_ok = false;
          rep.well_messages.push_back("well " + std::to_string(l) + ": registered frequency " +
                                      std::to_string(w.frequencies[i]) + " differs from Hessian " +
                                      std::to_string(freq[i]));
        }
      }
    } catch (const Error& e) {
      rep.wells_ok = false;
      rep.well_messages.push_back("well " + std::to_string(l) + ": " + e.what());
    }
  }

  // Grid: per-axis points -R..R; coarsened when the tensor grid is too large.
  double step = grid_step;
  auto per_axis = [&](double s) { return static_cast<std::size_t>(2 * std::llround(scan_radius / s) + 1); };
  while (std::pow(static_cast<double>(per_axis(step)), d) > static_cast<double>(kMaxGrid)) step *= 2.0;
  const std::size_t m = per_axis(step);
  const long half = static_cast<long>(m / 2);
  const LatticeBox grid = LatticeBox::symmetric(d, half);
  rep.grid_points = grid.size();

  std::vector<double> values(grid.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel
  {
    Point y(d);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      for (int a = 0; a < d; ++a) y[a] = static_cast<double>(grid.coord(static_cast<std::size_t>(i), a)) * step;
      values[static_cast<std::size_t>(i)] = v(y);
    }
  }

  rep.min_value = std::numeric_limits<double>::infinity();
  rep.min_outside = std::numeric_limits<double>::infinity();
  Point y(d);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) {
      y[a] = static_cast<double>(grid.coord(i, a)) * step;
      r2 += y[a] * y[a];
    }
    const double val = values[i];
    if (val < rep.min_value) {
      rep.min_value = val;
      rep.min_location = y;
    }
    if (val < 0.0) rep.nonnegative = false;
    const double r = std::sqrt(r2);
    if (r > v.positivity_radius() && r <= scan_radius) {
      rep.min_outside = std::min(rep.min_outside, val);
      if (val < v.positivity_floor()) rep.positive_at_infinity = false;
    }
    if (val < kZeroTol) {
      bool near_well = false;
      for (const auto& w : v.wells()) {
        double s = 0.0;
        for (int a = 0; a < d; ++a) s += (y[a] - w.location[a]) * (y[a] - w.location[a]);
        if (std::sqrt(s) <= kWellExclusion) {
          near_well = true;
          break;
        }
      }
      if (!near_well && rep.unregistered_zeros.size() < kMaxReported) rep.unregistered_zeros.push_back(y);
    }
  }
  return rep;
}

}  // namespace lsc

#include "lsc/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lsc/error.hpp"
#include "lsc/kernels.hpp"

namespace lsc::hermite {

double hermite_eval(int n, double y) {
  require(n >= 0, ErrorCode::InvalidArgument, "degree must be nonnegative");
  if (n == 0) return 1.0;
  double hm = 1.0, h = 2.0 * y;
  for (int k = 1; k < n; ++k) {
    const double hp = 2.0 * y * h - 2.0 * k * hm;
    hm = h;
    h = hp;
  }
  if (!std::isfinite(h))
    throw Error(ErrorCode::Overflow, "h_" + std::to_string(n) + "(" + std::to_string(y) + ") overflows; use weighted_eval");
  return h;
}

double weighted_eval(int n, double y) {
  require(n >= 0, ErrorCode::InvalidArgument, "degree must be nonnegative");
  const double w = std::exp(-y * y / (2.0 * (n + 1)));
  if (n == 0) return w;
  const double w2 = w * w;
  double gm = w, g = 2.0 * y * w2;
  for (int k = 1; k < n; ++k) {
    const double gp = 2.0 * y * w * g - 2.0 * k * w2 * gm;
    gm = g;
    g = gp;
  }
  return g;
}

double weighted_derivative(int n, int m, double y) {
  require(n >= 0 && m >= 0, ErrorCode::InvalidArgument, "degree and order must be nonnegative");
  // He_j(y), probabilists' Hermite
  std::vector<double> he(m + 1);
  he[0] = 1.0;
  if (m >= 1) he[1] = y;
  for (int j = 1; j < m; ++j) he[j + 1] = y * he[j] - j * he[j - 1];

  double sum = 0.0;
  double binom = 1.0;  // C(m, j)
  for (int j = 0; j <= m; ++j) {
    const int k = m - j;  // derivatives on h_n
    if (k <= n) {
      double falling = 1.0;  // 2^k n!/(n-k)!
      for (int i = 0; i < k; ++i) falling *= 2.0 * (n - i);
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      sum += binom * falling * sign * he[j] * weighted_eval(n - k, y);
    }
    binom = binom * (m - j) / (j + 1);
  }
  return sum;
}

std::vector<double> hermite_zeros(int n) {
  require(n >= 0, ErrorCode::InvalidArgument, "degree must be nonnegative");
  if (n == 0) return {};
  std::vector<double> diag(n, 0.0), off(n - 1);
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(0.5 * k);
  std::vector<double> z = kernels::serial::bisect_lowest(diag, off, static_cast<std::size_t>(n), 1e-15);

  const double eps = std::numeric_limits<double>::epsilon();
  for (double& y : z) {
    double last = std::numeric_limits<double>::infinity();
    int it = 0;
    for (;; ++it) {
      if (it >= 50) throw Error(ErrorCode::ConvergenceFailure, "Newton polish of Hermite zero did not settle");
      // h_n / h_n' with the common Gaussian factor cancelled
      const double step = weighted_eval(n, y) / (2.0 * n * weighted_eval(n - 1, y));
      if (!std::isfinite(step)) break;
      const double a = std::abs(step);
      if (a >= last) break;  // rounding floor reached
      y -= step;
      last = a;
      if (a <= 2.0 * eps * std::max(1.0, std::abs(y))) break;
    }
  }
  std::sort(z.begin(), z.end());
  for (int i = 0; i < n / 2; ++i) {
    const double m = 0.5 * (z[n - 1 - i] - z[i]);
    z[i] = -m;
    z[n - 1 - i] = m;
  }
  if (n % 2 == 1) z[n / 2] = 0.0;
  return z;
}

HermiteBasis::HermiteBasis(int n_max) : n_max_(n_max) {
  require(n_max >= 0 && n_max <= 64, ErrorCode::InvalidArgument, "HermiteBasis supports degrees 0..64");
  zeros_.resize(n_max + 1);
  for (int n = 1; n <= n_max; ++n) zeros_[n] = hermite_zeros(n);
}

std::vector<double> HermiteBasis::nonnegative_zeros(int n) const {
  std::vector<double> out;
  for (double z : zeros(n))
    if (z >= 0.0) out.push_back(z);
  return out;
}

double TestFunction::operator()(double x) const {
  const double v = weighted_eval(n, beta * kappa * (x - static_cast<double>(center)));
  return absolute ? std::abs(v) : v;
}

std::vector<double> TestFunction::sample(const LatticeBox& box) const {
  require(box.dim() == 1, ErrorCode::InvalidArgument, "test functions live on one-dimensional boxes");
  std::vector<double> out(box.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)(static_cast<double>(box.coord(i, 0)));
  return out;
}

long quasimode_radius(int n, double kappa) {
  require(kappa > 0.0, ErrorCode::InvalidArgument, "kappa must be positive");
  return static_cast<long>(std::ceil((std::sqrt(2.0 * n + 1.0) + 8.0) / kappa));
}

namespace {

// Σ over lattice points outside [lo, hi] of f(x), walking outward past the
// turning point until terms are negligible against `scale`.
double outside_sum(const std::function<double(long)>& f, long lo, long hi, double turning, double scale) {
  double s = 0.0;
  for (int side = 0; side < 2; ++side) {
    for (long step = 1;; ++step) {
      const long x = side == 0 ? hi + step : lo - step;
      const double t = f(x);
      s += t;
      const bool past = std::abs(static_cast<double>(x)) > turning;
      if (past && t <= 1e-40 * scale) break;
      if (step > 100'000'000) break;
    }
  }
  return s;
}

double turning_point(int n, double kappa) { return (std::sqrt(2.0 * n + 1.0) + 1.0) / kappa; }

}  // namespace

double tail_mass_fraction(int n, double kappa, const LatticeBox& box) {
  require(box.dim() == 1, ErrorCode::InvalidArgument, "tail mass needs a one-dimensional box");
  const TestFunction f{n, kappa};
  const auto v = f.sample(box);
  const double inside = kernels::serial::dot(v, v);
  const double out = outside_sum(
      [&](long x) {
        const double p = f(static_cast<double>(x));
        return p * p;
      },
      box.lower(0), box.upper(0), turning_point(n, kappa), inside);
  return out / (inside + out);
}

Quasimode quasimode_apply(int n, double kappa, const LatticeBox& box) {
  require(kappa > 0.0, ErrorCode::InvalidArgument, "kappa must be positive");
  require(box.dim() == 1, ErrorCode::InvalidArgument, "quasimodes live on one-dimensional boxes");
  const double reach = std::min(std::abs(static_cast<double>(box.lower(0))), std::abs(static_cast<double>(box.upper(0))));
  require(reach * kappa >= 3.0, ErrorCode::BoxTooSmall, "box radius must be at least 3/kappa");
  const double tail = tail_mass_fraction(n, kappa, box);
  require(tail <= 1e-12, ErrorCode::BoxTooSmall,
          "quasimode tail mass " + std::to_string(tail) + " outside the box exceeds 1e-12");

  Quasimode q;
  q.box = box;
  const TestFunction f{n, kappa};
  q.psi = f.sample(box);
  q.residual.resize(box.size());
  const double k2 = kappa * kappa;
  const double k4 = k2 * k2;
  const double target = k2 * (2.0 * n + 1.0);
  for (std::size_t i = 0; i < box.size(); ++i) {
    const double x = static_cast<double>(box.coord(i, 0));
    const double p = q.psi[i];
    q.residual[i] = 2.0 * p - f(x + 1.0) - f(x - 1.0) + k4 * x * x * p - target * p;
  }
  return q;
}

double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b, double rel_tol,
                               double abs_tol) {
  static constexpr double kNodes[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                       0.9602898564975363};
  static constexpr double kWeights[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                         0.1012285362903763};
  auto rule = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += kWeights[i] * (f(c - h * kNodes[i]) + f(c + h * kNodes[i]));
    return s * h;
  };
  std::function<double(double, double, double, int)> recurse = [&](double lo, double hi, double whole, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double left = rule(lo, mid), right = rule(mid, hi);
    const double fine = left + right;
    if (std::abs(fine - whole) <= std::max(rel_tol * std::abs(fine), abs_tol)) return fine;
    if (depth >= 20) throw Error(ErrorCode::QuadratureFailure, "adaptive quadrature exceeded depth 20");
    return recurse(lo, mid, left, depth + 1) + recurse(mid, hi, right, depth + 1);
  };
  return recurse(a, b, rule(a, b), 0);
}

double taylor_remainder(int n, double kappa, double y, int sigma) {
  require(kappa > 0.0, ErrorCode::InvalidArgument, "kappa must be positive");
  const double s = sigma >= 0 ? 1.0 : -1.0;
  auto integrand = [&](double t) {
    const double u = kappa - t;
    return u * u * u / 6.0 * weighted_derivative(n, 4, y + s * t);
  };
  const double k4 = kappa * kappa * kappa * kappa;
  return adaptive_gauss_legendre(integrand, 0.0, kappa, 1e-14, 1e-18 * k4);
}

double taylor_remainder_direct(int n, double kappa, double y, int sigma) {
  const double s = sigma >= 0 ? 1.0 : -1.0;
  const double h = s * kappa;
  const double poly = weighted_eval(n, y) + h * weighted_derivative(n, 1, y) +
                      h * h / 2.0 * weighted_derivative(n, 2, y) + h * h * h / 6.0 * weighted_derivative(n, 3, y);
  return weighted_eval(n, y + h) - poly;
}

double residual_integral(int n, double kappa, long x) {
  const double y = kappa * static_cast<double>(x);
  return taylor_remainder(n, kappa, y, +1) + taylor_remainder(n, kappa, y, -1);
}

double gram_entry(int n, int m, double kappa, const LatticeBox& box) {
  require(kappa > 0.0, ErrorCode::InvalidArgument, "kappa must be positive");
  require(box.dim() == 1, ErrorCode::InvalidArgument, "gram_entry needs a one-dimensional box");
  const TestFunction fn{n, kappa}, fm{m, kappa};
  const auto a = fn.sample(box), b = fm.sample(box);
  const double scale = std::sqrt(kernels::serial::dot(a, a) * kernels::serial::dot(b, b));
  const double tail = outside_sum(
      [&](long x) { return std::abs(fn(static_cast<double>(x)) * fm(static_cast<double>(x))); }, box.lower(0),
      box.upper(0), turning_point(std::max(n, m), kappa), scale);
  require(tail <= 1e-14 * scale, ErrorCode::BoxTooSmall,
          "Gram tail contribution " + std::to_string(tail / scale) + " exceeds 1e-14 of the result scale");
  return kernels::serial::dot(a, b);
}

double gram_norm_limit(int n, double kappa) {
  double f = 1.0;
  for (int i = 1; i <= n; ++i) f *= 2.0 * i;
  return std::sqrt(std::numbers::pi) * f / kappa;
}

}  // namespace lsc::hermite

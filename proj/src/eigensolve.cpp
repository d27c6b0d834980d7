#include "lsc/eigensolve.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "lsc/error.hpp"
#include "lsc/kernels.hpp"

namespace lsc {

namespace {

constexpr std::size_t kDenseCap = 4096;

double residual_norm(const SymmetricLatticeOperator& op, const std::vector<double>& v, double lambda) {
  const auto hv = op.apply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += (hv[i] - lambda * v[i]) * (hv[i] - lambda * v[i]);
  return std::sqrt(s);
}

void finish(SpectrumResult& r, const SymmetricLatticeOperator& op) {
  r.box = op.box();
  r.clusters = find_clusters(r.values);
  for (auto& v : r.vectors) {
    normalize_sign(v);
    r.residuals.push_back(residual_norm(op, v, r.values[r.residuals.size()]));
  }
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> find_clusters(const std::vector<double>& values, double rel_gap) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i;
    while (j + 1 < values.size() &&
           values[j + 1] - values[j] <= rel_gap * std::max(std::abs(values[j]), std::abs(values[j + 1])))
      ++j;
    if (j > i) out.emplace_back(i, j);
    i = j + 1;
  }
  return out;
}

SpectrumResult eigs_tridiag(const SymmetricLatticeOperator& op, std::size_t k, bool want_vectors, bool parallel) {
  require(op.dim() == 1, ErrorCode::InvalidArgument, "eigs_tridiag needs a one-dimensional operator");
  require(k <= op.size(), ErrorCode::InvalidArgument, "requested more eigenvalues than the box holds");
  const Tridiagonal t = op.tridiagonal();
  SpectrumResult r;
  r.values = tridiag_eigenvalues(t, k, parallel);
  if (want_vectors) {
    // Neighbours closer than 1e-3‖T‖ share a group and are kept mutually orthogonal.
    const double group_gap = 1e-3 * t.norm_bound();
    std::size_t group_start = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (i > 0 && r.values[i] - r.values[i - 1] > group_gap) group_start = i;
      std::vector<std::vector<double>> earlier(r.vectors.begin() + static_cast<std::ptrdiff_t>(group_start),
                                               r.vectors.end());
      r.vectors.push_back(tridiag_inverse_iteration(t, r.values[i], earlier, i - group_start));
    }
  }
  finish(r, op);
  return r;
}

std::vector<double> eigvec_inverse_iteration(const SymmetricLatticeOperator& op, double lambda) {
  require(op.dim() == 1, ErrorCode::InvalidArgument, "inverse iteration is implemented for d = 1");
  return tridiag_inverse_iteration(op.tridiagonal(), lambda);
}

SpectrumResult eigs_banded(const SymmetricLatticeOperator& op, std::size_t k, bool want_vectors) {
  const std::size_t n = op.size();
  require(n <= kDenseCap, ErrorCode::InvalidArgument, "banded fallback is capped at 4096 points");
  require(k >= 1 && k <= n, ErrorCode::InvalidArgument, "invalid eigenvalue count");
  const std::size_t kd = op.bandwidth();
  const std::size_t ldab = kd + 1;
  std::vector<double> ab(ldab * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    ab[j * ldab] = op.diagonal()[j];
    for (int a = 0; a < op.dim(); ++a) {
      const std::size_t s = op.box().stride(a);
      if (j + s < n) ab[s + j * ldab] = op.couplings()[a][j];
    }
  }
  const auto ln = static_cast<lapack_int>(n);
  std::vector<double> q(want_vectors ? n * n : 1), w(n), z(want_vectors ? n * k : 1);
  std::vector<lapack_int> ifail(n);
  lapack_int m = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_dsbevx(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', 'L', ln, static_cast<lapack_int>(kd), ab.data(),
      static_cast<lapack_int>(ldab), q.data(), want_vectors ? ln : 1, 0.0, 0.0, 1, static_cast<lapack_int>(k), abstol,
      &m, w.data(), z.data(), want_vectors ? ln : 1, ifail.data());
  if (info != 0) throw Error(ErrorCode::ConvergenceFailure, "dsbevx failed with info " + std::to_string(info));
  SpectrumResult r;
  r.values.assign(w.begin(), w.begin() + m);
  if (want_vectors)
    for (lapack_int c = 0; c < m; ++c) r.vectors.emplace_back(z.begin() + c * ln, z.begin() + (c + 1) * ln);
  finish(r, op);
  return r;
}

SpectrumResult eigs_dense(const SymmetricLatticeOperator& op, std::size_t k, bool want_vectors) {
  const std::size_t n = op.size();
  require(k >= 1 && k <= n, ErrorCode::InvalidArgument, "invalid eigenvalue count");
  auto a = op.dense(kDenseCap);
  const auto ln = static_cast<lapack_int>(n);
  std::vector<double> w(n), z(want_vectors ? n * k : 1);
  std::vector<lapack_int> isuppz(2 * n);
  lapack_int m = 0;
  const lapack_int info =
      LAPACKE_dsyevr(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', 'L', ln, a.data(), ln, 0.0, 0.0, 1,
                     static_cast<lapack_int>(k), 0.0, &m, w.data(), z.data(), want_vectors ? ln : 1, isuppz.data());
  if (info != 0) throw Error(ErrorCode::ConvergenceFailure, "dsyevr failed with info " + std::to_string(info));
  SpectrumResult r;
  r.values.assign(w.begin(), w.begin() + m);
  if (want_vectors)
    for (lapack_int c = 0; c < m; ++c) r.vectors.emplace_back(z.begin() + c * ln, z.begin() + (c + 1) * ln);
  finish(r, op);
  return r;
}

SpectrumResult eigs(const SymmetricLatticeOperator& op, std::size_t k, bool want_vectors) {
  return op.dim() == 1 ? eigs_tridiag(op, k, want_vectors) : eigs_banded(op, k, want_vectors);
}

std::vector<SeparableLevel> eigs_separable(const std::vector<std::vector<double>>& axis_spectra, std::size_t k) {
  require(!axis_spectra.empty(), ErrorCode::InvalidArgument, "need at least one axis");
  for (const auto& s : axis_spectra) {
    require(!s.empty(), ErrorCode::InvalidArgument, "axis spectrum is empty");
    require(std::is_sorted(s.begin(), s.end()), ErrorCode::InvalidArgument, "axis spectra must be ascending");
  }
  const std::size_t d = axis_spectra.size();
  auto value = [&](const std::vector<std::size_t>& idx) {
    double v = 0.0;
    for (std::size_t a = 0; a < d; ++a) v += axis_spectra[a][idx[a]];
    return v;
  };
  using Entry = std::pair<double, std::vector<std::size_t>>;
  auto later = [](const Entry& x, const Entry& y) { return x.first != y.first ? x.first > y.first : x.second > y.second; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> heap(later);
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> origin(d, 0);
  heap.emplace(value(origin), origin);
  seen.insert(origin);
  std::vector<SeparableLevel> out;
  while (out.size() < k) {
    if (heap.empty())
      throw Error(ErrorCode::Exhausted, "only " + std::to_string(out.size()) + " combinations available");
    auto [v, idx] = heap.top();
    heap.pop();
    for (std::size_t a = 0; a < d; ++a) {
      if (idx[a] + 1 >= axis_spectra[a].size()) continue;
      auto next = idx;
      ++next[a];
      if (seen.insert(next).second) heap.emplace(value(next), next);
    }
    out.push_back({v, std::move(idx)});
  }
  return out;
}

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Symmetric:
      return "symmetric";
    case Symmetry::Antisymmetric:
      return "antisymmetric";
    default:
      return "neither";
  }
}

NodalReport nodal_domains(std::span<const double> vec, double threshold_rel) {
  double vmax = 0.0;
  for (double e : vec) vmax = std::max(vmax, std::abs(e));
  const double thr = threshold_rel * vmax;
  NodalReport rep;
  rep.threshold = thr;
  int last = 0;  // sign of the current run; zeros break connectivity
  bool any = false;
  for (double e : vec) {
    if (std::abs(e) < thr || e == 0.0) {
      last = 0;
      continue;
    }
    any = true;
    const int s = e > 0.0 ? 1 : -1;
    if (s != last) ++rep.domains;
    last = s;
  }
  if (!any) throw Error(ErrorCode::AllZero, "every entry lies below the nodal threshold");
  return rep;
}

Symmetry classify_symmetry(const LatticeBox& box, std::span<const double> vec, double tol) {
  require(box.is_symmetric(), ErrorCode::InvalidArgument, "symmetry classes need a box symmetric about 0");
  require(vec.size() == box.size(), ErrorCode::InvalidArgument, "vector length differs from box size");
  double n2 = 0.0, sym = 0.0, anti = 0.0;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    const double m = vec[box.mirror(i)];
    n2 += vec[i] * vec[i];
    sym += (vec[i] - m) * (vec[i] - m);
    anti += (vec[i] + m) * (vec[i] + m);
  }
  const double nv = std::sqrt(n2);
  if (std::sqrt(sym) <= tol * nv) return Symmetry::Symmetric;
  if (std::sqrt(anti) <= tol * nv) return Symmetry::Antisymmetric;
  return Symmetry::Neither;
}

SuperharmonicResult verify_superharmonic(const SymmetricLatticeOperator& op, double alpha, std::span<const double> u,
                                         const LatticeBox& region) {
  require(u.size() == op.size(), ErrorCode::InvalidArgument, "u must be given on the operator box");
  require(op.box().contains_box(region), ErrorCode::InvalidArgument, "region lies outside the operator box");
  const auto& box = op.box();
  SuperharmonicResult r;
  r.min_value = std::numeric_limits<double>::infinity();
  r.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t ri = 0; ri < region.size(); ++ri) {
    const auto p = region.point(ri);
    const std::size_t i = box.index(p);
    if (!(u[i] > 0.0))
      throw Error(ErrorCode::NonPositiveFunction, "u is not strictly positive at lattice point " + std::to_string(p[0]));
    double acc = (op.diagonal()[i] + alpha) * u[i];
    for (int a = 0; a < op.dim(); ++a) {
      const std::size_t s = box.stride(a);
      if (box.coord(i, a) < box.upper(a)) acc += op.couplings()[a][i] * u[i + s];
      if (box.coord(i, a) > box.lower(a)) acc += op.couplings()[a][i - s] * u[i - s];
    }
    if (acc < r.min_value) {
      r.min_value = acc;
      r.argmin = p[0];
    }
    r.min_ratio = std::min(r.min_ratio, acc / u[i]);
  }
  r.holds = r.min_value >= 0.0;
  return r;
}

double rayleigh(const SymmetricLatticeOperator& op, std::span<const double> vec) {
  const double nn = kernels::omp::dot(vec, vec);
  if (!(nn > 0.0)) throw Error(ErrorCode::ZeroVector, "Rayleigh quotient of the zero vector");
  const auto hv = op.apply(vec);
  return kernels::omp::dot(vec, hv) / nn;
}

std::vector<double> subspace_upper_bounds(const SymmetricLatticeOperator& op,
                                          const std::vector<std::vector<double>>& test_vectors) {
  const std::size_t m = test_vectors.size();
  require(m >= 1, ErrorCode::InvalidArgument, "need at least one test vector");
  std::vector<std::vector<double>> v(test_vectors);
  std::vector<std::vector<double>> hv(m);
  for (std::size_t i = 0; i < m; ++i) {
    require(v[i].size() == op.size(), ErrorCode::InvalidArgument, "test vector length differs from box size");
    const double nv = std::sqrt(kernels::omp::dot(v[i], v[i]));
    if (!(nv > 0.0)) throw Error(ErrorCode::ZeroVector, "test vector " + std::to_string(i) + " vanishes");
    for (double& e : v[i]) e /= nv;
    hv[i] = op.apply(v[i]);
  }
  std::vector<double> a(m * m), b(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      a[i + j * m] = kernels::omp::dot(v[i], hv[j]);
      b[i + j * m] = kernels::omp::dot(v[i], v[j]);
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double s = 0.5 * (a[i + j * m] + a[j + i * m]);
      a[i + j * m] = a[j + i * m] = s;
      const double t = 0.5 * (b[i + j * m] + b[j + i * m]);
      b[i + j * m] = b[j + i * m] = t;
    }
  const auto lm = static_cast<lapack_int>(m);
  std::vector<double> bc(b), gw(m);
  if (LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'U', lm, bc.data(), lm, gw.data()) != 0)
    throw Error(ErrorCode::ConvergenceFailure, "Gram eigensolve failed");
  const double cond = gw.front() > 0.0 ? gw.back() / gw.front() : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e12))
    throw Error(ErrorCode::IllConditionedSpan, "Gram condition number " + std::to_string(cond) + " exceeds 1e12");
  std::vector<double> theta(m);
  if (LAPACKE_dsygv(LAPACK_COL_MAJOR, 1, 'N', 'U', lm, a.data(), lm, b.data(), lm, theta.data()) != 0)
    throw Error(ErrorCode::ConvergenceFailure, "generalized Ritz eigensolve failed");
  return theta;
}

SpectrumResult solve_autosized(const std::function<SymmetricLatticeOperator(long)>& build, std::size_t k,
                               const AutoBoxOptions& opts, bool want_vectors) {
  long m = std::max(opts.start, 1L);
  require(m <= opts.max_half_width, ErrorCode::BoxTooSmall, "starting box exceeds the size cap");
  auto op = build(m);
  SpectrumResult prev = eigs(op, k, false);
  while (true) {
    const long m2 = 2 * m;
    if (m2 > opts.max_half_width) {
      SpectrumResult r = want_vectors ? eigs(op, k, true) : prev;
      r.truncation_converged = false;
      return r;
    }
    auto op2 = build(m2);
    SpectrumResult next = eigs(op2, k, false);
    double change = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      change = std::max(change, std::abs(next.values[i] - prev.values[i]) / (1.0 + std::abs(next.values[i])));
    next.truncation_change = change;
    if (change <= opts.tol) {
      if (want_vectors) next = eigs(op2, k, true);
      next.truncation_change = change;
      next.truncation_converged = true;
      return next;
    }
    m = m2;
    op = std::move(op2);
    prev = std::move(next);
  }
}

}  // namespace lsc

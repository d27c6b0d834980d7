#include "lsc/ims.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lsc/error.hpp"
#include "lsc/kernels.hpp"

namespace lsc {

double ims_profile(double y) { return std::clamp(2.0 - std::abs(y), 0.0, 1.0); }

std::vector<std::vector<double>> ims_partition(const std::vector<Point>& centers, double inner_radius,
                                               const LatticeBox& box) {
  require(inner_radius > 0.0, ErrorCode::InvalidArgument, "inner radius must be positive");
  const int d = box.dim();
  for (const auto& c : centers)
    require(static_cast<int>(c.size()) == d, ErrorCode::InvalidArgument, "centre has wrong dimension");
  // Supports are open cubes of half-width r.
  for (std::size_t l = 0; l < centers.size(); ++l)
    for (std::size_t m = 0; m < l; ++m) {
      double dist = 0.0;
      for (int a = 0; a < d; ++a) dist = std::max(dist, std::abs(centers[l][a] - centers[m][a]));
      if (dist < 2.0 * inner_radius)
        throw Error(ErrorCode::OverlappingSupports, "bump supports of centres " + std::to_string(m) + " and " +
                                                        std::to_string(l) + " intersect");
    }

  std::vector<std::vector<double>> eta(centers.size() + 1, std::vector<double>(box.size(), 0.0));
  for (std::size_t i = 0; i < box.size(); ++i) {
    double s = 0.0;
    for (std::size_t l = 0; l < centers.size(); ++l) {
      double dist = 0.0;
      for (int a = 0; a < d; ++a)
        dist = std::max(dist, std::abs(static_cast<double>(box.coord(i, a)) - centers[l][a]));
      const double e = ims_profile(2.0 * dist / inner_radius);
      eta[l + 1][i] = e;
      s += e * e;
    }
    eta[0][i] = std::sqrt(std::max(0.0, 1.0 - s));
  }
  return eta;
}

namespace {

void check_partition(const SymmetricLatticeOperator& L, const std::vector<std::vector<double>>& eta) {
  require(!eta.empty(), ErrorCode::PartitionNotUnity, "empty partition");
  for (const auto& e : eta)
    require(e.size() == L.size(), ErrorCode::InvalidArgument, "partition function length differs from box size");
  for (std::size_t i = 0; i < L.size(); ++i) {
    double s = 0.0;
    for (const auto& e : eta) s += e[i] * e[i];
    if (std::abs(s - 1.0) > 1e-12)
      throw Error(ErrorCode::PartitionNotUnity, "Σ η_j² = " + std::to_string(s) + " at row " + std::to_string(i));
  }
}

}  // namespace

SymmetricLatticeOperator ims_remainder(const SymmetricLatticeOperator& L, const std::vector<std::vector<double>>& eta) {
  check_partition(L, eta);
  const auto& box = L.box();
  const std::size_t n = L.size();
  std::vector<double> diag(n, 0.0);
  std::vector<std::vector<double>> coupling(L.dim(), std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double lii = L.diagonal()[i];
    double s = 0.0;
    for (const auto& e : eta) s += e[i] * e[i] * lii + lii * e[i] * e[i] - 2.0 * e[i] * lii * e[i];
    diag[i] = 0.5 * s;
    for (int a = 0; a < L.dim(); ++a) {
      const std::size_t j = i + box.stride(a);
      if (j >= n) continue;
      const double lij = L.couplings()[a][i];
      double t = 0.0;
      for (const auto& e : eta) t += e[i] * e[i] * lij + lij * e[j] * e[j] - 2.0 * e[i] * lij * e[j];
      coupling[a][i] = 0.5 * t;
    }
  }
  return SymmetricLatticeOperator(box, std::move(diag), std::move(coupling), 0.0);
}

SymmetricLatticeOperator ims_localized_sum(const SymmetricLatticeOperator& H,
                                           const std::vector<std::vector<double>>& eta) {
  const auto& box = H.box();
  const std::size_t n = H.size();
  std::vector<double> diag(n, 0.0);
  std::vector<std::vector<double>> coupling(H.dim(), std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : eta) diag[i] += e[i] * H.diagonal()[i] * e[i];
    for (int a = 0; a < H.dim(); ++a) {
      const std::size_t j = i + box.stride(a);
      if (j >= n) continue;
      for (const auto& e : eta) coupling[a][i] += e[i] * H.couplings()[a][i] * e[j];
    }
  }
  return SymmetricLatticeOperator(box, std::move(diag), std::move(coupling), 0.0);
}

double ims_identity_residual(const SymmetricLatticeOperator& H, const std::vector<std::vector<double>>& eta) {
  const auto rem = ims_remainder(H, eta);
  const auto loc = ims_localized_sum(H, eta);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < H.size(); ++i) {
    scale = std::max(scale, std::abs(H.diagonal()[i]));
    worst = std::max(worst, std::abs(H.diagonal()[i] - loc.diagonal()[i] - rem.diagonal()[i]));
    for (int a = 0; a < H.dim(); ++a) {
      const double h = H.couplings()[a][i];
      scale = std::max(scale, std::abs(h));
      worst = std::max(worst, std::abs(h - loc.couplings()[a][i] - rem.couplings()[a][i]));
    }
  }
  return scale == 0.0 ? worst : worst / scale;
}

SymmetricLatticeOperator double_commutator(const SymmetricLatticeOperator& L, const std::vector<double>& eta) {
  require(eta.size() == L.size(), ErrorCode::InvalidArgument, "partition function length differs from box size");
  const auto& box = L.box();
  const std::size_t n = L.size();
  std::vector<std::vector<double>> coupling(L.dim(), std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (int a = 0; a < L.dim(); ++a) {
      const std::size_t j = i + box.stride(a);
      if (j >= n) continue;
      const double diff = eta[i] - eta[j];
      coupling[a][i] = L.couplings()[a][i] * diff * diff;
    }
  return SymmetricLatticeOperator(box, std::vector<double>(n, 0.0), std::move(coupling), 0.0);
}

double max_step_variation(const LatticeBox& box, const std::vector<double>& eta) {
  double c = 0.0;
  for (std::size_t i = 0; i < box.size(); ++i)
    for (int a = 0; a < box.dim(); ++a) {
      if (box.coord(i, a) == box.upper(a)) continue;
      c = std::max(c, std::abs(eta[i] - eta[i + box.stride(a)]));
    }
  return c;
}

SymmetricLatticeOperator laplace_part(const SymmetricLatticeOperator& H) {
  const std::size_t n = H.size();
  std::vector<double> diag(n);
  if (H.kinetic() != 0.0) {
    std::fill(diag.begin(), diag.end(), H.kinetic() * 2.0 * H.dim());
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (int a = 0; a < H.dim(); ++a) {
        s += H.couplings()[a][i];
        if (i >= H.box().stride(a)) s += H.couplings()[a][i - H.box().stride(a)];
      }
      diag[i] = -s;
    }
  }
  return SymmetricLatticeOperator(H.box(), std::move(diag), H.couplings(), H.kinetic());
}

namespace {

double extreme_abs_eigenvalue_1d(const SymmetricLatticeOperator& A) {
  auto t = A.tridiagonal();
  const double lo = kernels::serial::bisect_lowest(t.diag, t.off, 1).front();
  for (double& e : t.diag) e = -e;
  for (double& e : t.off) e = -e;
  const double hi = -kernels::serial::bisect_lowest(t.diag, t.off, 1).front();
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace

NormBound spectral_norm_upper(const SymmetricLatticeOperator& A) {
  if (A.dim() == 1) {
    // bisection brackets are within a few ulps of ‖T‖; pad by that margin
    const double v = extreme_abs_eigenvalue_1d(A);
    return {v + 8.0 * std::numeric_limits<double>::epsilon() * A.norm_bound(), true};
  }
  return {A.norm_bound(), false};
}

NormBound spectral_norm_lower(const SymmetricLatticeOperator& A) {
  if (A.dim() == 1) {
    const double v = extreme_abs_eigenvalue_1d(A);
    return {std::max(0.0, v - 8.0 * std::numeric_limits<double>::epsilon() * A.norm_bound()), true};
  }
  const std::size_t n = A.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  double best = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double nx = std::sqrt(kernels::serial::dot(x, x));
    if (nx == 0.0) break;
    for (double& e : x) e /= nx;
    auto y = A.apply(x, false);
    best = std::max(best, std::abs(kernels::serial::dot(x, y)));
    x = std::move(y);
  }
  return {best, false};
}

}  // namespace lsc

#include "lsc/operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "lsc/error.hpp"
#include "lsc/kernels.hpp"

namespace lsc {

SymmetricLatticeOperator::SymmetricLatticeOperator(LatticeBox box, std::vector<double> diagonal,
                                                   std::vector<std::vector<double>> coupling, double kinetic)
    : box_(std::move(box)), diag_(std::move(diagonal)), coupling_(std::move(coupling)), kinetic_(kinetic) {
  require(diag_.size() == box_.size(), ErrorCode::InvalidArgument, "diagonal length differs from box size");
  require(static_cast<int>(coupling_.size()) == box_.dim(), ErrorCode::InvalidArgument,
          "need one coupling vector per axis");
  for (int a = 0; a < box_.dim(); ++a) {
    auto& c = coupling_[a];
    require(c.size() == box_.size(), ErrorCode::InvalidArgument, "coupling length differs from box size");
    for (std::size_t i = 0; i < c.size(); ++i)
      if (box_.coord(i, a) == box_.upper(a)) c[i] = 0.0;
  }
}

double SymmetricLatticeOperator::entry(std::size_t i, std::size_t j) const {
  if (i == j) return diag_[i];
  const std::size_t lo = std::min(i, j), hi = std::max(i, j);
  for (int a = 0; a < dim(); ++a)
    if (hi - lo == box_.stride(a)) return coupling_[a][lo];
  return 0.0;
}

void SymmetricLatticeOperator::apply(std::span<const double> x, std::span<double> y, bool parallel) const {
  require(x.size() == size() && y.size() == size(), ErrorCode::InvalidArgument, "apply: length mismatch");
  std::vector<std::size_t> strides(dim());
  for (int a = 0; a < dim(); ++a) strides[a] = box_.stride(a);
  if (parallel)
    kernels::omp::stencil_apply(diag_, coupling_, strides, x, y);
  else
    kernels::serial::stencil_apply(diag_, coupling_, strides, x, y);
}

std::vector<double> SymmetricLatticeOperator::apply(std::span<const double> x, bool parallel) const {
  std::vector<double> y(size());
  apply(x, y, parallel);
  return y;
}

Tridiagonal SymmetricLatticeOperator::tridiagonal() const {
  require(dim() == 1, ErrorCode::InvalidArgument, "tridiagonal form needs d = 1");
  Tridiagonal t;
  t.diag = diag_;
  t.off.assign(coupling_[0].begin(), coupling_[0].end() - 1);
  return t;
}

std::vector<double> SymmetricLatticeOperator::dense(std::size_t max_size) const {
  const std::size_t n = size();
  require(n <= max_size, ErrorCode::InvalidArgument, "box too large for a dense copy");
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = diag_[i];
    for (int a = 0; a < dim(); ++a) {
      const std::size_t j = i + box_.stride(a);
      if (j < n) m[i * n + j] = m[j * n + i] = coupling_[a][i];
    }
  }
  return m;
}

std::size_t SymmetricLatticeOperator::bandwidth() const { return dim() == 0 ? 0 : box_.stride(0); }

std::vector<SymmetricLatticeOperator::Triplet> SymmetricLatticeOperator::triplets() const {
  std::vector<Triplet> out;
  std::vector<Triplet> row;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    row.push_back({i, i, diag_[i]});
    for (int a = 0; a < dim(); ++a) {
      const std::size_t s = box_.stride(a);
      if (i >= s && coupling_[a][i - s] != 0.0) row.push_back({i, i - s, coupling_[a][i - s]});
      if (i + s < n && coupling_[a][i] != 0.0) row.push_back({i, i + s, coupling_[a][i]});
    }
    std::sort(row.begin(), row.end(), [](const Triplet& x, const Triplet& y) { return x.col < y.col; });
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

void SymmetricLatticeOperator::dump(const std::string& path) const {
  std::ofstream os(path);
  require(static_cast<bool>(os), ErrorCode::InvalidArgument, "cannot open " + path + " for writing");
  os << "row,col,value\n";
  char buf[64];
  for (const auto& t : triplets()) {
    std::snprintf(buf, sizeof buf, "%.17g", t.value);
    os << t.row << ',' << t.col << ',' << buf << '\n';
  }
}

std::vector<int> SymmetricLatticeOperator::dropped_neighbours() const {
  std::vector<int> out(size(), 0);
  for (std::size_t i = 0; i < size(); ++i)
    for (int a = 0; a < dim(); ++a) {
      const long c = box_.coord(i, a);
      out[i] += (c == box_.lower(a)) + (c == box_.upper(a));
    }
  return out;
}

std::vector<bool> SymmetricLatticeOperator::boundary_rows() const {
  const auto d = dropped_neighbours();
  std::vector<bool> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] > 0;
  return out;
}

bool SymmetricLatticeOperator::is_laplace_type() const {
  for (const auto& c : coupling_)
    for (double e : c)
      if (e > 0.0) return false;
  if (kinetic_ == 0.0) return true;
  // Off-diagonal row sums must equal -kinetic·2d on interior rows.
  const auto dropped = dropped_neighbours();
  for (std::size_t i = 0; i < size(); ++i) {
    if (dropped[i] > 0) continue;
    double s = 0.0;
    for (int a = 0; a < dim(); ++a) {
      s += coupling_[a][i];
      s += coupling_[a][i - box_.stride(a)];
    }
    if (std::abs(s + 2.0 * dim() * kinetic_) > 1e-14 * std::abs(kinetic_) * 2.0 * dim()) return false;
  }
  return true;
}

std::vector<double> SymmetricLatticeOperator::potential_part() const {
  std::vector<double> w(diag_);
  for (double& e : w) e -= kinetic_ * 2.0 * dim();
  return w;
}

double SymmetricLatticeOperator::norm_bound() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double r = std::abs(diag_[i]);
    for (int a = 0; a < dim(); ++a) {
      const std::size_t s = box_.stride(a);
      r += std::abs(coupling_[a][i]);
      if (i >= s) r += std::abs(coupling_[a][i - s]);
    }
    m = std::max(m, r);
  }
  return m;
}

SymmetricLatticeOperator assemble(const LatticeBox& box, double kinetic, std::vector<double> potential) {
  require(potential.size() == box.size(), ErrorCode::InvalidArgument, "potential length differs from box size");
  const int d = box.dim();
  for (double& w : potential) w += kinetic * 2.0 * d;
  std::vector<std::vector<double>> coupling(d, std::vector<double>(box.size(), -kinetic));
  return SymmetricLatticeOperator(box, std::move(potential), std::move(coupling), kinetic);
}

SymmetricLatticeOperator assemble_laplacian(const LatticeBox& box) {
  return assemble(box, 1.0, std::vector<double>(box.size(), 0.0));
}

SymmetricLatticeOperator assemble_Hkappa(double kappa, const LatticeBox& box) {
  require(kappa > 0.0, ErrorCode::InvalidArgument, "kappa must be positive");
  require(box.dim() == 1, ErrorCode::InvalidArgument, "H_kappa is one-dimensional");
  const double k2 = kappa * kappa;
  const double k4 = k2 * k2;
  std::vector<double> w(box.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double x = static_cast<double>(box.coord(i, 0));
    w[i] = k4 * x * x;
  }
  return assemble(box, 1.0, std::move(w));
}

SymmetricLatticeOperator assemble_HN(const Potential& v, const ScalingParams& params, const LatticeBox& box) {
  const double n = static_cast<double>(params.N);
  auto w = sample_on_lattice(v, params.N, box);
  const double pref = params.potential_prefactor();
  for (double& e : w) e *= pref;
  return assemble(box, 0.5 * n * n, std::move(w));
}

ModifiedPotentialParams::ModifiedPotentialParams(double kappa_, double delta_) : kappa(kappa_), delta(delta_) {
  require(kappa > 0.0, ErrorCode::InvalidArgument, "kappa must be positive");
  require(delta > 0.0 && delta < 0.5, ErrorCode::InvalidArgument, "spike exponent must lie in (0, 1/2)");
  if (kappa < 1.0) {
    const long xd = spike_location();
    require(xd >= 1, ErrorCode::InvalidArgument, "spike location must be at least 1");
    const double k2 = kappa * kappa;
    require(spike_value() > k2 * k2 * static_cast<double>(xd) * static_cast<double>(xd), ErrorCode::InvalidArgument,
            "spike does not dominate the harmonic potential at x_delta");
  }
}

long ModifiedPotentialParams::spike_location() const {
  return static_cast<long>(std::floor(std::pow(kappa, -(1.0 + delta))));
}

double ModifiedPotentialParams::spike_value() const { return std::pow(kappa, -delta); }

SymmetricLatticeOperator assemble_modified(const ModifiedPotentialParams& params, const LatticeBox& box) {
  require(box.dim() == 1, ErrorCode::InvalidArgument, "modified oscillator is one-dimensional");
  const long xd = params.spike_location();
  require(box.contains(xd) || box.contains(-xd), ErrorCode::BoxTooSmall,
          "box does not reach the spike at x_delta = " + std::to_string(xd));
  auto op = assemble_Hkappa(params.kappa, box);
  std::vector<double> diag = op.diagonal();
  for (long x : {-xd, xd})
    if (box.contains(x)) diag[box.index(x)] = 2.0 + params.spike_value();
  return SymmetricLatticeOperator(box, std::move(diag), op.couplings(), 1.0);
}

SymmetricLatticeOperator restrict_to(const SymmetricLatticeOperator& op, const LatticeBox& sub) {
  require(op.box().contains_box(sub), ErrorCode::InvalidArgument, "restriction box is not inside the operator box");
  const int d = op.dim();
  std::vector<double> diag(sub.size());
  std::vector<std::vector<double>> coupling(d, std::vector<double>(sub.size(), 0.0));
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const auto p = sub.point(i);
    const std::size_t k = op.box().index(p);
    diag[i] = op.diagonal()[k];
    for (int a = 0; a < d; ++a) coupling[a][i] = op.couplings()[a][k];
  }
  return SymmetricLatticeOperator(sub, std::move(diag), std::move(coupling), op.kinetic());
}

}  // namespace lsc

#include "lsc/lattice_box.hpp"

#include "lsc/error.hpp"

namespace lsc {

LatticeBox::LatticeBox(std::vector<long> lower, std::vector<long> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  require(!lower_.empty() && lower_.size() == upper_.size(), ErrorCode::InvalidArgument,
          "box needs matching non-empty bounds");
  const int d = dim();
  strides_.assign(d, 1);
  size_ = 1;
  for (int a = d - 1; a >= 0; --a) {
    require(lower_[a] <= upper_[a], ErrorCode::InvalidArgument, "empty box axis");
    strides_[a] = size_;
    size_ *= static_cast<std::size_t>(extent(a));
  }
}

LatticeBox LatticeBox::symmetric(int dim, long half_width) {
  require(dim >= 1, ErrorCode::InvalidArgument, "dimension must be positive");
  require(half_width >= 0, ErrorCode::InvalidArgument, "half width must be non-negative");
  return LatticeBox(std::vector<long>(dim, -half_width), std::vector<long>(dim, half_width));
}

LatticeBox LatticeBox::interval(long lo, long hi) { return LatticeBox({lo}, {hi}); }

bool LatticeBox::contains(std::span<const long> p) const {
  if (static_cast<int>(p.size()) != dim()) return false;
  for (int a = 0; a < dim(); ++a)
    if (p[a] < lower_[a] || p[a] > upper_[a]) return false;
  return true;
}

bool LatticeBox::contains_box(const LatticeBox& other) const {
  if (other.dim() != dim()) return false;
  for (int a = 0; a < dim(); ++a)
    if (other.lower_[a] < lower_[a] || other.upper_[a] > upper_[a]) return false;
  return true;
}

bool LatticeBox::is_symmetric() const {
  for (int a = 0; a < dim(); ++a)
    if (lower_[a] != -upper_[a]) return false;
  return true;
}

std::size_t LatticeBox::index(std::span<const long> p) const {
  require(contains(p), ErrorCode::InvalidArgument, "point outside box");
  std::size_t idx = 0;
  for (int a = 0; a < dim(); ++a) idx += static_cast<std::size_t>(p[a] - lower_[a]) * strides_[a];
  return idx;
}

LatticePoint LatticeBox::point(std::size_t idx) const {
  LatticePoint p(dim());
  for (int a = 0; a < dim(); ++a) p[a] = coord(idx, a);
  return p;
}

}  // namespace lsc

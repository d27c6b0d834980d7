#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lsc {

using LatticePoint = std::vector<long>;

// Finite window [lower_a, upper_a] ∩ ℤ per axis, row-major (last axis fastest).
class LatticeBox {
 public:
  LatticeBox() = default;
  LatticeBox(std::vector<long> lower, std::vector<long> upper);

  // [-M, M]^d
  static LatticeBox symmetric(int dim, long half_width);
  // [lo, hi] ∩ ℤ in one dimension
  static LatticeBox interval(long lo, long hi);

  int dim() const { return static_cast<int>(lower_.size()); }
  std::size_t size() const { return size_; }
  long lower(int axis) const { return lower_[axis]; }
  long upper(int axis) const { return upper_[axis]; }
  long extent(int axis) const { return upper_[axis] - lower_[axis] + 1; }
  std::size_t stride(int axis) const { return strides_[axis]; }

  bool contains(std::span<const long> p) const;
  bool contains(long x) const { return dim() == 1 && x >= lower_[0] && x <= upper_[0]; }
  bool contains_box(const LatticeBox& other) const;
  // Symmetric about the origin on every axis.
  bool is_symmetric() const;

  std::size_t index(std::span<const long> p) const;
  std::size_t index(long x) const { return static_cast<std::size_t>(x - lower_[0]); }
  LatticePoint point(std::size_t idx) const;
  long coord(std::size_t idx, int axis) const {
    return lower_[axis] + static_cast<long>((idx / strides_[axis]) % static_cast<std::size_t>(extent(axis)));
  }
  // Index of the point reflected through the origin (requires is_symmetric()).
  std::size_t mirror(std::size_t idx) const { return size_ - 1 - idx; }

  friend bool operator==(const LatticeBox& a, const LatticeBox& b) {
    return a.lower_ == b.lower_ && a.upper_ == b.upper_;
  }

 private:
  std::vector<long> lower_;
  std::vector<long> upper_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

}  // namespace lsc

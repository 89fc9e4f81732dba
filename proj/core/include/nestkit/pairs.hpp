#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nestkit/types.hpp"

namespace nestkit {

/// Symmetric pair multiplicities over points 0..w-1, stored as a packed
/// upper triangle. The diagonal is never stored.
class PairCountTable {
 public:
  explicit PairCountTable(int w = 0);

  int w() const { return w_; }
  int get(PointId x, PointId y) const { return counts_[index(x, y)]; }
  void add(PointId x, PointId y, int delta = 1) { counts_[index(x, y)] += delta; }
  long long total() const;

  friend bool operator==(const PairCountTable&, const PairCountTable&) = default;

 private:
  std::size_t index(PointId x, PointId y) const {
    if (x > y) std::swap(x, y);
    // row x holds pairs (x, x+1..w-1)
    return static_cast<std::size_t>(x) * (2 * static_cast<std::size_t>(w_) - x - 1) / 2 + (y - x - 1);
  }

  int w_;
  std::vector<int> counts_;
};

/// Counts every pair of every block, with block multiplicity. Throws
/// INVALID_INPUT if a point id is >= w.
PairCountTable pair_counts(std::span<const Block> blocks, int w);

/// The augmented blocks A ∪ {φ(A)}, as a design with parameters
/// (w, k+1, λ+1) over the nesting's universe. Throws NESTED_POINT_INSIDE_BLOCK
/// listing every block with φ(A) ∈ A.
Design augment(const Design& design, const Nesting& nesting);

}  // namespace nestkit

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dset/geometry.hpp"
#include "dset/raster.hpp"

namespace dset {

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  /// Blocks ordered by smallest member; members ascending.
  std::vector<std::vector<std::size_t>> blocks();

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Groups pieces whose point sets come within glue_tol of each other.
std::vector<std::vector<std::size_t>> piece_components(std::span<const Polyline> pieces, double glue_tol);

struct ChainPartition {
  std::vector<std::vector<std::size_t>> blocks;
  double scale = 0.0;
};

/// Classes of the "distance < eps" closure (strict inequality).
ChainPartition epsilon_components(std::span<const Point> points, double eps);

bool is_two_sided(const ComplementDecomposition& decomp);

}  // namespace dset

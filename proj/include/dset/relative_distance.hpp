#pragma once

#include <cstddef>
#include <vector>

#include "dset/geometry.hpp"

namespace dset {

/// Vertices of the complex as a graph: polyline edges plus short edges between glued points.
class VertexGraph {
 public:
  explicit VertexGraph(const CurveComplex& complex);

  std::size_t size() const { return nodes_.size(); }
  Point node(std::size_t i) const { return nodes_[i]; }
  const std::vector<std::size_t>& neighbours(std::size_t i) const { return adj_[i]; }
  /// Connected-component label per node (labels 0..k-1).
  const std::vector<std::size_t>& component() const;
  /// Tree: one simple path between any two nodes. Cycle: every node of degree 2, so exactly two.
  enum class Shape { tree, cycle, other };
  Shape shape(std::size_t label) const;

  /// Node at p on the given segment, splitting the segment if needed.
  std::size_t insert(Point p, SegmentRef where);

  /// Where p would sit on a segment: an existing node, or between two consecutive ones.
  struct Anchor {
    std::size_t node = 0;
    std::size_t prev = 0;
    std::size_t next = 0;
    double t = 0.0;  ///< segment parameter, increasing from prev to next
    bool existing = false;
  };
  Anchor anchor(Point p, SegmentRef where) const;

 private:
  std::size_t add_node(Point p);
  void link(std::size_t u, std::size_t v);
  void unlink(std::size_t u, std::size_t v);

  double merge_tol_ = 0.0;
  std::vector<Point> nodes_;
  std::vector<std::vector<std::size_t>> adj_;
  // Per piece, per segment: nodes on it ordered by parameter.
  std::vector<std::vector<std::vector<std::pair<double, std::size_t>>>> on_segment_;
  mutable std::vector<std::size_t> component_;
  mutable std::vector<Shape> shape_;
  mutable bool component_valid_ = false;
};

struct DistanceBracket {
  double lo = 0.0;
  double hi = 0.0;
  bool exact = false;
  std::size_t expanded = 0;  ///< search nodes used
};

inline constexpr std::size_t kDefaultNodeBudget = 200000;

/// Bracket on the smallest diameter of a connected subset of the complex containing a and b,
/// searched over simple paths of the vertex graph. Throws Disconnected, NotOnSet.
DistanceBracket relative_distance(const CurveComplex& complex, Point a, Point b,
                                  std::size_t node_budget = kDefaultNodeBudget);

/// Same, reusing a prebuilt graph of `complex` (copied internally).
DistanceBracket relative_distance(const CurveComplex& complex, const VertexGraph& graph, Point a, Point b,
                                  std::size_t node_budget = kDefaultNodeBudget);

}  // namespace dset

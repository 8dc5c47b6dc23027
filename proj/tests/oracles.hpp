#pragma once

// Slow, obviously-correct reference computations used to cross-check the library.

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include "dset/geometry.hpp"

namespace oracle {

using dset::Point;

inline double pair_diameter(const std::vector<Point>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, dset::distance(pts[i], pts[j]));
  return d;
}

/// Smallest vertex-set diameter over all simple paths a -> b (infinity if none).
inline double min_path_diameter(const std::vector<Point>& pts, const std::vector<std::vector<std::size_t>>& adj,
                                std::size_t a, std::size_t b) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> on(pts.size(), 0);
  std::vector<Point> path;
  auto rec = [&](auto& self, std::size_t v) -> void {
    on[v] = 1;
    path.push_back(pts[v]);
    if (v == b)
      best = std::min(best, pair_diameter(path));
    else
      for (std::size_t u : adj[v])
        if (!on[u]) self(self, u);
    path.pop_back();
    on[v] = 0;
  };
  rec(rec, a);
  return best;
}

struct Graph {
  std::vector<Point> pts;
  std::vector<std::vector<std::size_t>> adj;

  std::size_t nearest(Point p) const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (dset::distance(pts[i], p) < dset::distance(pts[best], p)) best = i;
    return best;
  }
};

/// Vertex graph of polylines: every segment is split where another segment comes within tol,
/// and split points closer than tol are merged. Brute force over all segment pairs.
inline Graph build_graph(const std::vector<dset::Polyline>& pieces, double tol) {
  struct Seg {
    Point a, b;
    std::vector<double> cuts{0.0, 1.0};
  };
  std::vector<Seg> segs;
  for (const auto& p : pieces)
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) segs.push_back({p.vertices[i], p.vertices[i + 1]});
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (dset::segment_segment_distance(segs[i].a, segs[i].b, segs[j].a, segs[j].b) > tol) continue;
      double s = 0, t = 0;
      dset::closest_params(segs[i].a, segs[i].b, segs[j].a, segs[j].b, s, t);
      segs[i].cuts.push_back(s);
      segs[j].cuts.push_back(t);
      // overlapping stretches: every endpoint near the other segment is a cut there
      for (Point q : {segs[j].a, segs[j].b})
        if (dset::point_segment_distance(q, segs[i].a, segs[i].b) <= tol)
          segs[i].cuts.push_back(dset::project_param(q, segs[i].a, segs[i].b));
      for (Point q : {segs[i].a, segs[i].b})
        if (dset::point_segment_distance(q, segs[j].a, segs[j].b) <= tol)
          segs[j].cuts.push_back(dset::project_param(q, segs[j].a, segs[j].b));
    }
  Graph g;
  auto node = [&](Point p) {
    for (std::size_t i = 0; i < g.pts.size(); ++i)
      if (dset::distance(g.pts[i], p) <= tol) return i;
    g.pts.push_back(p);
    g.adj.emplace_back();
    return g.pts.size() - 1;
  };
  auto link = [&](std::size_t u, std::size_t v) {
    if (u == v) return;
    if (std::find(g.adj[u].begin(), g.adj[u].end(), v) == g.adj[u].end()) {
      g.adj[u].push_back(v);
      g.adj[v].push_back(u);
    }
  };
  for (auto& sg : segs) {
    std::sort(sg.cuts.begin(), sg.cuts.end());
    std::size_t prev = node(sg.a);
    for (double c : sg.cuts) {
      const std::size_t n = node(dset::lerp(sg.a, sg.b, c));
      link(prev, n);
      prev = n;
    }
  }
  return g;
}

/// Single-linkage clusters at threshold eps (strict), as sorted blocks ordered by first member.
inline std::vector<std::vector<std::size_t>> single_linkage(const std::vector<Point>& pts, double eps) {
  std::vector<int> label(pts.size(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < pts.size(); ++s) {
    if (label[s] >= 0) continue;
    std::vector<std::size_t> block{s};
    label[s] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < block.size(); ++k)
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (label[j] < 0 && dset::distance(pts[block[k]], pts[j]) < eps) {
          label[j] = label[s];
          block.push_back(j);
        }
    std::sort(block.begin(), block.end());
    out.push_back(block);
  }
  return out;
}

/// Connected regions of `free` cells (4-adjacency) on a rows x cols mask.
inline int count_regions(const std::vector<char>& free, int rows, int cols) {
  std::vector<char> seen(free.size(), 0);
  int regions = 0;
  for (int s = 0; s < rows * cols; ++s) {
    if (!free[s] || seen[s]) continue;
    ++regions;
    std::deque<int> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      const int r = v / cols, c = v % cols;
      const int nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
      for (auto& n : nb) {
        if (n[0] < 0 || n[1] < 0 || n[0] >= rows || n[1] >= cols) continue;
        const int u = n[0] * cols + n[1];
        if (free[u] && !seen[u]) {
          seen[u] = 1;
          q.push_back(u);
        }
      }
    }
  }
  return regions;
}

/// Length of the arc of the circle |p| = R inside the open disc of radius eps around a point on it.
inline double circle_arc_in_disc(double R, double eps) {
  // Chord eps subtends 2*asin(eps / 2R) at the center; the arc spans twice that.
  return 2.0 * 2.0 * R * std::asin(eps / (2.0 * R));
}

/// Which complementary side each comb gap opens to: bars close odd generations at the bottom,
/// so those channels open upward under the arc (bounded side).
inline bool gap_opens_to_bounded(int generation) { return generation % 2 == 1; }

}  // namespace oracle

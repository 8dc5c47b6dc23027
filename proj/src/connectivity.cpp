#include "dset/connectivity.hpp"

#include <numeric>
#include <unordered_map>

#include "dset/errors.hpp"

namespace dset {

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

std::vector<std::vector<std::size_t>> UnionFind::blocks() {
  std::vector<std::vector<std::size_t>> out;
  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < parent_.size(); ++i) {
    const std::size_t root = find(i);
    auto [it, fresh] = slot.try_emplace(root, out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(i);
  }
  return out;
}

std::vector<std::vector<std::size_t>> piece_components(std::span<const Polyline> pieces, double glue_tol) {
  if (!(glue_tol > 0.0)) throw InvalidArgument("glue_tol must be positive");
  UnionFind uf(pieces.size());
  if (pieces.empty()) return {};
  const SegmentIndex index(pieces);
  for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
    const auto& v = pieces[pi].vertices;
    if (v.size() == 1) {
      for (const auto& r : index.query(Rect{v[0].x, v[0].y, v[0].x, v[0].y}.inflated(glue_tol)))
        if (r.piece != pi && point_segment_distance(v[0], pieces[r.piece].vertices[r.segment],
                                                    pieces[r.piece].vertices[r.segment + 1]) <= glue_tol)
          uf.unite(pi, r.piece);
      continue;
    }
    for (std::size_t s = 0; s + 1 < v.size(); ++s) {
      for (const auto& r : index.query_segment(v[s], v[s + 1], glue_tol)) {
        if (r.piece <= pi || uf.find(r.piece) == uf.find(pi)) continue;
        const auto& w = pieces[r.piece].vertices;
        if (segment_segment_distance(v[s], v[s + 1], w[r.segment], w[r.segment + 1]) <= glue_tol) uf.unite(pi, r.piece);
      }
    }
  }
  return uf.blocks();
}

ChainPartition epsilon_components(std::span<const Point> points, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  ChainPartition out;
  out.scale = eps;
  UnionFind uf(points.size());
  struct KeyHash {
    std::size_t operator()(const std::pair<long long, long long>& k) const {
      return std::hash<long long>()(k.first * 73856093LL ^ k.second * 19349663LL);
    }
  };
  std::unordered_map<std::pair<long long, long long>, std::vector<std::size_t>, KeyHash> buckets;
  auto key = [eps](Point p) {
    return std::pair<long long, long long>{static_cast<long long>(std::floor(p.x / eps)),
                                           static_cast<long long>(std::floor(p.y / eps))};
  };
  for (std::size_t i = 0; i < points.size(); ++i) buckets[key(points[i])].push_back(i);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [kx, ky] = key(points[i]);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find({kx + dx, ky + dy});
        if (it == buckets.end()) continue;
        for (std::size_t j : it->second)
          if (j > i && distance(points[i], points[j]) < eps) uf.unite(i, j);
      }
  }
  out.blocks = uf.blocks();
  return out;
}

bool is_two_sided(const ComplementDecomposition& decomp) { return decomp.domain_count() == 2; }

}  // namespace dset

#include "dset/accessibility.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "dset/errors.hpp"
#include "parallel.hpp"

namespace dset {

const DomainAccess* AccessRecord::find(int domain_id) const {
  for (const auto& d : domains)
    if (d.domain_id == domain_id) return &d;
  return nullptr;
}

bool AccessRecord::accessible_from(int domain_id) const {
  const auto* d = find(domain_id);
  return d && d->accessible;
}

namespace {

constexpr int kRayLevels[] = {64, 1024, 8192};
constexpr int kFinestRays = 8192;

// Per-query BFS state, reused across queries by stamping.
struct Scratch {
  std::vector<std::uint32_t> stamp;
  std::vector<std::size_t> parent;
  std::uint32_t gen = 0;

  void reset(std::size_t n) {
    if (stamp.size() != n) {
      stamp.assign(n, 0);
      parent.assign(n, 0);
      gen = 0;
    }
    if (++gen == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      gen = 1;
    }
  }
  bool seen(std::size_t i) const { return stamp[i] == gen; }
  void mark(std::size_t i, std::size_t from) {
    stamp[i] = gen;
    parent[i] = from;
  }
};

struct Hop {
  std::size_t cell;
  Point p;
  double length;
  int angle;  // index on the finest ray circle
};

// Walks the ray x + t*d through the grid and returns the first FREE cell with the midpoint of its chord.
std::optional<std::pair<std::size_t, Point>> first_free_cell(const Grid& g, Point x, Point d) {
  const double h = g.spacing();
  const double fx = (x.x - g.origin().x) / h, fy = (x.y - g.origin().y) / h;
  int col = static_cast<int>(std::floor(fx)), row = static_cast<int>(std::floor(fy));
  if (!g.in_bounds(row, col)) return std::nullopt;
  constexpr double inf = std::numeric_limits<double>::infinity();
  const int sx = d.x > 0 ? 1 : (d.x < 0 ? -1 : 0);
  const int sy = d.y > 0 ? 1 : (d.y < 0 ? -1 : 0);
  double tmx = sx > 0 ? (col + 1 - fx) * h / d.x : (sx < 0 ? (fx - col) * h / -d.x : inf);
  double tmy = sy > 0 ? (row + 1 - fy) * h / d.y : (sy < 0 ? (fy - row) * h / -d.y : inf);
  const double dtx = sx ? h / std::abs(d.x) : inf;
  const double dty = sy ? h / std::abs(d.y) : inf;
  double t_in = 0.0;
  for (;;) {
    const std::size_t idx = g.index(row, col);
    const double t_out = std::min(tmx, tmy);
    // A chord of zero length only grazes the cell corner.
    if (!g.is_k(idx) && t_out - t_in > 1e-9 * h) {
      const double tm = 0.5 * (t_in + t_out);
      return std::pair{idx, Point{x.x + tm * d.x, x.y + tm * d.y}};
    }
    if (tmx < tmy) {
      col += sx;
      t_in = tmx;
      tmx += dtx;
    } else {
      row += sy;
      t_in = tmy;
      tmy += dty;
    }
    if (!g.in_bounds(row, col)) return std::nullopt;
  }
}

struct PathNode {
  Point p;
  long long key;
  bool pinned = false;
};

// Chronological loop erasure on node keys. A pinned node arriving on an existing key takes its
// place; two pinned nodes on one key are both kept.
std::vector<PathNode> erase_loops(const std::vector<PathNode>& nodes) {
  std::vector<PathNode> out;
  std::unordered_map<long long, std::size_t> pos;
  long long fresh = -1000;
  for (const auto& n : nodes) {
    auto it = pos.find(n.key);
    if (it == pos.end()) {
      pos[n.key] = out.size();
      out.push_back(n);
      continue;
    }
    const std::size_t j = it->second;
    for (std::size_t k = j + 1; k < out.size(); ++k) pos.erase(out[k].key);
    out.resize(j + 1);
    if (out[j].pinned && n.pinned) {
      PathNode m = n;
      m.key = fresh--;
      pos[m.key] = out.size();
      out.push_back(m);
    } else if (n.pinned) {
      out[j].p = n.p;
      out[j].pinned = true;
    }
  }
  return out;
}

Polyline to_polyline(const std::vector<PathNode>& nodes) {
  Polyline line;
  line.vertices.reserve(nodes.size());
  for (const auto& n : nodes) line.vertices.push_back(n.p);
  return line;
}

const std::array<std::pair<int, int>, 4> kNeighbours{{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}};

class Searcher {
 public:
  Searcher(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp)
      : complex_(complex), grid_(grid), decomp_(decomp) {}

  std::optional<EndCut> find(Point x, int domain_id, double probe_radius) {
    const double h = grid_.spacing();
    if (!decomp_.has_domain(domain_id)) throw UnknownDomain(domain_id);
    if (!(probe_radius >= 2.0 * h * (1.0 - 1e-12))) throw InvalidArgument("probe_radius must be at least 2h");
    if (complex_.distance_to(x) > h) throw NotOnSet("point is farther than h from the set");
    const Point target = complex_.project(x);
    const double exclude = std::max(1e-6 * h, 10.0 * complex_.glue_tol());

    std::vector<Hop> hops;
    int prev = 0;
    for (int level : kRayLevels) {
      hops.clear();
      const int stride = kFinestRays / level;
      for (int k = 0; k < level; ++k) {
        if (prev && (k * prev) % level == 0) continue;  // already cast at a coarser level
        const double theta = 2.0 * std::numbers::pi * k / level;
        const Point d{std::cos(theta), std::sin(theta)};
        auto hit = first_free_cell(grid_, target, d);
        if (!hit || decomp_.label(hit->first) != domain_id) continue;
        if (complex_.segment_hits(target, hit->second, exclude)) continue;
        hops.push_back({hit->first, hit->second, distance(target, hit->second), k * stride});
      }
      std::sort(hops.begin(), hops.end(), [](const Hop& a, const Hop& b) {
        return a.length != b.length ? a.length < b.length : a.angle < b.angle;
      });
      for (const Hop& hop : hops) {
        const auto cells = deep_path(hop.cell, domain_id, target, probe_radius);
        if (!cells) return std::nullopt;  // the whole domain is shallower than probe_radius
        EndCut ec;
        ec.target = target;
        ec.domain_id = domain_id;
        ec.scale = hop.length;
        ec.path.vertices.push_back(target);
        ec.path.vertices.push_back(hop.p);
        // The hop point already stands for the first cell.
        for (std::size_t i = 1; i < cells->size(); ++i) ec.path.vertices.push_back(grid_.center((*cells)[i]));
        if (is_simple(ec.path)) {
          ec.path.simple = true;
          return ec;
        }
      }
      prev = level;
    }
    return std::nullopt;
  }

  // BFS over 4-connected domain cells until a center is at least `depth` from x.
  std::optional<std::vector<std::size_t>> deep_path(std::size_t start, int domain_id, Point x, double depth) {
    scratch_.reset(grid_.size());
    std::deque<std::size_t> queue{start};
    scratch_.mark(start, start);
    while (!queue.empty()) {
      const std::size_t idx = queue.front();
      queue.pop_front();
      if (distance(grid_.center(idx), x) >= depth) return trace(start, idx);
      expand(idx, domain_id, queue, [](std::size_t) { return true; });
    }
    return std::nullopt;
  }

 private:
  template <class Allow>
  void expand(std::size_t idx, int domain_id, std::deque<std::size_t>& queue, Allow allow) {
    const Cell c = grid_.cell(idx);
    for (auto [dr, dc] : kNeighbours) {
      if (!grid_.in_bounds(c.row + dr, c.col + dc)) continue;
      const std::size_t n = grid_.index(c.row + dr, c.col + dc);
      if (scratch_.seen(n) || decomp_.label(n) != domain_id || !allow(n)) continue;
      scratch_.mark(n, idx);
      queue.push_back(n);
    }
  }

  std::vector<std::size_t> trace(std::size_t start, std::size_t end) const {
    std::vector<std::size_t> out{end};
    while (out.back() != start) out.push_back(scratch_.parent[out.back()]);
    std::reverse(out.begin(), out.end());
    return out;
  }

  const CurveComplex& complex_;
  const Grid& grid_;
  const ComplementDecomposition& decomp_;
  Scratch scratch_;
};

bool interior_in_domain(const Grid& grid, const ComplementDecomposition& decomp, const Polyline& line,
                        std::size_t first, std::size_t last, int domain_id) {
  for (std::size_t i = first; i < last; ++i)
    if (decomp.label(grid.index(grid.locate(line.vertices[i]))) != domain_id) return false;
  return true;
}

}  // namespace

std::optional<EndCut> find_end_cut(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp,
                                   Point x, int domain_id, double probe_radius) {
  Searcher s(complex, grid, decomp);
  return s.find(x, domain_id, probe_radius);
}

std::vector<AccessRecord> accessible_set(const CurveComplex& complex, const Grid& grid,
                                         const ComplementDecomposition& decomp, int domain_id,
                                         std::span<const Point> samples, double probe_radius) {
  if (!decomp.has_domain(domain_id)) throw UnknownDomain(domain_id);
  std::vector<AccessRecord> out(samples.size());
  detail::parallel_for(samples.size(), [&](std::size_t lo, std::size_t hi) {
    Searcher s(complex, grid, decomp);
    for (std::size_t i = lo; i < hi; ++i) {
      auto ec = s.find(samples[i], domain_id, probe_radius);
      out[i].point = samples[i];
      out[i].domains.push_back({domain_id, ec.has_value(), std::move(ec)});
    }
  });
  return out;
}

std::vector<AccessRecord> access_map(const CurveComplex& complex, const Grid& grid,
                                     const ComplementDecomposition& decomp, std::span<const Point> samples,
                                     double probe_radius) {
  std::vector<AccessRecord> out(samples.size());
  detail::parallel_for(samples.size(), [&](std::size_t lo, std::size_t hi) {
    Searcher s(complex, grid, decomp);
    for (std::size_t i = lo; i < hi; ++i) {
      out[i].point = samples[i];
      for (const auto& d : decomp.domains) {
        auto ec = s.find(samples[i], d.id, probe_radius);
        out[i].domains.push_back({d.id, ec.has_value(), std::move(ec)});
      }
    }
  });
  return out;
}

std::vector<Cell> loop_erase(const std::vector<Cell>& path) {
  std::vector<Cell> out;
  for (const Cell& c : path) {
    auto it = std::find(out.begin(), out.end(), c);
    if (it != out.end())
      out.erase(it + 1, out.end());
    else
      out.push_back(c);
  }
  return out;
}

CrossCut build_cross_cut(const Grid& grid, const ComplementDecomposition& decomp, Point x, double eps, double eps1,
                         const EndCut& ec1, const EndCut& ec2) {
  if (!(eps > 0.0) || !(eps1 > eps)) throw InvalidArgument("cross-cut needs 0 < eps < eps1");
  if (ec1.domain_id != ec2.domain_id) throw InvalidArgument("end-cuts belong to different domains");
  if (distance(ec1.target, x) > eps || distance(ec2.target, x) > eps)
    throw InvalidArgument("end-cut targets must lie in the closed eps-disc");
  if (ec1.path.vertices.size() < 2 || ec2.path.vertices.size() < 2) throw InvalidArgument("degenerate end-cut");
  const int dom = ec1.domain_id;

  auto stub = [&](const EndCut& ec) {
    std::vector<Point> s;
    for (const Point& v : ec.path.vertices) {
      if (!(distance(v, x) < eps1)) break;
      s.push_back(v);
    }
    if (s.size() < 2) throw NoConnection("end-cut leaves U_eps1 before entering the domain");
    return s;
  };
  const auto s1 = stub(ec1), s2 = stub(ec2);
  const std::size_t tip1 = grid.index(grid.locate(s1.back()));
  const std::size_t tip2 = grid.index(grid.locate(s2.back()));

  std::vector<std::size_t> bridge;
  Scratch scratch;
  scratch.reset(grid.size());
  {
    std::deque<std::size_t> queue{tip1};
    scratch.mark(tip1, tip1);
    bool found = tip1 == tip2;
    while (!queue.empty() && !found) {
      const std::size_t idx = queue.front();
      queue.pop_front();
      const Cell c = grid.cell(idx);
      for (auto [dr, dc] : kNeighbours) {
        if (!grid.in_bounds(c.row + dr, c.col + dc)) continue;
        const std::size_t n = grid.index(c.row + dr, c.col + dc);
        if (scratch.seen(n) || decomp.label(n) != dom) continue;
        if (n != tip2 && !(distance(grid.center(n), x) < eps1)) continue;
        scratch.mark(n, idx);
        if (n == tip2) {
          found = true;
          break;
        }
        queue.push_back(n);
      }
    }
    if (!found) throw NoConnection("end-cut tips lie in different components of the domain inside U_eps1");
    for (std::size_t at = tip2; at != tip1; at = scratch.parent[at]) bridge.push_back(at);
    bridge.push_back(tip1);
    std::reverse(bridge.begin(), bridge.end());
  }

  auto key = [&](Point p) { return static_cast<long long>(grid.index(grid.locate(p))); };
  std::vector<PathNode> nodes;
  nodes.push_back({s1[0], -1, true});
  nodes.push_back({s1[1], key(s1[1]), true});
  for (std::size_t i = 2; i < s1.size(); ++i) nodes.push_back({s1[i], key(s1[i])});
  for (std::size_t i = 1; i + 1 < bridge.size(); ++i)
    nodes.push_back({grid.center(bridge[i]), static_cast<long long>(bridge[i])});
  for (std::size_t i = s2.size() - 1; i >= 2; --i) nodes.push_back({s2[i], key(s2[i])});
  nodes.push_back({s2[1], key(s2[1]), true});
  nodes.push_back({s2[0], -2, true});

  CrossCut cc;
  cc.path = to_polyline(erase_loops(nodes));
  cc.start = s1[0];
  cc.end = s2[0];
  cc.domain_id = dom;
  const auto& v = cc.path.vertices;
  if (v.size() < 3 || v[1] != s1[1] || v[v.size() - 2] != s2[1] || !is_simple(cc.path) ||
      !interior_in_domain(grid, decomp, cc.path, 1, v.size() - 1, dom))
    throw NoConnection("cross-cut is not simple at this resolution");
  cc.path.simple = true;
  return cc;
}

EndCut synthesize_end_cut(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp, Point x,
                          int domain_id, const ScaleLadder& ladder, SynthesisOptions options) {
  const double h = grid.spacing();
  ladder.validate(h);
  if (ladder.size() < 3) throw InvalidArgument("synthesis needs a ladder of at least three radii");
  const double probe = options.probe_radius > 0.0 ? options.probe_radius : kDefaultProbeCells * h;
  Searcher searcher(complex, grid, decomp);
  if (!options.force_construction) {
    if (auto ec = searcher.find(x, domain_id, probe)) return *ec;
  }
  if (complex.distance_to(x) > h) throw NotOnSet("point is farther than h from the set");
  const Point target = complex.project(x);
  const double tol = complex.glue_tol();

  // Candidates per scale along the component, nearest to distance eps/2 first.
  const auto& eps = ladder.epsilons;
  const std::size_t levels = eps.size();
  std::vector<std::vector<Point>> cands(levels);
  for (std::size_t k = 0; k < levels; ++k) {
    const auto comp = neighborhood_component(complex, target, eps[k]);
    for (const auto& piece : comp.pieces) {
      const double len = piece.line.length();
      const int n = std::max(1, static_cast<int>(std::ceil(len / h)));
      for (int i = 0; i <= n; ++i) {
        const Point c = piece.line.at_length(len * i / n);
        if (distance(c, target) > tol && distance(c, target) < eps[k]) cands[k].push_back(c);
      }
    }
    std::stable_sort(cands[k].begin(), cands[k].end(), [&](Point a, Point b) {
      return std::abs(distance(a, target) - eps[k] / 2) < std::abs(distance(b, target) - eps[k] / 2);
    });
  }
  std::vector<std::vector<std::optional<std::optional<EndCut>>>> memo(levels);
  for (std::size_t k = 0; k < levels; ++k) memo[k].resize(cands[k].size());
  auto cut = [&](std::size_t k, std::size_t i) -> const std::optional<EndCut>& {
    if (!memo[k][i]) memo[k][i] = searcher.find(cands[k][i], domain_id, probe);
    return *memo[k][i];
  };
  for (std::size_t k = 0; k < levels; ++k) {
    bool any = false;
    for (std::size_t i = 0; i < cands[k].size() && !any; ++i) any = cut(k, i).has_value();
    if (!any) throw HypothesisFailed(eps[k]);
  }

  // Fine to coarse: each pick must reach the finer one by a cross-cut inside the next larger disc.
  std::vector<std::size_t> sel(levels);
  std::vector<std::optional<CrossCut>> betas(levels);
  bool assembled = false;
  for (std::size_t i = 0; i < cands[levels - 1].size() && !assembled; ++i) {
    if (!cut(levels - 1, i)) continue;
    sel[levels - 1] = i;
    bool ok = true;
    for (std::size_t k = levels - 2; k >= 1 && ok; --k) {
      ok = false;
      const EndCut& finer = *cut(k + 1, sel[k + 1]);
      for (std::size_t j = 0; j < cands[k].size() && !ok; ++j) {
        const auto& c = cut(k, j);
        if (!c) continue;
        if (distance(c->target, finer.target) <= tol) {
          betas[k].reset();
        } else {
          try {
            betas[k] = build_cross_cut(grid, decomp, target, eps[k], eps[k - 1], *c, finer);
          } catch (const NoConnection&) {
            continue;
          }
        }
        sel[k] = j;
        ok = true;
      }
    }
    assembled = ok;
  }
  if (!assembled) throw NoConnection("accessible points at consecutive scales do not connect inside the discs");

  // Chain from the coarse end towards x; junctions are the shared hop points.
  auto key = [&](Point p) { return static_cast<long long>(grid.index(grid.locate(p))); };
  std::vector<PathNode> chain;
  const auto& first = cut(1, sel[1])->path.vertices;
  for (std::size_t i = first.size() - 1; i >= 2; --i) chain.push_back({first[i], key(first[i])});
  chain.push_back({first[1], key(first[1])});
  for (std::size_t k = 1; k + 1 < levels; ++k) {
    if (!betas[k]) continue;
    const auto& bv = betas[k]->path.vertices;
    for (std::size_t i = 2; i + 1 < bv.size(); ++i) chain.push_back({bv[i], key(bv[i])});
  }
  chain.back().pinned = true;
  chain.push_back({target, -1, true});
  std::reverse(chain.begin(), chain.end());

  EndCut ec;
  ec.target = target;
  ec.domain_id = domain_id;
  ec.path = to_polyline(erase_loops(chain));
  const auto& v = ec.path.vertices;
  if (v.size() < 2 || !is_simple(ec.path) || !interior_in_domain(grid, decomp, ec.path, 1, v.size(), domain_id))
    throw NoConnection("synthesized arc is not simple at this resolution");
  ec.path.simple = true;
  ec.scale = eps.front();
  for (double e : eps)
    if (distance(v[1], target) < e) ec.scale = e;
  return ec;
}

bool validate_end_cut(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp,
                      const EndCut& ec) {
  const auto& v = ec.path.vertices;
  if (v.size() < 2 || v.front() != ec.target) return false;
  if (complex.distance_to(ec.target) > grid.spacing()) return false;
  if (!is_simple(ec.path)) return false;
  return interior_in_domain(grid, decomp, ec.path, 1, v.size(), ec.domain_id);
}

bool validate_cross_cut(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp,
                        const CrossCut& cc) {
  const auto& v = cc.path.vertices;
  if (v.size() < 3 || v.front() != cc.start || v.back() != cc.end) return false;
  const double h = grid.spacing();
  if (complex.distance_to(cc.start) > h || complex.distance_to(cc.end) > h) return false;
  if (!is_simple(cc.path)) return false;
  return interior_in_domain(grid, decomp, cc.path, 1, v.size() - 1, cc.domain_id);
}

}  // namespace dset

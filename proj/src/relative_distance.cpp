#include "dset/relative_distance.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "dset/errors.hpp"

namespace dset {

VertexGraph::VertexGraph(const CurveComplex& complex) {
  const double tol = complex.glue_tol();
  merge_tol_ = tol * 1e-3;
  const auto& pieces = complex.pieces();
  on_segment_.resize(pieces.size());
  for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
    const auto& v = pieces[pi].vertices;
    const bool closed = pieces[pi].closed();
    const std::size_t first = nodes_.size();
    const std::size_t count = closed ? v.size() - 1 : v.size();
    for (std::size_t i = 0; i < count; ++i) add_node(v[i]);
    on_segment_[pi].resize(v.size() - 1);
    for (std::size_t s = 0; s + 1 < v.size(); ++s) {
      const std::size_t u = first + s;
      const std::size_t w = (closed && s + 2 == v.size()) ? first : first + s + 1;
      on_segment_[pi][s] = {{0.0, u}, {1.0, w}};
      link(u, w);
    }
  }

  // Glue points: closest points of segment pairs within tol, joined by an edge.
  struct Event {
    SegmentRef r1, r2;
    Point p1, p2;
  };
  std::vector<Event> events;
  const auto& index = complex.index();
  for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
    const auto& v = pieces[pi].vertices;
    const bool closed = pieces[pi].closed();
    const std::size_t nseg = v.size() - 1;
    for (std::size_t s = 0; s < nseg; ++s) {
      const SegmentRef r1{pi, s};
      for (const SegmentRef& r2 : index.query_segment(v[s], v[s + 1], tol)) {
        if (!(r1 < r2)) continue;
        if (r2.piece == pi) {
          const std::size_t d = r2.segment - s;
          if (d <= 1 || (closed && d == nseg - 1)) continue;  // consecutive segments share a vertex
        }
        const Point c = complex.segment_start(r2), e = complex.segment_end(r2);
        if (segment_segment_distance(v[s], v[s + 1], c, e) > tol) continue;
        double t1 = 0, t2 = 0;
        closest_params(v[s], v[s + 1], c, e, t1, t2);
        events.push_back({r1, r2, lerp(v[s], v[s + 1], t1), lerp(c, e, t2)});
        // Collinear overlaps touch along a stretch: glue its ends too.
        for (Point q : {v[s], v[s + 1]})
          if (point_segment_distance(q, c, e) <= tol) events.push_back({r1, r2, q, lerp(c, e, project_param(q, c, e))});
        for (Point q : {c, e})
          if (point_segment_distance(q, v[s], v[s + 1]) <= tol)
            events.push_back({r1, r2, lerp(v[s], v[s + 1], project_param(q, v[s], v[s + 1])), q});
      }
    }
  }
  for (const auto& ev : events) {
    const std::size_t u = insert(ev.p1, ev.r1);
    const std::size_t w = insert(ev.p2, ev.r2);
    if (u != w) link(u, w);
  }
}

std::size_t VertexGraph::add_node(Point p) {
  nodes_.push_back(p);
  adj_.emplace_back();
  component_valid_ = false;
  return nodes_.size() - 1;
}

void VertexGraph::link(std::size_t u, std::size_t v) {
  if (u == v || std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end()) return;
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  component_valid_ = false;
}

void VertexGraph::unlink(std::size_t u, std::size_t v) {
  std::erase(adj_[u], v);
  std::erase(adj_[v], u);
}

VertexGraph::Anchor VertexGraph::anchor(Point p, SegmentRef where) const {
  const auto& list = on_segment_[where.piece][where.segment];
  const Point a = nodes_[list.front().second], b = nodes_[list.back().second];
  const double t = project_param(p, a, b);
  auto it = std::lower_bound(list.begin(), list.end(), std::pair{t, std::size_t{0}},
                             [](const auto& x, const auto& y) { return x.first < y.first; });
  if (it != list.end() && distance(nodes_[it->second], p) <= merge_tol_) return {it->second, 0, 0, t, true};
  if (it != list.begin() && distance(nodes_[std::prev(it)->second], p) <= merge_tol_)
    return {std::prev(it)->second, 0, 0, t, true};
  return {0, std::prev(it)->second, it->second, t, false};
}

std::size_t VertexGraph::insert(Point p, SegmentRef where) {
  auto& list = on_segment_[where.piece][where.segment];
  const Point a = nodes_[list.front().second], b = nodes_[list.back().second];
  const double t = project_param(p, a, b);
  auto it = std::lower_bound(list.begin(), list.end(), std::pair{t, std::size_t{0}},
                             [](const auto& x, const auto& y) { return x.first < y.first; });
  if (it != list.end() && distance(nodes_[it->second], p) <= merge_tol_) return it->second;
  if (it != list.begin() && distance(nodes_[std::prev(it)->second], p) <= merge_tol_) return std::prev(it)->second;
  const std::size_t prev = std::prev(it)->second, next = it->second;
  const std::size_t n = add_node(lerp(a, b, t));
  unlink(prev, next);
  link(prev, n);
  link(n, next);
  list.insert(it, {t, n});
  return n;
}

const std::vector<std::size_t>& VertexGraph::component() const {
  if (component_valid_) return component_;
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  component_.assign(nodes_.size(), none);
  std::size_t label = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < nodes_.size(); ++s) {
    if (component_[s] != none) continue;
    component_[s] = label;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adj_[v])
        if (component_[w] == none) {
          component_[w] = label;
          stack.push_back(w);
        }
    }
    ++label;
  }
  std::vector<std::size_t> nodes(label, 0), ends(label, 0);
  std::vector<char> all_two(label, 1);
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    ++nodes[component_[v]];
    ends[component_[v]] += adj_[v].size();
    if (adj_[v].size() != 2) all_two[component_[v]] = 0;
  }
  shape_.assign(label, Shape::other);
  for (std::size_t c = 0; c < label; ++c) {
    if (ends[c] / 2 + 1 == nodes[c]) shape_[c] = Shape::tree;
    else if (all_two[c] && nodes[c] >= 3) shape_[c] = Shape::cycle;
  }
  component_valid_ = true;
  return component_;
}

VertexGraph::Shape VertexGraph::shape(std::size_t label) const {
  component();
  return shape_.at(label);
}

namespace {

// Counter-clockwise hull, collinear points dropped.
std::vector<Point> hull_of(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// Hull of hull ∪ {p} into `out`; false (out untouched) when p is already inside.
bool hull_add(const std::vector<Point>& hull, Point p, std::vector<Point>& out) {
  const std::size_t n = hull.size();
  if (n < 3) {
    auto pts = hull;
    pts.push_back(p);
    out = hull_of(std::move(pts));
    return true;
  }
  std::vector<char> visible(n);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    visible[i] = cross(hull[(i + 1) % n] - hull[i], p - hull[i]) < 0;
    any = any || visible[i];
  }
  if (!any) return false;
  // Visible edges form one circular run; keep the vertices outside it and insert p.
  std::size_t start = 0;
  while (!(visible[start] && !visible[(start + n - 1) % n])) ++start;
  std::size_t end = start;
  while (visible[end % n]) ++end;
  out.clear();
  out.push_back(p);
  for (std::size_t i = end; i <= start + n; ++i) out.push_back(hull[i % n]);
  return true;
}

double hull_diameter(const std::vector<Point>& h) {
  double d = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j) d = std::max(d, distance(h[i], h[j]));
  return d;
}

double far_distance(const std::vector<Point>& h, Point p) {
  double d = 0.0;
  for (const Point& q : h) d = std::max(d, distance(p, q));
  return d;
}

}  // namespace

DistanceBracket relative_distance(const CurveComplex& complex, Point a, Point b, std::size_t node_budget) {
  return relative_distance(complex, VertexGraph(complex), a, b, node_budget);
}

DistanceBracket relative_distance(const CurveComplex& complex, const VertexGraph& base, Point a, Point b,
                                  std::size_t node_budget) {
  const double tol = complex.glue_tol();
  SegmentRef ra, rb;
  const Point pa = complex.project(a, &ra), pb = complex.project(b, &rb);
  if (distance(pa, a) > tol || distance(pb, b) > tol) throw NotOnSet("relative distance needs points on the set");
  if (distance(pa, pb) == 0.0) return {0.0, 0.0, true, 0};

  // a and b join the base graph as (at most two) overlay nodes; the base is never copied.
  const std::size_t n = base.size();
  const auto anc_a = base.anchor(pa, ra), anc_b = base.anchor(pb, rb);
  const std::size_t na = anc_a.existing ? anc_a.node : n;
  const std::size_t nb = anc_b.existing ? anc_b.node : (anc_a.existing ? n : n + 1);
  const auto& comp = base.component();
  if (comp[anc_a.existing ? anc_a.node : anc_a.prev] != comp[anc_b.existing ? anc_b.node : anc_b.prev])
    throw Disconnected("points lie in different components of the set");
  if (na == nb) return {0.0, 0.0, true, 0};
  const std::size_t total = std::max({n, na + 1, nb + 1});
  const Point qa = na < n ? base.node(na) : pa, qb = nb < n ? base.node(nb) : pb;
  auto point = [&](std::size_t v) { return v == na ? qa : v == nb ? qb : base.node(v); };
  // Overlay: a span prev-next holding virtual nodes becomes the chain prev, v..., next.
  std::vector<std::pair<std::size_t, std::size_t>> added, removed;
  {
    std::vector<std::pair<double, std::size_t>> virt;
    if (!anc_a.existing) virt.push_back({anc_a.t, na});
    if (!anc_b.existing) virt.push_back({anc_b.t, nb});
    const bool shared = virt.size() == 2 && anc_a.prev == anc_b.prev && anc_a.next == anc_b.next;
    if (shared) std::sort(virt.begin(), virt.end());
    auto split = [&](const VertexGraph::Anchor& anc, std::vector<std::size_t> mid) {
      removed.push_back({anc.prev, anc.next});
      std::size_t last = anc.prev;
      mid.push_back(anc.next);
      for (std::size_t v : mid) {
        added.push_back({last, v});
        last = v;
      }
    };
    if (shared)
      split(anc_a, {virt[0].second, virt[1].second});
    else
      for (const auto& [t, v] : virt) split(v == na ? anc_a : anc_b, {v});
  }
  std::vector<std::size_t> scratch;
  auto neighbours = [&](std::size_t v) -> const std::vector<std::size_t>& {
    scratch.clear();
    if (v < n)
      for (std::size_t u : base.neighbours(v)) {
        bool gone = false;
        for (const auto& [x, y] : removed) gone = gone || (x == v && y == u) || (x == u && y == v);
        if (!gone) scratch.push_back(u);
      }
    for (const auto& [x, y] : added) {
      if (x == v) scratch.push_back(y);
      if (y == v) scratch.push_back(x);
    }
    return scratch;
  };
  auto w = [&](std::size_t v) {
    const Point p = point(v);
    return std::max(distance(p, qa), distance(p, qb));
  };

  const double inf = std::numeric_limits<double>::infinity();
  using Item = std::pair<double, std::size_t>;
  // Bottleneck Dijkstra from src; stops once b is settled or values reach `stop`.
  auto bottleneck = [&](std::size_t src, std::size_t target, double stop, std::vector<double>& best,
                        std::vector<std::size_t>* parent) {
    best.assign(total, inf);
    std::vector<char> done(total, 0);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    best[src] = w(src);
    pq.push({best[src], src});
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (done[v]) continue;
      if (d >= stop) break;
      done[v] = 1;
      if (v == target) break;
      for (std::size_t u : neighbours(v)) {
        const double nd = std::max(d, w(u));
        if (nd < best[u]) {
          best[u] = nd;
          if (parent) (*parent)[u] = v;
          pq.push({nd, u});
        }
      }
    }
    for (std::size_t v = 0; v < total; ++v)
      if (!done[v]) best[v] = inf;
  };

  std::vector<double> from_a;
  std::vector<std::size_t> parent(total, na);
  bottleneck(na, nb, inf, from_a, &parent);
  const double lower = from_a[nb];
  std::vector<Point> path_pts{qb};
  for (std::size_t v = nb; v != na;) {
    v = parent[v];
    path_pts.push_back(point(v));
  }
  double incumbent = hull_diameter(hull_of(path_pts));
  auto parent_first = [&](std::size_t from) {
    std::size_t v = from;
    while (parent[v] != na) v = parent[v];
    return v;
  };
  if (incumbent <= lower) return {lower, lower, true, 0};
  // Subdividing edges keeps the shape. In a tree the bottleneck path is the only simple path;
  // on a cycle the other one is the opposite arc.
  const auto shape = base.shape(comp[anc_a.existing ? anc_a.node : anc_a.prev]);
  if (shape == VertexGraph::Shape::tree) return {incumbent, incumbent, true, 0};
  if (shape == VertexGraph::Shape::cycle) {
    std::size_t prev = na, v = na;
    for (std::size_t u : neighbours(na))
      if (u != parent_first(nb)) v = u;
    std::vector<Point> arc{qa};
    while (v != nb) {
      arc.push_back(point(v));
      const auto& nbr = neighbours(v);
      const std::size_t next = nbr[0] == prev ? nbr[1] : nbr[0];
      prev = v;
      v = next;
    }
    arc.push_back(qb);
    const double other = hull_diameter(hull_of(arc));
    const double best = std::min(incumbent, other);
    return {best, best, true, 0};
  }

  // Completion bound from b, only needed below the incumbent.
  std::vector<double> to_b;
  bottleneck(nb, total, incumbent, to_b, nullptr);

  // Depth-first over simple paths, most promising neighbour first. A frame follows a whole
  // degree-2 chain and keeps the hull of the path so far: the farthest path point from a
  // candidate is a hull vertex, and any completion still has to reach b.
  struct Frame {
    std::vector<std::size_t> chain;  // nodes marked on the path by this frame
    std::vector<std::size_t> order;
    std::size_t next = 0;
    double diam = 0.0;
    std::vector<Point> hull;
  };
  std::vector<char> on_path(total, 0);
  std::vector<std::size_t> open;
  auto candidates = [&](std::size_t v) {
    open.clear();
    for (std::size_t u : neighbours(v))
      if (!on_path[u] && to_b[u] < incumbent) open.push_back(u);
  };
  std::size_t expanded = 0;
  bool truncated = false;
  std::vector<Point> grown;
  // Diameter after appending pu, or incumbent when the extension cannot beat it.
  auto extend = [&](const Frame& f, Point pu) {
    const double d = std::max(f.diam, far_distance(f.hull, pu));
    if (d >= incumbent || far_distance(f.hull, qb) >= incumbent) return incumbent;
    return d;
  };
  auto push = [&](Frame&& f, std::size_t u) {
    // f already holds u's hull and diameter; walk on while the way forward is forced.
    for (;;) {
      on_path[u] = 1;
      f.chain.push_back(u);
      candidates(u);
      if (open.size() != 1) break;
      const std::size_t w1 = open.front();
      const Point pw = point(w1);
      const double d = extend(f, pw);
      if (d >= incumbent) {
        open.clear();
        break;
      }
      if (++expanded > node_budget) {
        truncated = true;
        open.clear();
        break;
      }
      if (w1 == nb) {
        incumbent = d;
        open.clear();
        break;
      }
      f.diam = d;
      if (hull_add(f.hull, pw, grown)) f.hull.swap(grown);
      u = w1;
    }
    f.order = open;
    std::sort(f.order.begin(), f.order.end(),
              [&](std::size_t x, std::size_t y) { return to_b[x] != to_b[y] ? to_b[x] < to_b[y] : x < y; });
    return std::move(f);
  };
  std::vector<Frame> stack;
  {
    Frame root;
    root.hull = {qa};
    stack.push_back(push(std::move(root), na));
  }
  while (!stack.empty() && !truncated) {
    Frame& f = stack.back();
    if (f.next == f.order.size()) {
      for (std::size_t v : f.chain) on_path[v] = 0;
      stack.pop_back();
      continue;
    }
    const std::size_t u = f.order[f.next++];
    if (on_path[u] || to_b[u] >= incumbent) continue;
    const Point pu = point(u);
    const double d = extend(f, pu);
    if (d >= incumbent) continue;
    if (++expanded > node_budget) {
      truncated = true;
      break;
    }
    if (u == nb) {
      incumbent = d;
      continue;
    }
    Frame child;
    child.diam = d;
    child.hull = hull_add(f.hull, pu, grown) ? grown : f.hull;
    Frame built = push(std::move(child), u);
    stack.push_back(std::move(built));
  }
  DistanceBracket out;
  out.expanded = expanded;
  out.hi = incumbent;
  out.exact = !truncated;
  out.lo = out.exact ? incumbent : std::max(lower, distance(pa, pb));
  return out;
}

}  // namespace dset

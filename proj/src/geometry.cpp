#include "dset/geometry.hpp"

#include <cassert>

#include "dset/errors.hpp"

namespace dset {

double Polyline::length() const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) total += distance(vertices[i], vertices[i + 1]);
  return total;
}

Point Polyline::at_length(double s) const {
  if (vertices.empty()) return {};
  if (s <= 0.0) return vertices.front();
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const double len = distance(vertices[i], vertices[i + 1]);
    if (s <= len) return len > 0.0 ? lerp(vertices[i], vertices[i + 1], s / len) : vertices[i];
    s -= len;
  }
  return vertices.back();
}

double project_param(Point p, Point a, Point b) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return 0.0;
  return std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
}

double point_segment_distance(Point p, Point a, Point b) {
  return distance(p, lerp(a, b, project_param(p, a, b)));
}

int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

namespace {

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

double segment_segment_distance(Point a, Point b, Point c, Point d) {
  if (segments_intersect(a, b, c, d)) return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

void closest_params(Point a, Point b, Point c, Point d, double& s, double& t) {
  const Point u = b - a;
  const Point v = d - c;
  const double uu = dot(u, u);
  const double vv = dot(v, v);
  const double den = cross(u, v);
  if (den != 0.0) {
    const Point w = c - a;
    const double si = cross(w, v) / den;
    const double ti = cross(w, u) / den;
    if (si >= 0.0 && si <= 1.0 && ti >= 0.0 && ti <= 1.0) {
      s = si;
      t = ti;
      return;
    }
  }
  // Minimum is attained with one parameter at an endpoint.
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](double ss, double tt) {
    const double dd = distance(lerp(a, b, ss), lerp(c, d, tt));
    if (dd < best) {
      best = dd;
      s = ss;
      t = tt;
    }
  };
  consider(0.0, vv > 0.0 ? project_param(a, c, d) : 0.0);
  consider(1.0, vv > 0.0 ? project_param(b, c, d) : 0.0);
  consider(uu > 0.0 ? project_param(c, a, b) : 0.0, 0.0);
  consider(uu > 0.0 ? project_param(d, a, b) : 0.0, 1.0);
}

// --- SegmentIndex --------------------------------------------------------------

SegmentIndex::SegmentIndex(std::span<const Polyline> pieces, double cell_hint) {
  std::size_t nseg = 0;
  double total_len = 0.0;
  for (const auto& p : pieces) {
    for (const auto& v : p.vertices) bounds_.expand(v);
    nseg += p.segment_count();
    total_len += p.length();
  }
  if (bounds_.empty()) bounds_ = Rect{0, 0, 0, 0};
  double cell = cell_hint;
  if (cell <= 0.0) {
    const double avg = nseg > 0 ? total_len / static_cast<double>(nseg) : 1.0;
    cell = std::max(2.0 * avg, std::max(bounds_.width(), bounds_.height()) / 1024.0);
  }
  if (!(cell > 0.0)) cell = 1.0;
  cell_ = cell;
  cols_ = std::max<long>(1, static_cast<long>(std::ceil(bounds_.width() / cell_)) + 1);
  rows_ = std::max<long>(1, static_cast<long>(std::ceil(bounds_.height() / cell_)) + 1);
  buckets_.resize(static_cast<std::size_t>(cols_ * rows_));
  for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
    const auto& vs = pieces[pi].vertices;
    for (std::size_t si = 0; si + 1 < vs.size(); ++si) {
      Rect box;
      box.expand(vs[si]);
      box.expand(vs[si + 1]);
      long c0, r0, c1, r1;
      cell_range(box, c0, r0, c1, r1);
      for (long r = r0; r <= r1; ++r)
        for (long c = c0; c <= c1; ++c) buckets_[static_cast<std::size_t>(r * cols_ + c)].push_back({pi, si});
    }
  }
}

void SegmentIndex::cell_range(const Rect& box, long& c0, long& r0, long& c1, long& r1) const {
  auto clampc = [&](double v, long hi) {
    const double f = std::floor(v / cell_);
    if (f < 0) return 0L;
    if (f > static_cast<double>(hi)) return hi;
    return static_cast<long>(f);
  };
  c0 = clampc(box.xmin - bounds_.xmin, cols_ - 1);
  c1 = clampc(box.xmax - bounds_.xmin, cols_ - 1);
  r0 = clampc(box.ymin - bounds_.ymin, rows_ - 1);
  r1 = clampc(box.ymax - bounds_.ymin, rows_ - 1);
}

std::vector<SegmentRef> SegmentIndex::query(const Rect& box) const {
  std::vector<SegmentRef> out;
  if (buckets_.empty() || !box.intersects(bounds_)) return out;
  long c0, r0, c1, r1;
  cell_range(box, c0, r0, c1, r1);
  for (long r = r0; r <= r1; ++r)
    for (long c = c0; c <= c1; ++c) {
      const auto& b = buckets_[static_cast<std::size_t>(r * cols_ + c)];
      out.insert(out.end(), b.begin(), b.end());
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<SegmentRef> SegmentIndex::query_segment(Point a, Point b, double pad) const {
  Rect box;
  box.expand(a);
  box.expand(b);
  return query(box.inflated(pad));
}

// --- simplicity ------------------------------------------------------------------

bool is_simple(const Polyline& line) {
  const auto& v = line.vertices;
  const std::size_t n = line.segment_count();
  if (n == 0) return false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] == v[i + 1]) return false;
  const bool closed = line.closed();
  // Interior vertex revisits other than the closing joint.
  const Polyline one[] = {line};
  SegmentIndex index(one);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& ref : index.query_segment(v[i], v[i + 1], 0.0)) {
      const std::size_t j = ref.segment;
      if (j <= i) continue;
      if (j == i + 1) {
        // Adjacent segments may only share their joint: reject folding back.
        const Point a = v[i], m = v[i + 1], c = v[j + 1];
        if (orientation(a, m, c) == 0 && dot(a - m, c - m) > 0.0) return false;
        continue;
      }
      if (closed && i == 0 && j == n - 1) {
        const Point a = v[1], m = v[0], c = v[n - 1];
        if (orientation(a, m, c) == 0 && dot(a - m, c - m) > 0.0) return false;
        continue;
      }
      if (segments_intersect(v[i], v[i + 1], v[j], v[j + 1])) return false;
    }
  }
  return true;
}

// --- CurveComplex --------------------------------------------------------------------

double default_glue_tol(std::span<const Polyline> pieces) {
  Rect box;
  for (const auto& p : pieces)
    for (const auto& v : p.vertices) box.expand(v);
  const double diag = box.empty() ? 0.0 : box.diagonal();
  return diag > 0.0 ? 1e-6 * diag : 1e-9;
}

CurveComplex build_complex(std::vector<Polyline> pieces, double glue_tol) {
  if (pieces.empty()) throw EmptyComplex();
  if (!(glue_tol > 0.0)) throw InvalidArgument("glue_tol must be positive");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& vs = pieces[i].vertices;
    if (vs.size() < 2) throw DegeneratePiece(i);
    for (const auto& p : vs)
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidArgument("non-finite vertex coordinate");
    for (std::size_t k = 0; k + 1 < vs.size(); ++k)
      if (vs[k] == vs[k + 1]) throw DegeneratePiece(i);
  }
  CurveComplex cc;
  cc.pieces_ = std::move(pieces);
  cc.glue_tol_ = glue_tol;
  for (const auto& p : cc.pieces_)
    for (const auto& v : p.vertices) cc.bbox_.expand(v);
  cc.index_ = std::make_shared<const SegmentIndex>(cc.pieces_);
  return cc;
}

std::size_t CurveComplex::vertex_count() const {
  std::size_t n = 0;
  for (const auto& p : pieces_) n += p.vertices.size();
  return n;
}

Point CurveComplex::project(Point p, SegmentRef* where) const {
  // Expanding search over the index; the first ring that yields a hit bounds the answer.
  double radius = index_->cell_size();
  const double limit = 2.0 * (bbox_.diagonal() + distance(p, {bbox_.xmin, bbox_.ymin})) + radius;
  Point best{};
  double best_d = std::numeric_limits<double>::infinity();
  SegmentRef best_ref{};
  while (true) {
    Rect box{p.x - radius, p.y - radius, p.x + radius, p.y + radius};
    for (const auto& r : index_->query(box)) {
      const Point a = segment_start(r), b = segment_end(r);
      const Point q = lerp(a, b, project_param(p, a, b));
      const double d = distance(p, q);
      if (d < best_d) {
        best_d = d;
        best = q;
        best_ref = r;
      }
    }
    if (best_d <= radius || radius > limit) break;
    radius *= 2.0;
  }
  if (where) *where = best_ref;
  return best;
}

double CurveComplex::distance_to(Point p) const { return distance(p, project(p)); }

bool CurveComplex::segment_hits(Point a, Point b, double exclude) const {
  const double len = distance(a, b);
  if (len <= exclude) return false;
  const Point start = lerp(a, b, exclude / len);
  for (const auto& r : index_->query_segment(start, b, 0.0)) {
    if (segments_intersect(start, b, segment_start(r), segment_end(r))) return true;
  }
  return false;
}

}  // namespace dset

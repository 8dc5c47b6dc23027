#include "dset/clip.hpp"

#include <functional>
#include <optional>

namespace dset {

namespace {

struct Interval {
  double lo, hi;
};

using SegmentWindow = std::function<std::optional<Interval>(Point, Point)>;

std::vector<ClippedPiece> clip_generic(const CurveComplex& complex, const Rect& query_box,
                                       const SegmentWindow& window) {
  std::vector<ClippedPiece> out;
  const auto refs = complex.index().query(query_box);
  std::size_t k = 0;
  while (k < refs.size()) {
    const std::size_t piece = refs[k].piece;
    const Polyline& src = complex.piece(piece);
    const std::size_t nseg = src.segment_count();
    std::vector<ClippedPiece> runs;
    std::optional<ClippedPiece> cur;
    std::size_t prev_seg = 0;
    bool have_prev = false;

    auto close = [&](double t1) {
      if (!cur) return;
      cur->t1 = t1;
      auto& v = cur->line.vertices;
      v.erase(std::unique(v.begin(), v.end()), v.end());
      if (v.size() >= 2) runs.push_back(std::move(*cur));
      cur.reset();
    };

    for (; k < refs.size() && refs[k].piece == piece; ++k) {
      const std::size_t s = refs[k].segment;
      if (cur && have_prev && s != prev_seg + 1) close(static_cast<double>(prev_seg + 1));
      have_prev = true;
      prev_seg = s;
      const Point a = src.vertices[s], b = src.vertices[s + 1];
      const auto iv = window(a, b);
      if (!iv) {
        close(static_cast<double>(s));
        continue;
      }
      if (iv->lo > 0.0) {
        close(static_cast<double>(s));
        cur = ClippedPiece{Polyline{{lerp(a, b, iv->lo)}, false}, piece, s + iv->lo, 0.0};
      } else if (!cur) {
        cur = ClippedPiece{Polyline{{a}, false}, piece, static_cast<double>(s), 0.0};
      }
      if (iv->hi < 1.0) {
        cur->line.vertices.push_back(lerp(a, b, iv->hi));
        close(s + iv->hi);
      } else {
        cur->line.vertices.push_back(b);
      }
    }
    if (cur) close(static_cast<double>(prev_seg + 1));

    // Join the run through the closing joint of a closed source.
    if (src.closed() && runs.size() >= 2 && runs.front().t0 == 0.0 &&
        runs.back().t1 == static_cast<double>(nseg)) {
      ClippedPiece merged = std::move(runs.back());
      runs.pop_back();
      auto& first = runs.front();
      merged.line.vertices.insert(merged.line.vertices.end(), first.line.vertices.begin() + 1,
                                  first.line.vertices.end());
      merged.t1 = first.t1;
      runs.front() = std::move(merged);
    }
    for (auto& r : runs) r.line.simple = src.simple;
    out.insert(out.end(), std::make_move_iterator(runs.begin()), std::make_move_iterator(runs.end()));
  }
  return out;
}

}  // namespace

bool ClippedPiece::covers(const ClippedPiece& other, std::size_t source_segments) const {
  if (other.source != source) return false;
  const double len = static_cast<double>(source_segments);
  const double eps = 1e-9 * std::max(1.0, len);
  double a0 = t0, a1 = t1, b0 = other.t0, b1 = other.t1;
  if (a1 < a0) a1 += len;
  if (b1 < b0) b1 += len;
  for (double shift : {0.0, len, -len}) {
    if (a0 <= b0 + shift + eps && b1 + shift <= a1 + eps) return true;
  }
  return false;
}

std::vector<ClippedPiece> clip_to_disc(const CurveComplex& complex, const Disc& disc) {
  const Point c = disc.center;
  const double r = disc.radius;
  if (!(r > 0.0)) return {};
  const Rect box{c.x - r, c.y - r, c.x + r, c.y + r};
  return clip_generic(complex, box, [c, r](Point a, Point b) -> std::optional<Interval> {
    const Point d = b - a;
    const Point f = a - c;
    const double qa = dot(d, d);
    const double qb = 2.0 * dot(f, d);
    const double qc = dot(f, f) - r * r;
    if (qa == 0.0) return std::nullopt;
    const double disc2 = qb * qb - 4.0 * qa * qc;
    if (disc2 <= 0.0) return std::nullopt;
    const double sq = std::sqrt(disc2);
    // Numerically stable root pair.
    const double q = -0.5 * (qb + std::copysign(sq, qb));
    double r1 = q / qa;
    double r2 = q != 0.0 ? qc / q : -r1;
    if (r1 > r2) std::swap(r1, r2);
    const double lo = std::max(0.0, r1);
    const double hi = std::min(1.0, r2);
    if (!(lo < hi)) return std::nullopt;
    return Interval{lo, hi};
  });
}

std::vector<ClippedPiece> clip_to_rect(const CurveComplex& complex, const Rect& w) {
  return clip_generic(complex, w, [w](Point a, Point b) -> std::optional<Interval> {
    // Liang-Barsky against the open rectangle.
    double lo = 0.0, hi = 1.0;
    const Point d = b - a;
    const double p[4] = {-d.x, d.x, -d.y, d.y};
    const double q[4] = {a.x - w.xmin, w.xmax - a.x, a.y - w.ymin, w.ymax - a.y};
    for (int i = 0; i < 4; ++i) {
      if (p[i] == 0.0) {
        if (q[i] <= 0.0) return std::nullopt;
        continue;
      }
      const double t = q[i] / p[i];
      if (p[i] < 0.0)
        lo = std::max(lo, t);
      else
        hi = std::min(hi, t);
    }
    if (!(lo < hi)) return std::nullopt;
    return Interval{lo, hi};
  });
}

std::vector<Polyline> lines_of(const std::vector<ClippedPiece>& pieces) {
  std::vector<Polyline> out;
  out.reserve(pieces.size());
  for (const auto& p : pieces) out.push_back(p.line);
  return out;
}

}  // namespace dset

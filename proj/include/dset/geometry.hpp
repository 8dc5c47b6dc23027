#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <vector>

namespace dset {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline double distance(Point a, Point b) { return norm({a.x - b.x, a.y - b.y}); }
inline Point lerp(Point a, Point b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }

/// Axis-aligned rectangle; used both as a bounding box (closed) and as an open window.
struct Rect {
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  bool empty() const { return xmin > xmax || ymin > ymax; }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double diagonal() const { return std::hypot(width(), height()); }
  void expand(Point p) {
    xmin = std::min(xmin, p.x);
    ymin = std::min(ymin, p.y);
    xmax = std::max(xmax, p.x);
    ymax = std::max(ymax, p.y);
  }
  Rect inflated(double d) const { return {xmin - d, ymin - d, xmax + d, ymax + d}; }
  bool contains(Point p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
  bool contains_open(Point p) const { return p.x > xmin && p.x < xmax && p.y > ymin && p.y < ymax; }
  bool intersects(const Rect& o) const {
    return !(o.xmin > xmax || o.xmax < xmin || o.ymin > ymax || o.ymax < ymin);
  }
};

struct Disc {
  Point center;
  double radius = 0.0;

  bool contains_open(Point p) const { return distance(p, center) < radius; }
};

/// Ordered vertex list. A polyline is closed when its last vertex equals its first.
struct Polyline {
  std::vector<Point> vertices;
  bool simple = false;  ///< set by producers that know the polyline is self-intersection-free

  std::size_t segment_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  bool closed() const { return vertices.size() > 2 && vertices.front() == vertices.back(); }
  double length() const;
  /// Point at arc length `s` from the first vertex (clamped).
  Point at_length(double s) const;
};

// --- segment primitives ------------------------------------------------------

/// Parameter in [0,1] of the point of segment ab closest to p.
double project_param(Point p, Point a, Point b);
double point_segment_distance(Point p, Point a, Point b);
double segment_segment_distance(Point a, Point b, Point c, Point d);
/// Closest pair of parameters (s on ab, t on cd).
void closest_params(Point a, Point b, Point c, Point d, double& s, double& t);
/// True when closed segments ab and cd share at least one point.
bool segments_intersect(Point a, Point b, Point c, Point d);
/// Orientation sign of (a, b, c): +1 ccw, -1 cw, 0 collinear.
int orientation(Point a, Point b, Point c);

/// Whether a polyline has no two non-adjacent segments touching (closing joint allowed).
bool is_simple(const Polyline& line);

// --- segment index -------------------------------------------------------------

struct SegmentRef {
  std::size_t piece = 0;
  std::size_t segment = 0;
  friend bool operator==(SegmentRef, SegmentRef) = default;
  friend auto operator<=>(SegmentRef, SegmentRef) = default;
};

/// Uniform bucket grid over the segments of a set of polylines.
class SegmentIndex {
 public:
  SegmentIndex() = default;
  SegmentIndex(std::span<const Polyline> pieces, double cell_hint = 0.0);

  /// Every segment whose bounding box meets `box`, sorted and unique.
  std::vector<SegmentRef> query(const Rect& box) const;
  /// Segments whose bounding box meets the bounding box of ab inflated by `pad`.
  std::vector<SegmentRef> query_segment(Point a, Point b, double pad) const;
  double cell_size() const { return cell_; }

 private:
  void cell_range(const Rect& box, long& c0, long& r0, long& c1, long& r1) const;

  Rect bounds_;
  double cell_ = 1.0;
  long cols_ = 0;
  long rows_ = 0;
  std::vector<std::vector<SegmentRef>> buckets_;
};

// --- curve complex -------------------------------------------------------------

/// A compact plane set given as a finite union of polylines glued at tolerance glue_tol.
class CurveComplex {
 public:
  const std::vector<Polyline>& pieces() const { return pieces_; }
  const Polyline& piece(std::size_t i) const { return pieces_[i]; }
  double glue_tol() const { return glue_tol_; }
  const Rect& bbox() const { return bbox_; }
  const SegmentIndex& index() const { return *index_; }
  std::size_t vertex_count() const;
  Point segment_start(SegmentRef r) const { return pieces_[r.piece].vertices[r.segment]; }
  Point segment_end(SegmentRef r) const { return pieces_[r.piece].vertices[r.segment + 1]; }

  /// Distance from p to the nearest point of the set.
  double distance_to(Point p) const;
  /// Nearest point of the set to p, with the segment it lies on.
  Point project(Point p, SegmentRef* where = nullptr) const;
  /// Whether segment ab meets the set at a point farther than `exclude` from a.
  bool segment_hits(Point a, Point b, double exclude) const;

  friend CurveComplex build_complex(std::vector<Polyline> pieces, double glue_tol);

 private:
  std::vector<Polyline> pieces_;
  double glue_tol_ = 0.0;
  Rect bbox_;
  std::shared_ptr<const SegmentIndex> index_;
};

/// Stores the pieces unmodified, computes the bounding box and a segment index.
/// Throws EmptyComplex, DegeneratePiece, InvalidArgument (glue_tol <= 0).
CurveComplex build_complex(std::vector<Polyline> pieces, double glue_tol);

/// Default gluing tolerance: 1e-6 of the bounding-box diagonal.
double default_glue_tol(std::span<const Polyline> pieces);

}  // namespace dset

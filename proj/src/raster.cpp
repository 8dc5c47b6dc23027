#include "dset/raster.hpp"

#include <algorithm>
#include <sstream>

#include "dset/errors.hpp"

namespace dset {

Grid::Grid(Point origin, double spacing, int cols, int rows)
    : origin_(origin), h_(spacing), cols_(cols), rows_(rows), cells_(static_cast<std::size_t>(cols) * rows, 0) {}

Point Grid::center(std::size_t idx) const {
  const Cell c = cell(idx);
  return {origin_.x + (c.col + 0.5) * h_, origin_.y + (c.row + 0.5) * h_};
}

Cell Grid::locate(Point p) const {
  const int col = std::clamp(static_cast<int>(std::floor((p.x - origin_.x) / h_)), 0, cols_ - 1);
  const int row = std::clamp(static_cast<int>(std::floor((p.y - origin_.y) / h_)), 0, rows_ - 1);
  return {row, col};
}

std::size_t Grid::k_count() const {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](auto v) { return v != 0; }));
}

namespace {

// Closed axis-aligned square vs segment.
bool segment_meets_square(Point a, Point b, const Rect& sq) {
  if (sq.contains(a) || sq.contains(b)) return true;
  const Point c[4] = {{sq.xmin, sq.ymin}, {sq.xmax, sq.ymin}, {sq.xmax, sq.ymax}, {sq.xmin, sq.ymax}};
  for (int i = 0; i < 4; ++i)
    if (segments_intersect(a, b, c[i], c[(i + 1) % 4])) return true;
  return false;
}

}  // namespace

Grid rasterize(const CurveComplex& complex, double h, RasterMode mode) {
  if (!(h > 0.0)) throw ScaleError("grid spacing must be positive");
  if (h <= complex.glue_tol()) throw ScaleError("grid spacing must exceed the gluing tolerance");
  const Rect& box = complex.bbox();
  // Degenerate sides (a straight segment) do not bound the scale.
  double extent = std::min(box.width(), box.height());
  if (extent <= complex.glue_tol()) extent = std::max(box.width(), box.height());
  if (h >= extent / 8.0)
    throw ScaleError("grid spacing " + std::to_string(h) + " too coarse for set extent " + std::to_string(extent));

  const double pad = kGridPadCells * h;
  const Point origin{box.xmin - pad, box.ymin - pad};
  const int cols = static_cast<int>(std::ceil((box.width() + 2.0 * pad) / h));
  const int rows = static_cast<int>(std::ceil((box.height() + 2.0 * pad) / h));
  Grid grid(origin, h, cols, rows);
  grid.mode_ = mode;

  for (const auto& piece : complex.pieces()) {
    const auto& v = piece.vertices;
    for (std::size_t s = 0; s + 1 < v.size(); ++s) {
      const Point a = v[s], b = v[s + 1];
      const double reach = mode == RasterMode::cell_center ? h : 0.0;
      const int c0 = std::max(0, static_cast<int>(std::floor((std::min(a.x, b.x) - reach - origin.x) / h)) - 1);
      const int c1 = std::min(cols - 1, static_cast<int>(std::floor((std::max(a.x, b.x) + reach - origin.x) / h)) + 1);
      const int r0 = std::max(0, static_cast<int>(std::floor((std::min(a.y, b.y) - reach - origin.y) / h)) - 1);
      const int r1 = std::min(rows - 1, static_cast<int>(std::floor((std::max(a.y, b.y) + reach - origin.y) / h)) + 1);
      for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
          const std::size_t idx = grid.index(r, c);
          if (grid.cells_[idx]) continue;
          bool hit = false;
          if (mode == RasterMode::cell_center) {
            hit = point_segment_distance(grid.center(idx), a, b) <= h;
          } else {
            const Rect sq{origin.x + c * h, origin.y + r * h, origin.x + (c + 1) * h, origin.y + (r + 1) * h};
            hit = segment_meets_square(a, b, sq);
          }
          if (hit) grid.cells_[idx] = 1;
        }
      }
    }
  }
  return grid;
}

const Domain& ComplementDecomposition::domain(int id) const {
  if (!has_domain(id)) throw UnknownDomain(id);
  return domains[static_cast<std::size_t>(id - 1)];
}

int ComplementDecomposition::unbounded_id() const {
  for (const auto& d : domains)
    if (d.unbounded) return d.id;
  return 0;
}

ComplementDecomposition complement_components(const Grid& grid) {
  ComplementDecomposition out;
  out.labels.assign(grid.size(), 0);
  std::vector<std::size_t> stack;
  const int rows = grid.rows(), cols = grid.cols();
  for (std::size_t seed = 0; seed < grid.size(); ++seed) {
    if (grid.is_k(seed) || out.labels[seed] != 0) continue;
    const int id = static_cast<int>(out.domains.size()) + 1;
    Domain dom{id, 0, false};
    out.labels[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      ++dom.cell_count;
      const Cell c = grid.cell(idx);
      if (c.row == 0 || c.col == 0 || c.row == rows - 1 || c.col == cols - 1) dom.unbounded = true;
      const Cell nb[4] = {{c.row - 1, c.col}, {c.row, c.col - 1}, {c.row, c.col + 1}, {c.row + 1, c.col}};
      for (const Cell& n : nb) {
        if (!grid.in_bounds(n.row, n.col)) continue;
        const std::size_t ni = grid.index(n);
        if (grid.is_k(ni) || out.labels[ni] != 0) continue;
        out.labels[ni] = id;
        stack.push_back(ni);
      }
    }
    out.domains.push_back(dom);
  }
  return out;
}

std::vector<std::size_t> frontier_cells(const Grid& grid, const ComplementDecomposition& decomp, int domain_id,
                                        int reach) {
  if (!decomp.has_domain(domain_id)) throw UnknownDomain(domain_id);
  if (reach < 1) throw InvalidArgument("frontier reach must be at least one cell");
  // Dilate the domain by `reach` Chebyshev steps; K cells hit are frontier.
  std::vector<int> dist(grid.size(), -1);
  std::vector<std::size_t> layer, next;
  for (std::size_t idx = 0; idx < grid.size(); ++idx)
    if (decomp.labels[idx] == domain_id) {
      dist[idx] = 0;
      layer.push_back(idx);
    }
  for (int step = 1; step <= reach && !layer.empty(); ++step) {
    next.clear();
    for (std::size_t idx : layer) {
      const Cell c = grid.cell(idx);
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          if (!grid.in_bounds(c.row + dr, c.col + dc)) continue;
          const std::size_t n = grid.index(c.row + dr, c.col + dc);
          if (dist[n] >= 0 || !grid.is_k(n)) continue;
          dist[n] = step;
          next.push_back(n);
        }
    }
    layer.swap(next);
  }
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < grid.size(); ++idx)
    if (grid.is_k(idx) && dist[idx] > 0) out.push_back(idx);
  return out;
}

std::string to_pgm(const Grid& grid, const ComplementDecomposition& decomp) {
  std::ostringstream os;
  os << "P2\n" << grid.cols() << ' ' << grid.rows() << '\n' << std::max<std::size_t>(1, decomp.domain_count()) << '\n';
  for (int r = grid.rows() - 1; r >= 0; --r) {
    for (int c = 0; c < grid.cols(); ++c) {
      if (c) os << ' ';
      os << decomp.labels[grid.index(r, c)];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace dset

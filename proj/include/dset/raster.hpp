#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dset/geometry.hpp"

namespace dset {

/// How a cell is decided to belong to the set.
enum class RasterMode {
  cell_center,    ///< center within h of the complex (default)
  cell_coverage,  ///< closed cell square meets the complex
};

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(Cell, Cell) = default;
  friend auto operator<=>(Cell, Cell) = default;
};

/// Square grid over the padded bounding box; row 0 is the bottom row.
class Grid {
 public:
  Grid() = default;
  Grid(Point origin, double spacing, int cols, int rows);

  Point origin() const { return origin_; }
  double spacing() const { return h_; }
  int cols() const { return cols_; }
  int rows() const { return rows_; }
  std::size_t size() const { return cells_.size(); }
  RasterMode mode() const { return mode_; }

  bool in_bounds(int row, int col) const { return row >= 0 && col >= 0 && row < rows_ && col < cols_; }
  std::size_t index(int row, int col) const { return static_cast<std::size_t>(row) * cols_ + col; }
  std::size_t index(Cell c) const { return index(c.row, c.col); }
  Cell cell(std::size_t idx) const { return {static_cast<int>(idx / cols_), static_cast<int>(idx % cols_)}; }
  Point center(std::size_t idx) const;
  Point center(Cell c) const { return center(index(c)); }
  /// Cell containing p (clamped to the grid).
  Cell locate(Point p) const;

  bool is_k(std::size_t idx) const { return cells_[idx] != 0; }
  std::size_t k_count() const;

  friend Grid rasterize(const CurveComplex&, double, RasterMode);

 private:
  Point origin_;
  double h_ = 1.0;
  int cols_ = 0;
  int rows_ = 0;
  RasterMode mode_ = RasterMode::cell_center;
  std::vector<std::uint8_t> cells_;
};

/// Padding (in cells) kept free around the bounding box.
inline constexpr int kGridPadCells = 5;

/// Rasterizes the complex at spacing h.
/// Throws ScaleError if h <= glue_tol or h >= (smallest non-degenerate bbox side) / 8.
Grid rasterize(const CurveComplex& complex, double h, RasterMode mode = RasterMode::cell_center);

struct Domain {
  int id = 0;
  std::size_t cell_count = 0;
  bool unbounded = false;
};

/// 4-connected labeling of the FREE cells. Labels are 0 on K-cells and 1..N otherwise.
struct ComplementDecomposition {
  std::vector<std::int32_t> labels;
  std::vector<Domain> domains;

  int label(std::size_t idx) const { return labels[idx]; }
  bool has_domain(int id) const { return id >= 1 && id <= static_cast<int>(domains.size()); }
  const Domain& domain(int id) const;
  /// Id of the unbounded domain.
  int unbounded_id() const;
  std::size_t domain_count() const { return domains.size(); }
};

ComplementDecomposition complement_components(const Grid& grid);

/// K-cells within Chebyshev distance `reach` of a cell of the given domain (reach 1 is
/// 8-adjacency), ascending cell index. Throws UnknownDomain.
std::vector<std::size_t> frontier_cells(const Grid& grid, const ComplementDecomposition& decomp, int domain_id,
                                        int reach = 1);

/// Cells a K-band can be thick on one side of the curve: the reach used for frontier comparisons.
inline constexpr int kBandReachCells = 2;

/// Plain PGM (P2): K cells 0, domain cells their id; top row first.
std::string to_pgm(const Grid& grid, const ComplementDecomposition& decomp);

}  // namespace dset

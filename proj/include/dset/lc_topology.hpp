#pragma once

#include <span>
#include <string>
#include <vector>

#include "dset/accessibility.hpp"
#include "dset/neighborhood.hpp"
#include "dset/raster.hpp"
#include "dset/relative_distance.hpp"

namespace dset {

struct DensityWitness {
  Point x;
  double eps = 0.0;
};

struct DensityVerdict {
  std::string subset_name;
  bool pass = true;
  std::vector<DensityWitness> witnesses;
};

/// For every sample x and ladder eps, the component of x in K ∩ U_eps(x) must hold a point of R
/// (within glue_tol). Samples off the set are skipped.
DensityVerdict is_sufficiently_dense(const CurveComplex& complex, std::span<const Point> R, const ScaleLadder& ladder,
                                     std::span<const Point> samples, std::string subset_name = "R");

struct ScaleDetail {
  double eps = 0.0;
  std::size_t failures_first = 0;
  std::size_t failures_second = 0;
};

struct DSetResult {
  bool verdict = false;
  int first_domain = 0;
  int second_domain = 0;
  DensityVerdict first;   ///< A_1, accessible from first_domain
  DensityVerdict second;  ///< A_2
  std::vector<ScaleDetail> per_eps;
};

/// Both accessible sets sufficiently dense. Throws NotTwoSided.
DSetResult d_set_check(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp,
                       const ScaleLadder& ladder, std::span<const Point> samples, double probe_radius);
/// Same from precomputed records (one per sample, entries for both domains).
DSetResult d_set_check(const CurveComplex& complex, const ComplementDecomposition& decomp, const ScaleLadder& ladder,
                       std::span<const AccessRecord> records);

struct SimpleSetResult {
  bool verdict = false;
  double resolution = 0.0;
  bool dense_first = false;
  bool dense_second = false;
  bool frontier_equal = false;
  std::size_t frontier_first = 0;
  std::size_t frontier_second = 0;
  std::size_t k_cells = 0;
  std::vector<Point> gaps_first;  ///< samples with no A_1 sample within resolution
  std::vector<Point> gaps_second;
};

/// Metric density of both accessible sets at resolution max(2h, glue_tol) plus both frontiers
/// (at band reach) covering every K cell.
/// Throws NotTwoSided.
SimpleSetResult simple_set_check(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp,
                                 std::span<const Point> samples, double probe_radius);
SimpleSetResult simple_set_check(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp,
                                 std::span<const AccessRecord> records);

/// Every chain block of B at scale delta has diameter < delta.
bool zero_dim_at_scale(std::span<const Point> B, double delta);

struct SandwichWitness {
  Point y;
  DistanceBracket bracket;
  bool member = false;
  std::string violation;
};

struct SandwichResult {
  bool pass = true;
  Point x;
  double eps = 0.0;
  std::size_t checked = 0;   ///< samples close enough to need a bracket
  std::size_t inexact = 0;   ///< brackets cut short by the node budget
  double max_ratio = 1.0;    ///< largest observed hi / |x - y| over exact brackets
  std::vector<SandwichWitness> witnesses;
};

/// Small relative distance forces membership in the eps-component, and membership bounds relative distance.
SandwichResult sandwich_check(const CurveComplex& complex, Point x, double eps, std::span<const Point> samples,
                              std::size_t node_budget = kDefaultNodeBudget);
SandwichResult sandwich_check(const CurveComplex& complex, const VertexGraph& graph, Point x, double eps,
                              std::span<const Point> samples, std::size_t node_budget = kDefaultNodeBudget);

/// Number of glued components of the complex inside the open rectangle.
std::size_t density_lower_bound(const CurveComplex& complex, const Rect& window);

}  // namespace dset

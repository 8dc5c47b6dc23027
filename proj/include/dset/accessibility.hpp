#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dset/geometry.hpp"
#include "dset/neighborhood.hpp"
#include "dset/raster.hpp"

namespace dset {

/// Arc from a point of the set into a complementary domain. path[0] == target.
struct EndCut {
  Polyline path;
  Point target;
  int domain_id = 0;
  double scale = 0.0;
};

/// Arc through a domain with both endpoints on the set.
struct CrossCut {
  Polyline path;
  Point start;
  Point end;
  int domain_id = 0;
};

struct DomainAccess {
  int domain_id = 0;
  bool accessible = false;
  std::optional<EndCut> witness;
};

struct AccessRecord {
  Point point;
  std::vector<DomainAccess> domains;

  /// Entry for the given domain or nullptr.
  const DomainAccess* find(int domain_id) const;
  bool accessible_from(int domain_id) const;
};

inline constexpr double kDefaultProbeCells = 10.0;

/// Straight hop from x to a cell of the domain followed by a BFS cell path to depth probe_radius.
/// Throws NotOnSet if x is farther than h from the complex, InvalidArgument if probe_radius < 2h,
/// UnknownDomain for a bad id.
std::optional<EndCut> find_end_cut(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp,
                                   Point x, int domain_id, double probe_radius);

/// One record per sample with one entry for the requested domain. Runs the samples in parallel.
std::vector<AccessRecord> accessible_set(const CurveComplex& complex, const Grid& grid,
                                         const ComplementDecomposition& decomp, int domain_id,
                                         std::span<const Point> samples, double probe_radius);

/// Same, with one entry per domain of the decomposition.
std::vector<AccessRecord> access_map(const CurveComplex& complex, const Grid& grid,
                                     const ComplementDecomposition& decomp, std::span<const Point> samples,
                                     double probe_radius);

/// Chronological loop erasure.
std::vector<Cell> loop_erase(const std::vector<Cell>& path);

/// Joins initial arcs of two end-cuts inside U_eps1(x).
/// Throws InvalidArgument (eps1 <= eps, mixed domains, targets outside the closed eps-disc) or NoConnection.
CrossCut build_cross_cut(const Grid& grid, const ComplementDecomposition& decomp, Point x, double eps, double eps1,
                         const EndCut& ec1, const EndCut& ec2);

struct SynthesisOptions {
  double probe_radius = 0.0;  ///< 0 means kDefaultProbeCells * h
  bool force_construction = false;
};

/// Builds an end-cut at x from accessible points in shrinking neighborhood components.
/// Returns find_end_cut's result unchanged when x is directly accessible (unless forced).
/// Throws HypothesisFailed(eps) or NoConnection.
EndCut synthesize_end_cut(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp, Point x,
                          int domain_id, const ScaleLadder& ladder, SynthesisOptions options = {});

/// Type invariants by direct scan: endpoint on K (within h), simple, vertices after the first in domain cells.
bool validate_end_cut(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp,
                      const EndCut& ec);
/// Endpoints on K (within h), simple, interior vertices in domain cells.
bool validate_cross_cut(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp,
                        const CrossCut& cc);

}  // namespace dset

#pragma once

#include <vector>

#include "dset/clip.hpp"
#include "dset/geometry.hpp"

namespace dset {

/// Strictly decreasing disc radii standing in for "every open neighborhood".
struct ScaleLadder {
  std::vector<double> epsilons;
  double floor_ratio = 5.0;

  /// eps_max, eps_max*ratio, ... down to the last value >= eps_min.
  static ScaleLadder geometric(double eps_max, double eps_min, double ratio, double floor_ratio = 5.0);
  /// 1/n_first, 1/(n_first+1), ..., 1/n_last.
  static ScaleLadder harmonic(int n_first, int n_last, double floor_ratio = 5.0);

  double finest() const { return epsilons.back(); }
  double coarsest() const { return epsilons.front(); }
  std::size_t size() const { return epsilons.size(); }
  /// Throws InvalidArgument if not strictly decreasing positive, ScaleError if finest < floor_ratio*h.
  void validate(double h) const;
};

/// The component of x in K ∩ U_eps(x), as a set of clipped pieces.
struct NeighborhoodComponent {
  Point center;
  double eps = 0.0;
  double glue_tol = 0.0;
  std::vector<ClippedPiece> pieces;

  /// Whether y is within `tol` (default glue_tol) of one of the pieces.
  bool contains(Point y, double tol = -1.0) const;
  double max_distance_from_center() const;
};

/// Clips to U_eps(x) and keeps the glued block containing x.
/// Throws NotOnSet if x is farther than glue_tol from the complex.
NeighborhoodComponent neighborhood_component(const CurveComplex& complex, Point x, double eps);

}  // namespace dset

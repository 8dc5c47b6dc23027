#pragma once

#include <vector>

#include "dset/geometry.hpp"

namespace dset {

/// A maximal sub-polyline of one input piece lying inside a clip window.
///
/// `t0`/`t1` locate it on the source piece in segment parameter units
/// (segment index + local parameter). For a closed source whose run wraps
/// through the closing joint, `t0 > t1`.
struct ClippedPiece {
  Polyline line;
  std::size_t source = 0;
  double t0 = 0.0;
  double t1 = 0.0;

  /// Whether this run's parameter range contains `other`'s (same source).
  bool covers(const ClippedPiece& other, std::size_t source_segments) const;
};

/// Pieces of the complex inside the open disc; boundary crossings become vertices.
std::vector<ClippedPiece> clip_to_disc(const CurveComplex& complex, const Disc& disc);

/// Pieces of the complex inside the open rectangle.
std::vector<ClippedPiece> clip_to_rect(const CurveComplex& complex, const Rect& window);

/// Plain polylines of a clip result.
std::vector<Polyline> lines_of(const std::vector<ClippedPiece>& pieces);

}  // namespace dset

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dset/geometry.hpp"

namespace dset {

enum class FixtureKind { circle, circle_with_dots, posc, comb, comb_arc, figure_eight, segment };

/// Parametric description of one of the example sets.
///
/// `n` is the family depth for posc/comb/comb_arc; `size` is the radius for the
/// circle-like kinds and the length for `segment`.
struct FixtureSpec {
  FixtureKind kind = FixtureKind::circle;
  int n = 0;
  double size = 1.0;

  /// Canonical "name:param" form, e.g. "comb_arc:4".
  std::string id() const;
};

/// Parses "name" or "name:param". Throws ParseError on unknown names or bad parameters.
FixtureSpec parse_fixture(std::string_view text);

/// Samples the fixture into a curve complex with the default gluing tolerance.
/// Analytic arcs get segments no longer than `sampling_step` and chord error
/// below `sampling_step / 10`.
/// Throws UnresolvableScale when the step cannot resolve the finest feature.
CurveComplex make_fixture(const FixtureSpec& spec, double sampling_step);

// Comb geometry. Teeth sit at the endpoints of the depth-(n-1) intervals of a
// middle-quarter Cantor construction (kept fraction 3/8 per side, so every
// abscissa is a dyadic rational).

/// The 2^n tooth abscissas of comb(n), ascending.
std::vector<double> comb_teeth(int n);
/// Generation (1..n) of the gap between teeth i-1 and i, for i in 1..2^n-1.
/// Odd generations are closed by the bottom bar, even ones by the top bar.
int comb_gap_generation(int n, std::size_t gap);
/// Smallest distance between adjacent teeth of comb(n).
double comb_min_spacing(int n);

/// Perpendicular separation of the two posc(n) strands at x = 1/n,
/// the finest feature of that fixture.
double posc_strand_gap(int n);

}  // namespace dset

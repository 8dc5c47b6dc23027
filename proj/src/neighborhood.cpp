#include "dset/neighborhood.hpp"

#include "dset/connectivity.hpp"
#include "dset/errors.hpp"

namespace dset {

ScaleLadder ScaleLadder::geometric(double eps_max, double eps_min, double ratio, double floor_ratio) {
  if (!(eps_max > 0.0) || !(eps_min > 0.0) || eps_min > eps_max)
    throw InvalidArgument("ladder needs 0 < eps_min <= eps_max");
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgument("ladder ratio must lie in (0, 1)");
  ScaleLadder ladder;
  ladder.floor_ratio = floor_ratio;
  for (double e = eps_max; e >= eps_min * (1.0 - 1e-12); e *= ratio) ladder.epsilons.push_back(e);
  return ladder;
}

ScaleLadder ScaleLadder::harmonic(int n_first, int n_last, double floor_ratio) {
  if (n_first < 1 || n_last < n_first) throw InvalidArgument("harmonic ladder needs 1 <= n_first <= n_last");
  ScaleLadder ladder;
  ladder.floor_ratio = floor_ratio;
  for (int n = n_first; n <= n_last; ++n) ladder.epsilons.push_back(1.0 / n);
  return ladder;
}

void ScaleLadder::validate(double h) const {
  if (epsilons.empty()) throw InvalidArgument("empty scale ladder");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw InvalidArgument("ladder radii must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) throw InvalidArgument("ladder must be strictly decreasing");
  }
  if (finest() < floor_ratio * h * (1.0 - 1e-12))
    throw ScaleError("finest ladder radius " + std::to_string(finest()) + " is below " + std::to_string(floor_ratio) +
                     " grid cells");
}

bool NeighborhoodComponent::contains(Point y, double tol) const {
  if (tol < 0.0) tol = glue_tol;
  for (const auto& p : pieces) {
    const auto& v = p.line.vertices;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (point_segment_distance(y, v[i], v[i + 1]) <= tol) return true;
  }
  return false;
}

double NeighborhoodComponent::max_distance_from_center() const {
  double m = 0.0;
  for (const auto& p : pieces)
    for (const auto& v : p.line.vertices) m = std::max(m, distance(v, center));
  return m;
}

NeighborhoodComponent neighborhood_component(const CurveComplex& complex, Point x, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const double tol = complex.glue_tol();
  if (complex.distance_to(x) > tol) throw NotOnSet("point is not on the set");
  NeighborhoodComponent out{x, eps, tol, {}};
  auto clipped = clip_to_disc(complex, Disc{x, eps});
  const auto lines = lines_of(clipped);
  const auto blocks = piece_components(lines, tol);
  for (const auto& block : blocks) {
    bool has_x = false;
    for (std::size_t i : block) {
      const auto& v = lines[i].vertices;
      for (std::size_t s = 0; s + 1 < v.size() && !has_x; ++s) has_x = point_segment_distance(x, v[s], v[s + 1]) <= tol;
      if (has_x) break;
    }
    if (!has_x) continue;
    for (std::size_t i : block) out.pieces.push_back(std::move(clipped[i]));
    break;
  }
  return out;
}

}  // namespace dset

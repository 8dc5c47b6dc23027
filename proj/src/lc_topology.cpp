#include "dset/lc_topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dset/clip.hpp"
#include "dset/connectivity.hpp"
#include "dset/errors.hpp"
#include "parallel.hpp"

namespace dset {

namespace {

// Points sorted by x for range lookups.
struct SortedPoints {
  std::vector<Point> pts;
  explicit SortedPoints(std::span<const Point> in) : pts(in.begin(), in.end()) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  }
  template <class Fn>
  bool any_near(Point c, double r, Fn fn) const {
    auto it = std::lower_bound(pts.begin(), pts.end(), c.x - r, [](Point p, double v) { return p.x < v; });
    for (; it != pts.end() && it->x <= c.x + r; ++it)
      if (distance(*it, c) < r && fn(*it)) return true;
    return false;
  }
};

// One pass over (sample, eps) for several subsets at once.
std::vector<DensityVerdict> density_many(const CurveComplex& complex, const std::vector<std::vector<Point>>& subsets,
                                         const std::vector<std::string>& names, const ScaleLadder& ladder,
                                         std::span<const Point> samples) {
  std::vector<SortedPoints> sorted;
  for (const auto& s : subsets) sorted.emplace_back(s);
  const std::size_t m = subsets.size();
  // fail[i][k][j]: sample i, scale k, subset j
  std::vector<std::vector<std::vector<char>>> fail(samples.size());
  detail::parallel_for(samples.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      fail[i].assign(ladder.size(), std::vector<char>(m, 0));
      const Point x = samples[i];
      if (complex.distance_to(x) > complex.glue_tol()) continue;
      const double tol = complex.glue_tol();
      // x lies in its own component, so x in R settles every scale.
      std::vector<char> settled(m, 0);
      bool all_settled = true;
      for (std::size_t j = 0; j < m; ++j) {
        settled[j] = sorted[j].any_near(x, tol * (1.0 + 1e-9), [](Point) { return true; });
        all_settled = all_settled && settled[j];
      }
      if (all_settled) continue;
      for (std::size_t k = 0; k < ladder.size(); ++k) {
        const double eps = ladder.epsilons[k];
        const auto comp = neighborhood_component(complex, x, eps);
        const auto lines = lines_of(comp.pieces);
        const SegmentIndex index(lines);
        auto member = [&](Point r) {
          for (const auto& ref : index.query(Rect{r.x, r.y, r.x, r.y}.inflated(tol))) {
            const auto& v = lines[ref.piece].vertices;
            if (point_segment_distance(r, v[ref.segment], v[ref.segment + 1]) <= tol) return true;
          }
          return false;
        };
        for (std::size_t j = 0; j < m; ++j)
          if (!settled[j]) fail[i][k][j] = !sorted[j].any_near(x, eps, member);
      }
    }
  });
  std::vector<DensityVerdict> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j].subset_name = names[j];
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t k = 0; k < fail[i].size(); ++k)
      for (std::size_t j = 0; j < m; ++j)
        if (fail[i][k][j]) out[j].witnesses.push_back({samples[i], ladder.epsilons[k]});
  for (auto& v : out) v.pass = v.witnesses.empty();
  return out;
}

void require_two_sided(const ComplementDecomposition& decomp) {
  if (decomp.domain_count() != 2) throw NotTwoSided(static_cast<int>(decomp.domain_count()));
}

std::vector<Point> accessible_points(std::span<const AccessRecord> records, int domain_id) {
  std::vector<Point> out;
  for (const auto& r : records)
    if (r.accessible_from(domain_id)) out.push_back(r.point);
  return out;
}

std::vector<Point> points_of(std::span<const AccessRecord> records) {
  std::vector<Point> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.point);
  return out;
}

}  // namespace

DensityVerdict is_sufficiently_dense(const CurveComplex& complex, std::span<const Point> R, const ScaleLadder& ladder,
                                     std::span<const Point> samples, std::string subset_name) {
  return density_many(complex, {std::vector<Point>(R.begin(), R.end())}, {std::move(subset_name)}, ladder, samples)[0];
}

DSetResult d_set_check(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp,
                       const ScaleLadder& ladder, std::span<const Point> samples, double probe_radius) {
  require_two_sided(decomp);
  const auto records = access_map(complex, grid, decomp, samples, probe_radius);
  return d_set_check(complex, decomp, ladder, records);
}

DSetResult d_set_check(const CurveComplex& complex, const ComplementDecomposition& decomp, const ScaleLadder& ladder,
                       std::span<const AccessRecord> records) {
  require_two_sided(decomp);
  DSetResult out;
  out.first_domain = decomp.domains[0].id;
  out.second_domain = decomp.domains[1].id;
  const auto samples = points_of(records);
  auto v = density_many(complex,
                        {accessible_points(records, out.first_domain), accessible_points(records, out.second_domain)},
                        {"A_" + std::to_string(out.first_domain), "A_" + std::to_string(out.second_domain)}, ladder,
                        samples);
  out.first = std::move(v[0]);
  out.second = std::move(v[1]);
  for (double eps : ladder.epsilons) {
    ScaleDetail d{eps, 0, 0};
    for (const auto& w : out.first.witnesses) d.failures_first += w.eps == eps;
    for (const auto& w : out.second.witnesses) d.failures_second += w.eps == eps;
    out.per_eps.push_back(d);
  }
  out.verdict = out.first.pass && out.second.pass;
  return out;
}

SimpleSetResult simple_set_check(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp,
                                 std::span<const Point> samples, double probe_radius) {
  require_two_sided(decomp);
  const auto records = access_map(complex, grid, decomp, samples, probe_radius);
  return simple_set_check(complex, grid, decomp, records);
}

SimpleSetResult simple_set_check(const CurveComplex& complex, const Grid& grid, const ComplementDecomposition& decomp,
                                 std::span<const AccessRecord> records) {
  require_two_sided(decomp);
  SimpleSetResult out;
  out.resolution = std::max(2.0 * grid.spacing(), complex.glue_tol());
  const int d1 = decomp.domains[0].id, d2 = decomp.domains[1].id;
  const SortedPoints a1(accessible_points(records, d1)), a2(accessible_points(records, d2));
  // Closed ball of radius `resolution`: widen the strict lookup by a hair.
  const double r = out.resolution * (1.0 + 1e-9);
  for (const auto& rec : records) {
    auto yes = [](Point) { return true; };
    if (!a1.any_near(rec.point, r, yes)) out.gaps_first.push_back(rec.point);
    if (!a2.any_near(rec.point, r, yes)) out.gaps_second.push_back(rec.point);
  }
  out.dense_first = out.gaps_first.empty();
  out.dense_second = out.gaps_second.empty();
  const auto f1 = frontier_cells(grid, decomp, d1, kBandReachCells);
  const auto f2 = frontier_cells(grid, decomp, d2, kBandReachCells);
  out.frontier_first = f1.size();
  out.frontier_second = f2.size();
  out.k_cells = grid.k_count();
  out.frontier_equal = f1 == f2 && f1.size() == out.k_cells;
  out.verdict = out.dense_first && out.dense_second && out.frontier_equal;
  return out;
}

bool zero_dim_at_scale(std::span<const Point> B, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  const auto part = epsilon_components(B, delta);
  for (const auto& block : part.blocks)
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j)
        if (distance(B[block[i]], B[block[j]]) >= delta) return false;
  return true;
}

SandwichResult sandwich_check(const CurveComplex& complex, Point x, double eps, std::span<const Point> samples,
                              std::size_t node_budget) {
  return sandwich_check(complex, VertexGraph(complex), x, eps, samples, node_budget);
}

SandwichResult sandwich_check(const CurveComplex& complex, const VertexGraph& graph, Point x, double eps,
                              std::span<const Point> samples, std::size_t node_budget) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  SandwichResult out;
  out.x = x;
  out.eps = eps;
  const auto comp = neighborhood_component(complex, x, eps);
  // Beyond |x - y| >= eps both implications are vacuous: rho_r >= |x - y| and members lie inside U_eps(x).
  std::vector<Point> near;
  for (const Point& y : samples)
    if (distance(x, y) < eps) near.push_back(y);
  std::vector<SandwichWitness> found(near.size());
  graph.component();  // fill the lazy cache before the workers share the graph
  detail::parallel_for(near.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      SandwichWitness w{near[i], {}, comp.contains(near[i]), {}};
      try {
        w.bracket = relative_distance(complex, graph, x, near[i], node_budget);
      } catch (const Disconnected&) {
        w.bracket = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), true, 0};
      }
      found[i] = std::move(w);
    }
  });
  for (auto& w : found) {
    ++out.checked;
    if (!w.bracket.exact) ++out.inexact;
    const double rho = distance(x, w.y);
    if (w.bracket.exact && rho > 0.0 && std::isfinite(w.bracket.hi)) out.max_ratio = std::max(out.max_ratio, w.bracket.hi / rho);
    if (w.bracket.hi < eps / 3.0 && !w.member)
      w.violation = "relative distance below eps/3 outside the component";
    else if (w.member && !(w.bracket.lo < 3.0 * eps))
      w.violation = "component member with relative distance at least 3 eps";
    if (!w.violation.empty()) out.witnesses.push_back(std::move(w));
  }
  out.pass = out.witnesses.empty();
  return out;
}

std::size_t density_lower_bound(const CurveComplex& complex, const Rect& window) {
  const auto clipped = clip_to_rect(complex, window);
  if (clipped.empty()) return 0;
  return piece_components(lines_of(clipped), complex.glue_tol()).size();
}

}  // namespace dset

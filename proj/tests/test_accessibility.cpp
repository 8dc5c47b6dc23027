#include <doctest.h>

#include <random>
#include <set>

#include "dset/accessibility.hpp"
#include "dset/classifier.hpp"
#include "dset/errors.hpp"
#include "dset/fixtures.hpp"
#include "oracles.hpp"

using namespace dset;

namespace {

struct Scene {
  CurveComplex k;
  Grid grid;
  ComplementDecomposition decomp;
  int bounded = 0;
  int unbounded = 0;
};

Scene scene(const char* spec, double h, double step = 0.0) {
  Scene s{make_fixture(parse_fixture(spec), step > 0 ? step : h), {}, {}};
  s.grid = rasterize(s.k, h);
  s.decomp = complement_components(s.grid);
  s.unbounded = s.decomp.unbounded_id();
  for (const auto& d : s.decomp.domains)
    if (!d.unbounded) s.bounded = d.id;
  return s;
}

// Independent check of an end-cut: the hop from x meets no segment of the complex (brute force) and
// crosses only K cells and cells of its own domain; the rest stays in domain cells at quarter-cell sampling.
bool end_cut_oracle(const Scene& s, const EndCut& ec) {
  const auto& v = ec.path.vertices;
  if (v.size() < 2 || v.front() != ec.target || !is_simple(ec.path)) return false;
  const double h = s.grid.spacing();
  const Point start = lerp(v[0], v[1], 1e-3 * h / distance(v[0], v[1]));
  for (const auto& piece : s.k.pieces())
    for (std::size_t i = 0; i + 1 < piece.vertices.size(); ++i)
      if (segments_intersect(start, v[1], piece.vertices[i], piece.vertices[i + 1])) return false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const int n = static_cast<int>(std::ceil(4.0 * distance(v[i], v[i + 1]) / h)) + 1;
    for (int j = 0; j <= n; ++j) {
      const Point p = lerp(v[i], v[i + 1], static_cast<double>(j) / n);
      if (i == 0 && j == 0) continue;
      const std::size_t c = s.grid.index(s.grid.locate(p));
      const int lab = s.decomp.label(c);
      if (i == 0 ? (lab != 0 && lab != ec.domain_id) : lab != ec.domain_id) return false;
    }
  }
  return true;
}

std::vector<Point> circle_points(int n, double r = 1.0) {
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * 3.141592653589793 * (i + 0.5) / n;
    out.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return out;
}

// Teeth of comb_arc(n) reachable from each side, by gap parity.
struct ToothSides {
  bool bounded = false;
  bool unbounded = false;
};
std::vector<ToothSides> tooth_sides(int n) {
  const std::size_t t = std::size_t{1} << n;
  std::vector<ToothSides> out(t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t gap : {i, i + 1}) {
      if (gap == 0 || gap == t) {
        out[i].unbounded = true;  // outer flank
        continue;
      }
      (oracle::gap_opens_to_bounded(comb_gap_generation(n, gap)) ? out[i].bounded : out[i].unbounded) = true;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("find_end_cut on the circle") {
  const auto s = scene("circle:1", 0.005);
  for (int dom : {s.bounded, s.unbounded}) {
    const auto ec = find_end_cut(s.k, s.grid, s.decomp, {0, 1}, dom, 0.05);
    REQUIRE(ec);
    CHECK(ec->domain_id == dom);
    CHECK(end_cut_oracle(s, *ec));
    CHECK(validate_end_cut(s.k, s.grid, s.decomp, *ec));
    // the deep end reaches the probe radius
    CHECK(distance(ec->path.vertices.back(), ec->target) >= 0.05);
  }
  CHECK_THROWS_AS(find_end_cut(s.k, s.grid, s.decomp, {0.5, 0.5}, s.bounded, 0.05), NotOnSet);
  CHECK_THROWS_AS(find_end_cut(s.k, s.grid, s.decomp, {0, 1}, 99, 0.05), UnknownDomain);
  CHECK_THROWS_AS(find_end_cut(s.k, s.grid, s.decomp, {0, 1}, s.bounded, 0.001), InvalidArgument);
}

TEST_CASE("accessible_set on the circle: every sample from both sides") {
  const auto s = scene("circle:1", 0.005);
  const auto pts = circle_points(100);
  for (int dom : {s.bounded, s.unbounded}) {
    const auto recs = accessible_set(s.k, s.grid, s.decomp, dom, pts, 0.05);
    REQUIRE(recs.size() == 100);
    for (const auto& r : recs) {
      REQUIRE(r.accessible_from(dom));
      CHECK(end_cut_oracle(s, *r.find(dom)->witness));
    }
  }
}

TEST_CASE("circle_with_dots: each dot from exactly its own domain") {
  const auto s = scene("circle_with_dots:1", 0.005);
  // which domain surrounds each dot, by the cell label just beside it
  for (Point dot : {Point{0, 0}, Point{1.5, 0}}) {
    const int around = s.decomp.label(s.grid.index(s.grid.locate({dot.x, dot.y + 0.05})));
    REQUIRE(around != 0);
    for (int dom : {s.bounded, s.unbounded}) {
      const auto ec = find_end_cut(s.k, s.grid, s.decomp, dot, dom, 0.05);
      CHECK(ec.has_value() == (dom == around));
      if (ec) CHECK(end_cut_oracle(s, *ec));
    }
    // exhaustive: no cell of the other domain within 0.4 of the dot, so nothing can reach it
    const int other = around == s.bounded ? s.unbounded : s.bounded;
    bool near_other = false;
    for (std::size_t i = 0; i < s.grid.size(); ++i)
      near_other = near_other || (s.decomp.label(i) == other && distance(s.grid.center(i), dot) < 0.4);
    CHECK_FALSE(near_other);
  }
  // the dot inside is the bounded one
  CHECK_FALSE(find_end_cut(s.k, s.grid, s.decomp, {0, 0}, s.unbounded, 0.05).has_value());
}

TEST_CASE("comb_arc teeth follow the gap parity map") {
  for (int n : {3, 4}) {
    CAPTURE(n);
    const auto s = scene(("comb_arc:" + std::to_string(n)).c_str(), 0.005);
    REQUIRE(s.decomp.domain_count() == 2);
    const auto teeth = comb_teeth(n);
    const auto sides = tooth_sides(n);
    std::vector<Point> mids;
    for (double t : teeth) mids.push_back({t, 0.5});
    const auto recs = access_map(s.k, s.grid, s.decomp, mids, 0.05);
    for (std::size_t i = 0; i < teeth.size(); ++i) {
      CAPTURE(i);
      CHECK(recs[i].accessible_from(s.bounded) == sides[i].bounded);
      CHECK(recs[i].accessible_from(s.unbounded) == sides[i].unbounded);
    }
  }
}

TEST_CASE("loop erasure") {
  const Cell a{0, 0}, b{0, 1}, c{1, 1}, d{0, 2};
  CHECK(loop_erase({a, b, c, b, d}) == std::vector<Cell>{a, b, d});
  CHECK(loop_erase({a, b, c, d}) == std::vector<Cell>{a, b, c, d});
  CHECK(loop_erase({a, b, a}) == std::vector<Cell>{a});

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Cell> walk{{0, 0}};
    while (walk.back() != Cell{19, 19}) {
      Cell n = walk.back();
      switch (rng() % 4) {
        case 0: n.row = std::min(19, n.row + 1); break;
        case 1: n.col = std::min(19, n.col + 1); break;
        case 2: n.row = std::max(0, n.row - 1); break;
        default: n.col = std::max(0, n.col - 1); break;
      }
      if (n != walk.back()) walk.push_back(n);
    }
    const auto out = loop_erase(walk);
    CHECK(out.front() == walk.front());
    CHECK(out.back() == walk.back());
    CHECK(std::set<Cell>(out.begin(), out.end()).size() == out.size());
    const std::set<Cell> in(walk.begin(), walk.end());
    for (const Cell& c2 : out) CHECK(in.count(c2) == 1);
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
      CHECK(std::abs(out[i].row - out[i + 1].row) + std::abs(out[i].col - out[i + 1].col) == 1);
  }
}

TEST_CASE("cross-cut on the circle") {
  const auto s = scene("circle:1", 0.005);
  const Point x{1, 0};
  const double eps = 0.2, eps1 = 0.3;
  const auto e1 = find_end_cut(s.k, s.grid, s.decomp, s.k.project({std::cos(0.1), std::sin(0.1)}), s.bounded, 0.05);
  const auto e2 = find_end_cut(s.k, s.grid, s.decomp, s.k.project({std::cos(-0.12), std::sin(-0.12)}), s.bounded, 0.05);
  REQUIRE(e1);
  REQUIRE(e2);
  const auto cc = build_cross_cut(s.grid, s.decomp, x, eps, eps1, *e1, *e2);
  const auto& v = cc.path.vertices;
  CHECK(v.front() == e1->target);
  CHECK(v.back() == e2->target);
  CHECK(is_simple(cc.path));
  CHECK(validate_cross_cut(s.k, s.grid, s.decomp, cc));
  for (const Point& p : v) CHECK(distance(p, x) < eps1);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) CHECK(s.decomp.label(s.grid.index(s.grid.locate(v[i]))) == s.bounded);
  // starts and ends with the hop segments of both end-cuts
  CHECK(v[1] == e1->path.vertices[1]);
  CHECK(v[v.size() - 2] == e2->path.vertices[1]);

  CHECK_THROWS_AS(build_cross_cut(s.grid, s.decomp, x, eps, eps, *e1, *e2), InvalidArgument);
  CHECK_THROWS_AS(build_cross_cut(s.grid, s.decomp, x, eps, 0.1, *e1, *e2), InvalidArgument);
  const auto other = find_end_cut(s.k, s.grid, s.decomp, e2->target, s.unbounded, 0.05);
  CHECK_THROWS_AS(build_cross_cut(s.grid, s.decomp, x, eps, eps1, *e1, *other), InvalidArgument);
}

TEST_CASE("posc(6) cross-cut near the closing segment needs the finer grid") {
  const auto k = make_fixture(parse_fixture("posc:6"), 0.0025);
  const Point x{1.0 / 6.0, 0.0};
  const Point y1 = k.project({0.1727, -0.0950}), y2 = k.project({0.1706, 0.0850});
  auto attempt = [&](double h) {
    const auto g = rasterize(k, h);
    const auto d = complement_components(g);
    REQUIRE(d.domain_count() == 2);
    const int bounded = d.domains[0].unbounded ? d.domains[1].id : d.domains[0].id;
    const auto e1 = find_end_cut(k, g, d, y1, bounded, 0.05), e2 = find_end_cut(k, g, d, y2, bounded, 0.05);
    REQUIRE(e1);
    REQUIRE(e2);
    return build_cross_cut(g, d, x, 0.1, 0.2, *e1, *e2);
  };
  CHECK_THROWS_AS(attempt(0.005), NoConnection);
  CHECK_NOTHROW(attempt(0.0025));
}

TEST_CASE("synthesize on the circle") {
  const auto s = scene("circle:1", 0.005);
  ScaleLadder ladder{{0.4, 0.2, 0.1, 0.05}};
  // directly accessible: find's result comes back unchanged
  const auto direct = synthesize_end_cut(s.k, s.grid, s.decomp, {0, 1}, s.bounded, ladder);
  const auto found = find_end_cut(s.k, s.grid, s.decomp, {0, 1}, s.bounded, kDefaultProbeCells * 0.005);
  REQUIRE(found);
  CHECK(direct.path.vertices == found->path.vertices);

  const auto ec = synthesize_end_cut(s.k, s.grid, s.decomp, {0, 1}, s.bounded, ladder, {0.0, true});
  CHECK(end_cut_oracle(s, ec));
  CHECK(validate_end_cut(s.k, s.grid, s.decomp, ec));
  CHECK(distance(ec.path.vertices[1], ec.target) < ladder.finest());
  CHECK(ec.scale == ladder.finest());
  // the far end leaves the finest disc: the construction joins picks from every scale
  double far = 0.0;
  for (const Point& p : ec.path.vertices) far = std::max(far, distance(p, ec.target));
  CHECK(far > ladder.epsilons[1] / 2);

  CHECK_THROWS_AS(synthesize_end_cut(s.k, s.grid, s.decomp, {0, 1}, s.bounded, ScaleLadder{{0.4, 0.2}}),
                  InvalidArgument);
  CHECK_THROWS_AS(synthesize_end_cut(s.k, s.grid, s.decomp, {0, 1}, s.bounded, ScaleLadder{{0.4, 0.2, 0.01}}),
                  ScaleError);
}

TEST_CASE("synthesize on blocked comb_arc(3) teeth") {
  const auto s = scene("comb_arc:3", 0.005);
  const auto teeth = comb_teeth(3);
  const auto sides = tooth_sides(3);
  ScaleLadder ladder{{0.8, 0.4, 0.2, 0.1, 0.05}};
  for (std::size_t i = 0; i < teeth.size(); ++i) {
    CAPTURE(i);
    const Point mid{teeth[i], 0.5};
    for (int dom : {s.bounded, s.unbounded}) {
      const bool reachable = dom == s.bounded ? sides[i].bounded : sides[i].unbounded;
      if (reachable) {
        CHECK(end_cut_oracle(s, synthesize_end_cut(s.k, s.grid, s.decomp, mid, dom, ladder, {0.0, true})));
        continue;
      }
      // the component shrinks to the bare tooth once eps drops below half its length
      double expected = 0.0;
      for (double e : ladder.epsilons)
        if (e < 0.5) {
          expected = e;
          break;
        }
      try {
        synthesize_end_cut(s.k, s.grid, s.decomp, mid, dom, ladder);
        FAIL("expected HypothesisFailed");
      } catch (const HypothesisFailed& e) {
        CHECK(e.eps() == expected);
      }
    }
  }
}

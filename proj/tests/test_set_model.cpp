#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dset/clip.hpp"
#include "dset/errors.hpp"
#include "dset/fixtures.hpp"
#include "dset/io.hpp"
#include "oracles.hpp"

using namespace dset;

namespace {
Polyline line(std::vector<Point> v) { return Polyline{std::move(v), false}; }
}  // namespace

TEST_CASE("build_complex stores pieces as given") {
  const auto sq = line({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}});
  const auto k = build_complex({sq}, 1e-6);
  CHECK(k.pieces().size() == 1);
  CHECK(k.bbox().xmin == 0.0);
  CHECK(k.bbox().xmax == 1.0);
  CHECK(k.bbox().ymin == 0.0);
  CHECK(k.bbox().ymax == 1.0);
  CHECK(k.piece(0).closed());

  CHECK_THROWS_AS(build_complex({}, 1e-6), EmptyComplex);
  CHECK_THROWS_AS(build_complex({line({{0, 0}, {0, 0}})}, 1e-6), DegeneratePiece);
  CHECK_THROWS_AS(build_complex({sq}, 0.0), InvalidArgument);

  // shared endpoint: no merging at storage time
  const auto two = build_complex({line({{0, 0}, {1, 0}}), line({{1, 0}, {1, 1}})}, 1e-6);
  CHECK(two.pieces().size() == 2);
}

TEST_CASE("segment primitives") {
  CHECK(point_segment_distance({0.5, 1}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(point_segment_distance({2, 0}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(segments_intersect({0, 0}, {1, 1}, {0, 1}, {1, 0}));
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  CHECK(segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 5}));  // touching endpoint
  CHECK(segment_segment_distance({0, 0}, {1, 0}, {0, 2}, {1, 2}) == doctest::Approx(2.0));
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);

  CHECK(is_simple(line({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}})));
  CHECK_FALSE(is_simple(line({{0, 0}, {1, 1}, {1, 0}, {0, 1}})));  // bow tie
  CHECK(line({{0, 0}, {3, 4}}).length() == doctest::Approx(5.0));
}

TEST_CASE("projection and hits on the complex") {
  const auto k = build_complex({line({{0, 0}, {2, 0}})}, 1e-6);
  SegmentRef r;
  const Point p = k.project({1, 0.5}, &r);
  CHECK(p.x == doctest::Approx(1.0));
  CHECK(p.y == doctest::Approx(0.0));
  CHECK(k.distance_to({3, 0}) == doctest::Approx(1.0));
  CHECK(k.segment_hits({1, 1}, {1, -1}, 1e-9));
  CHECK_FALSE(k.segment_hits({1, 0}, {1, 1}, 1e-3));  // only touches at the excluded start
}

TEST_CASE("circle fixture sampling") {
  const auto k = make_fixture(parse_fixture("circle:1"), 0.01);
  REQUIRE(k.pieces().size() == 1);
  const auto& v = k.piece(0).vertices;
  CHECK(k.piece(0).closed());
  CHECK(v.size() > 600);
  CHECK(v.size() < 660);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    CHECK(distance(v[i], v[i + 1]) <= 0.01 + 1e-12);
    // chord error: distance from the analytic circle at the segment midpoint
    const Point m = lerp(v[i], v[i + 1], 0.5);
    worst = std::max({worst, std::abs(norm(m) - 1.0), std::abs(norm(v[i]) - 1.0)});
  }
  CHECK(worst < 0.01);
  CHECK(k.glue_tol() == doctest::Approx(1e-6 * k.bbox().diagonal()));
}

TEST_CASE("comb fixtures") {
  const auto t1 = comb_teeth(1);
  REQUIRE(t1.size() == 2);
  CHECK(t1[0] == 0.0);
  CHECK(t1[1] == 1.0);
  const auto c1 = make_fixture(parse_fixture("comb:1"), 0.01);
  CHECK(c1.pieces().size() == 3);  // 2 teeth + 1 bar

  for (int n = 1; n <= 6; ++n) {
    const auto teeth = comb_teeth(n);
    CHECK(teeth.size() == (std::size_t{1} << n));
    CHECK(std::is_sorted(teeth.begin(), teeth.end()));
    for (double t : teeth) CHECK(std::ldexp(t, 3 * n) == std::floor(std::ldexp(t, 3 * n)));  // dyadic
    const auto k = make_fixture(parse_fixture("comb_arc:" + std::to_string(n)), comb_min_spacing(n) / 4);
    // teeth + bars between consecutive teeth + arc
    CHECK(k.pieces().size() == (std::size_t{1} << n) + ((std::size_t{1} << n) - 1) + 1);
  }
  // gap generations: the middle gap is generation 1, the next level 2, ...
  CHECK(comb_gap_generation(3, 4) == 1);
  CHECK(comb_gap_generation(3, 2) == 2);
  CHECK(comb_gap_generation(3, 6) == 2);
  CHECK(comb_gap_generation(3, 1) == 3);
}

TEST_CASE("posc fixture") {
  const auto k = make_fixture(parse_fixture("posc:4"), 0.005);
  REQUIRE(k.pieces().size() == 1);
  const auto& p = k.piece(0);
  CHECK(p.closed());
  // every vertex off the closing segment lies on one of the two strands
  for (const Point& v : p.vertices) {
    if (v.x <= 0.25 + 1e-12) continue;
    const double lo = std::sin(std::numbers::pi / v.x) - std::sin(std::numbers::pi * v.x);
    const double hi = std::sin(std::numbers::pi / v.x) + std::sin(std::numbers::pi * v.x);
    CHECK(std::min(std::abs(v.y - lo), std::abs(v.y - hi)) < 1e-9);
  }
  CHECK_THROWS_AS(make_fixture(parse_fixture("posc:2"), 1.0), UnresolvableScale);
}

TEST_CASE("fixture spec parsing") {
  CHECK(parse_fixture("comb_arc:4").id() == "comb_arc:4");
  CHECK(parse_fixture("circle").id() == "circle:1");
  CHECK(parse_fixture("circle:1.0").size == 1.0);
  CHECK_THROWS_AS(parse_fixture("comb_arc:0"), ParseError);
  CHECK_THROWS_AS(parse_fixture("nope"), ParseError);
  CHECK_THROWS_AS(parse_fixture("posc:x"), ParseError);
}

TEST_CASE("clip_to_disc") {
  const auto seg = build_complex({line({{-3, 0}, {3, 0}})}, 1e-6);
  auto c = clip_to_disc(seg, {{0, 0}, 1.0});
  REQUIRE(c.size() == 1);
  CHECK(c[0].line.length() == doctest::Approx(2.0));
  CHECK(clip_to_disc(seg, {{0, 5}, 1.0}).empty());

  const auto circ = make_fixture(parse_fixture("circle:1"), 0.002);
  for (double eps : {0.1, 0.3, 0.7}) {
    const auto arc = clip_to_disc(circ, {{1, 0}, eps});
    // the run wraps through the closing joint but stays one piece
    REQUIRE(arc.size() == 1);
    CHECK(arc[0].line.length() == doctest::Approx(oracle::circle_arc_in_disc(1.0, eps)).epsilon(1e-4));
  }
}

TEST_CASE("clip_to_rect keeps only the inside") {
  const auto k = make_fixture(parse_fixture("comb:3"), 0.01);
  const auto c = clip_to_rect(k, {-1, 0.25, 2, 0.75});
  CHECK(c.size() == 8);
  for (const auto& p : c) CHECK(p.line.length() == doctest::Approx(0.5));
}

TEST_CASE("complex JSON round trip") {
  const auto k = make_fixture(parse_fixture("comb_arc:3"), 0.01);
  const auto back = complex_from_json(nlohmann::json::parse(complex_to_json(k).dump()));
  REQUIRE(back.pieces().size() == k.pieces().size());
  CHECK(back.glue_tol() == k.glue_tol());
  for (std::size_t i = 0; i < k.pieces().size(); ++i) CHECK(back.piece(i).vertices == k.piece(i).vertices);
  CHECK_THROWS_AS(complex_from_json(nlohmann::json::parse(R"({"pieces": 3})")), ParseError);
  CHECK_THROWS_AS(read_complex("/nonexistent/file.json"), ParseError);
}

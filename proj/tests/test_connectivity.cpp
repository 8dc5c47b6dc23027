#include <doctest.h>

#include <random>

#include "dset/clip.hpp"
#include "dset/connectivity.hpp"
#include "dset/errors.hpp"
#include "dset/fixtures.hpp"
#include "oracles.hpp"

using namespace dset;

namespace {

// Blocks of pieces by transitive closure of brute-force pairwise segment distance <= tol.
std::vector<std::vector<std::size_t>> pairwise_blocks(const std::vector<Polyline>& pieces, double tol) {
  const std::size_t n = pieces.size();
  std::vector<std::vector<char>> touch(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& a = pieces[i].vertices;
      const auto& b = pieces[j].vertices;
      bool t = false;
      for (std::size_t s = 0; s + 1 < a.size() && !t; ++s)
        for (std::size_t u = 0; u + 1 < b.size() && !t; ++u) t = segment_segment_distance(a[s], a[s + 1], b[u], b[u + 1]) <= tol;
      touch[i][j] = touch[j][i] = t;
    }
  std::vector<int> label(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::vector<std::size_t> block{s};
    label[s] = 1;
    for (std::size_t k = 0; k < block.size(); ++k)
      for (std::size_t j = 0; j < n; ++j)
        if (label[j] < 0 && touch[block[k]][j]) {
          label[j] = 1;
          block.push_back(j);
        }
    std::sort(block.begin(), block.end());
    out.push_back(block);
  }
  return out;
}

}  // namespace

TEST_CASE("union find") {
  UnionFind uf(6);
  CHECK(uf.unite(0, 3));
  CHECK(uf.unite(3, 5));
  CHECK_FALSE(uf.unite(0, 5));
  CHECK(uf.find(5) == uf.find(0));
  const auto b = uf.blocks();
  REQUIRE(b.size() == 4);
  CHECK(b[0] == std::vector<std::size_t>{0, 3, 5});
  CHECK(b[1] == std::vector<std::size_t>{1});
}

TEST_CASE("piece components by gluing tolerance") {
  const double tol = 1e-6;
  std::vector<Polyline> shared{{{{0, 0}, {1, 0}}}, {{{1, 0}, {1, 1}}}};
  CHECK(piece_components(shared, tol).size() == 1);
  std::vector<Polyline> parallel{{{{0, 0}, {1, 0}}}, {{{0, 10 * tol}, {1, 10 * tol}}}};
  CHECK(piece_components(parallel, tol).size() == 2);
  std::vector<Polyline> crossing{{{{0, 0}, {1, 1}}}, {{{0, 1}, {1, 0}}}, {{{5, 5}, {6, 6}}}};
  CHECK(piece_components(crossing, tol) == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
}

TEST_CASE("posc(8) near the closing segment agrees with the pairwise distance matrix") {
  const auto k = make_fixture(parse_fixture("posc:8"), 0.005);
  const auto& v = k.piece(0).vertices;
  // closing segment is the last one: from K3(1/8) back to K2(1/8)
  const Point mid = lerp(v[v.size() - 2], v.back(), 0.5);
  const auto lines = lines_of(clip_to_disc(k, {mid, 0.3}));
  const auto blocks = piece_components(lines, k.glue_tol());
  CHECK(blocks == pairwise_blocks(lines, k.glue_tol()));
  // exactly one block reaches the closing segment x = 1/8; the rest are strand passes off it
  std::size_t on_closing = 0;
  for (const auto& b : blocks) {
    bool hit = false;
    for (std::size_t i : b)
      for (const Point& p : lines[i].vertices) hit = hit || std::abs(p.x - 0.125) < 1e-12;
    on_closing += hit;
  }
  CHECK(on_closing == 1);
  CHECK(blocks.size() > 1);
}

TEST_CASE("epsilon components") {
  std::vector<Point> line;
  for (int i = 0; i < 10; ++i) line.push_back({0.5 * i, 0});
  CHECK(epsilon_components(line, 0.6).blocks.size() == 1);
  CHECK(epsilon_components(line, 0.4).blocks.size() == 10);
  CHECK(epsilon_components(line, 0.5).blocks.size() == 10);  // strict inequality
  CHECK_THROWS_AS(epsilon_components(line, 0.0), InvalidArgument);
}

TEST_CASE("epsilon components equal single linkage on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Point> pts(200);
    for (auto& p : pts) p = {u(rng), u(rng)};
    for (double eps : {0.05, 0.1, 0.2}) {
      auto got = epsilon_components(pts, eps).blocks;
      for (auto& b : got) std::sort(b.begin(), b.end());
      std::sort(got.begin(), got.end());
      auto want = oracle::single_linkage(pts, eps);
      std::sort(want.begin(), want.end());
      CHECK(got == want);
    }
  }
}

TEST_CASE("two-sidedness") {
  ComplementDecomposition d;
  d.domains = {{1, 10, true}, {2, 5, false}};
  CHECK(is_two_sided(d));
  d.domains.push_back({3, 5, false});
  CHECK_FALSE(is_two_sided(d));
  d.domains = {{1, 10, true}};
  CHECK_FALSE(is_two_sided(d));
}

#include "dset/classifier.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <random>
#include <unordered_map>

#include <json.hpp>

#include "dset/connectivity.hpp"
#include "dset/errors.hpp"
#include "dset/relative_distance.hpp"

namespace dset {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::False:
      return "false";
    case Verdict::True:
      return "true";
    case Verdict::NotApplicable:
      break;
  }
  return "not_applicable";
}

std::vector<Point> sample_complex(const CurveComplex& complex, double spacing) {
  if (!(spacing > 0.0)) throw InvalidArgument("sample spacing must be positive");
  const double tol = complex.glue_tol();
  struct KeyHash {
    std::size_t operator()(const std::pair<long long, long long>& k) const {
      return std::hash<long long>()(k.first * 73856093LL ^ k.second * 19349663LL);
    }
  };
  std::unordered_map<std::pair<long long, long long>, std::vector<Point>, KeyHash> earlier;
  auto key = [tol](Point p) {
    return std::pair<long long, long long>{static_cast<long long>(std::floor(p.x / tol)),
                                           static_cast<long long>(std::floor(p.y / tol))};
  };
  auto taken = [&](Point p) {
    const auto [kx, ky] = key(p);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = earlier.find({kx + dx, ky + dy});
        if (it == earlier.end()) continue;
        for (const Point& q : it->second)
          if (distance(p, q) <= tol) return true;
      }
    return false;
  };

  std::vector<Point> out;
  for (const auto& piece : complex.pieces()) {
    const double len = piece.length();
    const long long k = std::max(1LL, std::llround(len / spacing));
    const long long last = piece.closed() ? k - 1 : k;
    std::vector<Point> mine;
    for (long long i = 0; i <= last; ++i) {
      const Point p = piece.at_length(len * static_cast<double>(i) / static_cast<double>(k));
      if (taken(p)) continue;
      mine.push_back(p);
    }
    for (const Point& p : mine) earlier[key(p)].push_back(p);
    out.insert(out.end(), mine.begin(), mine.end());
  }
  return out;
}

bool is_discrete_jordan(const CurveComplex& complex) {
  const VertexGraph g(complex);
  const double tol = complex.glue_tol() * (1.0 + 1e-9);
  UnionFind uf(g.size());
  for (std::size_t v = 0; v < g.size(); ++v)
    for (std::size_t w : g.neighbours(v))
      if (w > v && distance(g.node(v), g.node(w)) <= tol) uf.unite(v, w);
  std::unordered_map<std::size_t, std::size_t> degree;
  std::size_t edges = 0;
  UnionFind classes(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (std::size_t w : g.neighbours(v)) {
      if (w < v) continue;
      const std::size_t a = uf.find(v), b = uf.find(w);
      if (a == b) continue;
      ++degree[a];
      ++degree[b];
      ++edges;
      classes.unite(a, b);
    }
  }
  std::size_t roots = 0;
  std::size_t root = 0;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (uf.find(v) == v) {
      ++roots;
      root = v;
    }
  if (roots < 3 || edges != roots) return false;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (uf.find(v) == v && (degree[v] != 2 || classes.find(v) != classes.find(root))) return false;
  return true;
}

ClassifyConfig ClassifyConfig::resolved() const {
  ClassifyConfig c = *this;
  if (!(c.h > 0.0)) throw ScaleError("grid spacing must be positive");
  if (c.ladder.epsilons.empty()) c.ladder = ScaleLadder::geometric(0.4, 5.0 * c.h, 0.5);
  c.ladder.validate(c.h);
  if (c.probe_radius <= 0.0) c.probe_radius = kDefaultProbeCells * c.h;
  if (c.probe_radius < 2.0 * c.h) throw ScaleError("probe radius must be at least 2h");
  if (c.sample_spacing <= 0.0) c.sample_spacing = c.ladder.finest() / 2.0;
  if (c.sample_spacing > c.ladder.finest() / 2.0 * (1.0 + 1e-12))
    throw ScaleError("sample spacing must not exceed half the finest ladder radius");
  return c;
}

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::size_t> pick_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  k = std::min(k, n);
  // Partial Fisher-Yates with plain modulo keeps the choice identical across standard libraries.
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng() % (n - i)]);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::string fmt_point(Point p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", p.x, p.y);
  return buf;
}

}  // namespace

ClassificationReport classify(const CurveComplex& complex, const ClassifyConfig& config, AnalysisArtifacts* artifacts) {
  ClassificationReport r;
  r.config = config.resolved();
  const ClassifyConfig& c = r.config;
  r.fixture_id = c.fixture_id;
  r.glue_tol = complex.glue_tol();

  AnalysisArtifacts local;
  AnalysisArtifacts& a = artifacts ? *artifacts : local;
  a.grid = rasterize(complex, c.h, c.raster_mode);
  a.decomp = complement_components(a.grid);
  a.samples = sample_complex(complex, c.sample_spacing);
  r.sample_count = a.samples.size();

  const bool two = is_two_sided(a.decomp);
  r.two_sided = verdict_of(two);
  r.jordan = verdict_of(is_discrete_jordan(complex));

  if (two) {
    a.records = access_map(complex, a.grid, a.decomp, a.samples, c.probe_radius);
    r.simple_set_detail = simple_set_check(complex, a.grid, a.decomp, a.records);
    r.simple = verdict_of(r.simple_set_detail->verdict);
    r.d_set_detail = d_set_check(complex, a.decomp, c.ladder, a.records);
    r.d_set = verdict_of(r.d_set_detail->verdict);
  } else {
    r.diagnostics.push_back("complement has " + std::to_string(a.decomp.domain_count()) +
                            " domains at h=" + std::to_string(c.h) + "; simple and d-set checks not applicable");
  }

  for (const auto& d : a.decomp.domains) {
    DomainSummary s{d, frontier_cells(a.grid, a.decomp, d.id).size(), 0};
    for (const auto& rec : a.records) s.accessible_samples += rec.accessible_from(d.id);
    r.domains.push_back(s);
  }

  if (r.simple_set_detail) {
    const auto& s = *r.simple_set_detail;
    if (!s.frontier_equal)
      r.diagnostics.push_back("frontiers differ: " + std::to_string(s.frontier_first) + " and " +
                              std::to_string(s.frontier_second) + " of " + std::to_string(s.k_cells) + " K cells");
    if (!s.dense_first || !s.dense_second)
      r.diagnostics.push_back("accessible sets not metrically dense: " + std::to_string(s.gaps_first.size()) + " and " +
                              std::to_string(s.gaps_second.size()) + " samples uncovered");
  }

  // Sandwich at seeded sample centers over the full ladder.
  if (!a.samples.empty() && c.sandwich_centers > 0) {
    const VertexGraph graph(complex);
    for (std::size_t i : pick_indices(a.samples.size(), c.sandwich_centers, c.seed))
      for (double eps : c.ladder.epsilons) {
        auto s = sandwich_check(complex, graph, a.samples[i], eps, a.samples, c.node_budget);
        for (const auto& w : s.witnesses)
          r.diagnostics.push_back("sandwich violation at x=" + fmt_point(s.x) + " eps=" + std::to_string(eps) +
                                  " y=" + fmt_point(w.y) + ": " + w.violation);
        r.sandwich.push_back(std::move(s));
      }
  }

  const Rect& box = complex.bbox();
  const double pad = std::max(box.diagonal() * 1e-3, 2.0 * c.h);
  r.density_lower_bounds.push_back({"bbox", box.inflated(pad), density_lower_bound(complex, box.inflated(pad))});
  const Rect strip{box.xmin - pad, box.ymin + 0.25 * box.height(), box.xmax + pad, box.ymin + 0.75 * box.height()};
  if (strip.height() > 0.0)
    r.density_lower_bounds.push_back({"middle_strip", strip, density_lower_bound(complex, strip)});

  if (r.d_set == Verdict::True && r.jordan == Verdict::False) {
    r.theorem_violation = true;
    r.diagnostics.push_back("THEOREM_VIOLATION: d-set verdict true but the set is not a discrete Jordan curve");
  }
  r.generated_at = utc_now();
  return r;
}

namespace {

using nlohmann::ordered_json;

ordered_json verdict_json(Verdict v) {
  if (v == Verdict::NotApplicable) return nullptr;
  return v == Verdict::True;
}

ordered_json point_json(Point p) { return ordered_json::array({p.x, p.y}); }

ordered_json rect_json(const Rect& b) { return ordered_json::array({b.xmin, b.ymin, b.xmax, b.ymax}); }

ordered_json density_json(const DensityVerdict& v) {
  ordered_json w = ordered_json::array();
  for (const auto& x : v.witnesses) w.push_back({{"x", point_json(x.x)}, {"eps", x.eps}});
  return {{"subset", v.subset_name}, {"pass", v.pass}, {"witness_count", v.witnesses.size()}, {"witnesses", w}};
}

}  // namespace

std::string report_to_json(const ClassificationReport& r, int indent) {
  const auto& c = r.config;
  ordered_json j;
  j["fixture_id"] = r.fixture_id;
  j["scale_config"] = {
      {"h", c.h},
      {"glue_tol", r.glue_tol},
      {"ladder", c.ladder.epsilons},
      {"ladder_floor_ratio", c.ladder.floor_ratio},
      {"probe_radius", c.probe_radius},
      {"sample_spacing", c.sample_spacing},
      {"raster_mode", c.raster_mode == RasterMode::cell_center ? "cell_center" : "cell_coverage"},
      {"seed", c.seed},
      {"node_budget", c.node_budget},
  };
  j["sample_count"] = r.sample_count;
  j["two_sided"] = verdict_json(r.two_sided);
  j["simple"] = verdict_json(r.simple);
  if (r.simple_set_detail) {
    const auto& s = *r.simple_set_detail;
    ordered_json g1 = ordered_json::array(), g2 = ordered_json::array();
    for (const auto& p : s.gaps_first) g1.push_back(point_json(p));
    for (const auto& p : s.gaps_second) g2.push_back(point_json(p));
    j["simple_set"] = {{"verdict", s.verdict},
                       {"resolution", s.resolution},
                       {"dense_first", s.dense_first},
                       {"dense_second", s.dense_second},
                       {"frontier_equal", s.frontier_equal},
                       {"frontier_first", s.frontier_first},
                       {"frontier_second", s.frontier_second},
                       {"k_cells", s.k_cells},
                       {"gaps_first", g1},
                       {"gaps_second", g2}};
  } else {
    j["simple_set"] = nullptr;
  }
  if (r.d_set_detail) {
    const auto& d = *r.d_set_detail;
    ordered_json per = ordered_json::array();
    for (const auto& e : d.per_eps)
      per.push_back({{"eps", e.eps}, {"failures_first", e.failures_first}, {"failures_second", e.failures_second}});
    j["d_set"] = {{"verdict", d.verdict},
                  {"domains", {d.first_domain, d.second_domain}},
                  {"per_eps", per},
                  {"witnesses", {density_json(d.first), density_json(d.second)}}};
  } else {
    j["d_set"] = {{"verdict", nullptr}, {"per_eps", ordered_json::array()}, {"witnesses", ordered_json::array()}};
  }
  j["jordan"] = verdict_json(r.jordan);
  ordered_json doms = ordered_json::array();
  for (const auto& d : r.domains)
    doms.push_back({{"id", d.domain.id},
                    {"unbounded", d.domain.unbounded},
                    {"cell_count", d.domain.cell_count},
                    {"frontier_cells", d.frontier_cells},
                    {"accessible_samples", d.accessible_samples}});
  j["domains"] = doms;
  ordered_json sw = ordered_json::array();
  for (const auto& s : r.sandwich) {
    ordered_json wit = ordered_json::array();
    for (const auto& w : s.witnesses)
      wit.push_back({{"y", point_json(w.y)},
                     {"lo", w.bracket.lo},
                     {"hi", w.bracket.hi},
                     {"member", w.member},
                     {"violation", w.violation}});
    sw.push_back({{"x", point_json(s.x)},
                  {"eps", s.eps},
                  {"pass", s.pass},
                  {"checked", s.checked},
                  {"inexact", s.inexact},
                  {"max_ratio", s.max_ratio},
                  {"witnesses", wit}});
  }
  j["sandwich"] = sw;
  ordered_json dl = ordered_json::array();
  for (const auto& w : r.density_lower_bounds)
    dl.push_back({{"window", w.name}, {"rect", rect_json(w.window)}, {"components", w.components}});
  j["density_lower_bounds"] = dl;
  j["diagnostics"] = r.diagnostics;
  j["theorem_violation"] = r.theorem_violation;
  j["generated_at"] = r.generated_at;
  return j.dump(indent);
}

int exit_code_for(const ClassificationReport& report) {
  if (report.theorem_violation) return 4;
  if (report.two_sided == Verdict::False) return 2;
  return 0;
}

}  // namespace dset

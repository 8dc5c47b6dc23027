// dset: fixtures, analysis reports and end-cuts from the command line.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dset/accessibility.hpp"
#include "dset/classifier.hpp"
#include "dset/errors.hpp"
#include "dset/fixtures.hpp"
#include "dset/io.hpp"
#include "dset/svg.hpp"

using namespace dset;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kNotTwoSided = 2, kScale = 3, kViolation = 4 };

struct Options {
  std::string input;
  std::string fixture;
  double h = 0.005;
  std::optional<double> eps_max, eps_min, eps_ratio;
  double probe_radius = 0.0;
  double sample_spacing = 0.0;
  std::string svg;
  std::uint64_t seed = 0;
  std::string out;
};

void add_source(CLI::App* cmd, Options& o) {
  auto* in = cmd->add_option("--input", o.input, "curve-complex JSON file");
  auto* fx = cmd->add_option("--fixture", o.fixture, "fixture spec, e.g. comb_arc:4");
  in->excludes(fx);
  cmd->add_option("--h", o.h, "grid spacing (also the fixture sampling step)")->check(CLI::PositiveNumber);
}

void add_scales(CLI::App* cmd, Options& o) {
  cmd->add_option("--eps-max", o.eps_max, "coarsest ladder radius");
  cmd->add_option("--eps-min", o.eps_min, "finest ladder radius (default 5h)");
  cmd->add_option("--eps-ratio", o.eps_ratio, "geometric ladder ratio");
  cmd->add_option("--probe-radius", o.probe_radius, "accessibility probe radius (default 10h)");
  cmd->add_option("--sample-spacing", o.sample_spacing, "sample spacing (default finest eps / 2)");
  cmd->add_option("--seed", o.seed, "seed for sandwich centers");
}

struct Loaded {
  CurveComplex complex;
  std::string id;
};

Loaded load(const Options& o) {
  if (!o.fixture.empty()) {
    const auto spec = parse_fixture(o.fixture);
    return {make_fixture(spec, o.h), spec.id()};
  }
  if (o.input.empty()) throw InvalidArgument("one of --input or --fixture is required");
  const auto doc = read_json(o.input);
  // Files written by `fixture` remember their spec, so a round trip reports the same id.
  std::string id = doc.contains("fixture_id") ? doc["fixture_id"].get<std::string>() : o.input;
  return {complex_from_json(doc), id};
}

ClassifyConfig config_of(const Options& o, const std::string& id) {
  ClassifyConfig c;
  c.h = o.h;
  c.fixture_id = id;
  c.seed = o.seed;
  c.probe_radius = o.probe_radius;
  c.sample_spacing = o.sample_spacing;
  if (o.eps_max || o.eps_min || o.eps_ratio)
    c.ladder = ScaleLadder::geometric(o.eps_max.value_or(0.4), o.eps_min.value_or(5.0 * o.h), o.eps_ratio.value_or(0.5));
  return c.resolved();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty())
    std::cout << text << '\n';
  else
    write_text(path, text + "\n");
}

int cmd_fixture(const Options& o) {
  if (o.fixture.empty()) throw InvalidArgument("--fixture is required");
  if (o.out.empty()) throw InvalidArgument("--out is required");
  const auto spec = parse_fixture(o.fixture);
  const auto complex = make_fixture(spec, o.h);
  auto doc = complex_to_json(complex);
  doc["fixture_id"] = spec.id();
  write_text(o.out, doc.dump() + "\n");
  std::printf("%s: %zu pieces, %zu vertices -> %s\n", spec.id().c_str(), complex.pieces().size(),
              complex.vertex_count(), o.out.c_str());
  return kOk;
}

int cmd_analyze(const Options& o) {
  const auto [complex, id] = load(o);
  const auto config = config_of(o, id);
  AnalysisArtifacts art;
  const auto report = classify(complex, config, o.svg.empty() ? nullptr : &art);
  emit(report_to_json(report), o.out);
  if (!o.svg.empty()) {
    const auto hl = one_sided_witnesses(art);
    write_text(o.svg, render_svg(complex, art, hl));
  }
  for (const auto& d : report.diagnostics) std::fprintf(stderr, "%s\n", d.c_str());
  return exit_code_for(report);
}

ordered_json path_json(const Polyline& line) {
  ordered_json a = ordered_json::array();
  for (const Point& p : line.vertices) a.push_back({p.x, p.y});
  return a;
}

int cmd_endcut(const Options& o, const std::string& mode, const std::vector<double>& x_in, const std::string& domain) {
  const auto [complex, id] = load(o);
  const auto config = config_of(o, id);
  const Point x{x_in.at(0), x_in.at(1)};
  if (complex.distance_to(x) > config.h) throw NotOnSet("x is farther than h from the set");
  const Grid grid = rasterize(complex, config.h, config.raster_mode);
  const auto decomp = complement_components(grid);
  int dom = 0;
  if (domain == "unbounded" || domain == "bounded") {
    for (const auto& d : decomp.domains)
      if (d.unbounded == (domain == "unbounded")) {
        dom = d.id;
        break;
      }
  } else {
    dom = std::stoi(domain);
  }
  if (!decomp.has_domain(dom)) throw UnknownDomain(dom);

  ordered_json j;
  j["fixture_id"] = id;
  j["mode"] = mode;
  j["x"] = {x.x, x.y};
  j["domain_id"] = dom;
  int code = kOk;
  try {
    std::optional<EndCut> ec;
    if (mode == "find")
      ec = find_end_cut(complex, grid, decomp, x, dom, config.probe_radius);
    else
      ec = synthesize_end_cut(complex, grid, decomp, x, dom, config.ladder,
                              {config.probe_radius, /*force_construction=*/true});
    if (ec) {
      j["status"] = "ok";
      j["target"] = {ec->target.x, ec->target.y};
      j["scale"] = ec->scale;
      j["path"] = path_json(ec->path);
    } else {
      j["status"] = "not_accessible";
      code = kFailure;
    }
  } catch (const HypothesisFailed& e) {
    j["status"] = "hypothesis_failed";
    j["eps"] = e.eps();
    std::fprintf(stderr, "HypothesisFailed: %s\n", e.what());
    code = kFailure;
  } catch (const NoConnection& e) {
    j["status"] = "no_connection";
    std::fprintf(stderr, "NoConnection: %s\n", e.what());
    code = kFailure;
  }
  emit(j.dump(2), o.out);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify plane curve complexes: accessibility, simple sets, d-sets."};
  app.set_help_flag("--help", "print this help");  // --h is the grid spacing
  app.require_subcommand(1);
  Options o;

  auto* fixture = app.add_subcommand("fixture", "write a fixture as curve-complex JSON");
  fixture->add_option("spec", o.fixture, "fixture spec");
  fixture->add_option("--fixture", o.fixture, "fixture spec");
  fixture->add_option("--h", o.h, "sampling step")->check(CLI::PositiveNumber);
  fixture->add_option("--out", o.out, "output file");

  auto* analyze = app.add_subcommand("analyze", "classify and write the report JSON");
  add_source(analyze, o);
  add_scales(analyze, o);
  analyze->add_option("--out", o.out, "report file (default stdout)");
  analyze->add_option("--svg", o.svg, "also write an SVG rendering");

  auto* endcut = app.add_subcommand("endcut", "find or synthesize an end-cut at x");
  std::string mode = "find", domain = "unbounded";
  std::vector<double> x;
  endcut->add_option("mode", mode, "find | synthesize")->check(CLI::IsMember({"find", "synthesize"}));
  add_source(endcut, o);
  add_scales(endcut, o);
  endcut->add_option("--x", x, "point on the set")->expected(2)->required();
  endcut->add_option("--domain", domain, "domain id, or bounded / unbounded");
  endcut->add_option("--out", o.out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*fixture) return cmd_fixture(o);
    if (*analyze) return cmd_analyze(o);
    return cmd_endcut(o, mode, x, domain);
  } catch (const NotTwoSided& e) {
    std::fprintf(stderr, "NotTwoSided: %s\n", e.what());
    return kNotTwoSided;
  } catch (const ScaleError& e) {
    std::fprintf(stderr, "ScaleError: %s\n", e.what());
    return kScale;
  } catch (const UnresolvableScale& e) {
    std::fprintf(stderr, "UnresolvableScale: %s\n", e.what());
    return kScale;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dset/accessibility.hpp"
#include "dset/lc_topology.hpp"
#include "dset/raster.hpp"

namespace dset {

enum class Verdict { False, True, NotApplicable };

inline Verdict verdict_of(bool b) { return b ? Verdict::True : Verdict::False; }
const char* to_string(Verdict v);

/// Arc-length equidistant points per piece, about `spacing` apart. Open pieces keep both
/// endpoints; a point within glue_tol of an earlier piece's sample is dropped.
std::vector<Point> sample_complex(const CurveComplex& complex, double spacing);

/// Glued vertex graph is one cycle: connected and every (merged) vertex of degree 2.
bool is_discrete_jordan(const CurveComplex& complex);

struct ClassifyConfig {
  double h = 0.005;
  ScaleLadder ladder;             ///< empty: geometric(0.4, 5h, 0.5)
  double probe_radius = 0.0;      ///< 0: 10h
  double sample_spacing = 0.0;    ///< 0: finest eps / 2
  RasterMode raster_mode = RasterMode::cell_center;
  std::uint64_t seed = 0;
  std::size_t sandwich_centers = 4;
  std::size_t node_budget = kDefaultNodeBudget;
  std::string fixture_id;

  /// Fills the zero defaults. Throws ScaleError on inconsistent scales.
  ClassifyConfig resolved() const;
};

struct WindowCount {
  std::string name;
  Rect window;
  std::size_t components = 0;
};

struct DomainSummary {
  Domain domain;
  std::size_t frontier_cells = 0;
  std::size_t accessible_samples = 0;
};

struct ClassificationReport {
  std::string fixture_id;
  ClassifyConfig config;  ///< resolved
  double glue_tol = 0.0;
  std::size_t sample_count = 0;

  Verdict two_sided = Verdict::NotApplicable;
  Verdict simple = Verdict::NotApplicable;  ///< simple_set_check
  Verdict d_set = Verdict::NotApplicable;
  Verdict jordan = Verdict::NotApplicable;
  std::optional<SimpleSetResult> simple_set_detail;
  std::optional<DSetResult> d_set_detail;
  std::vector<DomainSummary> domains;
  std::vector<SandwichResult> sandwich;
  std::vector<WindowCount> density_lower_bounds;
  std::vector<std::string> diagnostics;
  bool theorem_violation = false;
  std::string generated_at;
};

/// Intermediate results kept for rendering.
struct AnalysisArtifacts {
  Grid grid;
  ComplementDecomposition decomp;
  std::vector<Point> samples;
  std::vector<AccessRecord> records;
};

/// rasterize -> complement -> two-sidedness -> accessible sets -> simple set -> d-set -> Jordan check.
/// Throws ScaleError. A set that is not two-sided gets NotApplicable for the later verdicts.
ClassificationReport classify(const CurveComplex& complex, const ClassifyConfig& config,
                              AnalysisArtifacts* artifacts = nullptr);

/// Report as JSON text; the generated_at field is the only non-deterministic content.
std::string report_to_json(const ClassificationReport& report, int indent = 2);

/// Process exit code for a finished report: 0, 2 (not two-sided) or 4 (theorem violation).
int exit_code_for(const ClassificationReport& report);

}  // namespace dset

#pragma once

#include <span>
#include <string>
#include <vector>

#include "dset/classifier.hpp"

namespace dset {

struct Highlight {
  std::vector<Point> path;
  std::string kind;  ///< "end_cut" or "cross_cut"
  int domain_id = 0;
};

/// End-cut witnesses of samples reachable from exactly one domain, at most `limit`, spread evenly.
std::vector<Highlight> one_sided_witnesses(const AnalysisArtifacts& artifacts, std::size_t limit = 48);

/// SVG 1.1 picture: domain fills, the set in black, accessible-sample markers and highlighted paths.
std::string render_svg(const CurveComplex& complex, const AnalysisArtifacts& artifacts,
                       std::span<const Highlight> highlights = {});

}  // namespace dset

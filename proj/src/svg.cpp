#include "dset/svg.hpp"

#include <cstdio>

namespace dset {

namespace {

const char* const kDomainFill[] = {"#cfe2f3", "#f4d7c6", "#d9ead3", "#fff2cc", "#e6d6ee"};
const char* const kMarker[] = {"#1f5fa8", "#c0502a", "#3a7d2c", "#a08000", "#7a4a99"};

template <std::size_t N>
const char* pick(const char* const (&table)[N], int domain_id) {
  return table[static_cast<std::size_t>(domain_id - 1) % N];
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string points_attr(std::span<const Point> pts) {
  std::string s;
  for (const Point& p : pts) {
    if (!s.empty()) s += ' ';
    s += num(p.x) + ',' + num(p.y);
  }
  return s;
}

}  // namespace

std::vector<Highlight> one_sided_witnesses(const AnalysisArtifacts& artifacts, std::size_t limit) {
  std::vector<Highlight> all;
  for (const auto& rec : artifacts.records) {
    int count = 0;
    const DomainAccess* hit = nullptr;
    for (const auto& d : rec.domains)
      if (d.accessible) {
        ++count;
        hit = &d;
      }
    if (count == 1 && hit->witness) all.push_back({hit->witness->path.vertices, "end_cut", hit->domain_id});
  }
  if (all.size() <= limit) return all;
  std::vector<Highlight> out;
  for (std::size_t i = 0; i < limit; ++i) out.push_back(all[i * all.size() / limit]);
  return out;
}

std::string render_svg(const CurveComplex& complex, const AnalysisArtifacts& artifacts,
                       std::span<const Highlight> highlights) {
  const Grid& g = artifacts.grid;
  const double h = g.spacing();
  const Point o = g.origin();
  const double w = g.cols() * h, ht = g.rows() * h;
  const double px = 800.0 / std::max(w, ht);
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(w * px) + "\" height=\"" +
       num(ht * px) + "\" viewBox=\"" + num(o.x) + ' ' + num(-(o.y + ht)) + ' ' + num(w) + ' ' + num(ht) + "\">\n";
  // World y points up.
  s += "<g transform=\"scale(1,-1)\">\n";

  // Domains as row runs.
  for (const auto& dom : artifacts.decomp.domains) {
    s += "<g class=\"domain\" data-domain=\"" + std::to_string(dom.id) + "\" fill=\"" + pick(kDomainFill, dom.id) +
         "\" stroke=\"none\">\n";
    for (int r = 0; r < g.rows(); ++r) {
      int c = 0;
      while (c < g.cols()) {
        if (artifacts.decomp.label(g.index(r, c)) != dom.id) {
          ++c;
          continue;
        }
        const int start = c;
        while (c < g.cols() && artifacts.decomp.label(g.index(r, c)) == dom.id) ++c;
        s += "<rect x=\"" + num(o.x + start * h) + "\" y=\"" + num(o.y + r * h) + "\" width=\"" +
             num((c - start) * h) + "\" height=\"" + num(h) + "\"/>\n";
      }
    }
    s += "</g>\n";
  }

  s += "<g class=\"set\" fill=\"none\" stroke=\"#000\" stroke-width=\"" + num(0.6 * h) +
       "\" stroke-linejoin=\"round\" stroke-linecap=\"round\">\n";
  for (const auto& piece : complex.pieces()) s += "<polyline points=\"" + points_attr(piece.vertices) + "\"/>\n";
  s += "</g>\n";

  // One marker group per domain; a sample seen from both sides gets both markers, offset.
  const double r = 0.7 * h;
  for (std::size_t k = 0; k < artifacts.decomp.domains.size(); ++k) {
    const int id = artifacts.decomp.domains[k].id;
    const double dx = (k % 2 == 0 ? -0.5 : 0.5) * r;
    s += "<g class=\"accessible\" data-domain=\"" + std::to_string(id) + "\" fill=\"" + pick(kMarker, id) + "\">\n";
    for (const auto& rec : artifacts.records)
      if (rec.accessible_from(id))
        s += "<circle cx=\"" + num(rec.point.x + dx) + "\" cy=\"" + num(rec.point.y) + "\" r=\"" + num(r) + "\"/>\n";
    s += "</g>\n";
  }

  s += "<g class=\"highlights\" fill=\"none\" stroke-width=\"" + num(0.8 * h) + "\">\n";
  for (const auto& hl : highlights)
    s += "<polyline class=\"" + hl.kind + "\" data-domain=\"" + std::to_string(hl.domain_id) + "\" stroke=\"" +
         pick(kMarker, std::max(hl.domain_id, 1)) + "\" points=\"" + points_attr(hl.path) + "\"/>\n";
  s += "</g>\n</g>\n</svg>\n";
  return s;
}

}  // namespace dset

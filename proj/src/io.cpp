#include "dset/io.hpp"

#include <fstream>
#include <sstream>

#include "dset/errors.hpp"

namespace dset {

nlohmann::json complex_to_json(const CurveComplex& complex) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& p : complex.pieces()) {
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : p.vertices) verts.push_back({v.x, v.y});
    pieces.push_back(std::move(verts));
  }
  return {{"glue_tol", complex.glue_tol()}, {"pieces", std::move(pieces)}};
}

CurveComplex complex_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("pieces") || !doc["pieces"].is_array())
    throw ParseError("curve complex JSON needs a 'pieces' array");
  std::vector<Polyline> pieces;
  for (const auto& jp : doc["pieces"]) {
    if (!jp.is_array()) throw ParseError("each piece must be an array of [x, y] pairs");
    Polyline line;
    for (const auto& jv : jp) {
      if (!jv.is_array() || jv.size() != 2 || !jv[0].is_number() || !jv[1].is_number())
        throw ParseError("vertex must be a [x, y] number pair");
      line.vertices.push_back({jv[0].get<double>(), jv[1].get<double>()});
    }
    line.simple = false;
    pieces.push_back(std::move(line));
  }
  double tol = 0.0;
  if (doc.contains("glue_tol")) {
    if (!doc["glue_tol"].is_number()) throw ParseError("glue_tol must be a number");
    tol = doc["glue_tol"].get<double>();
  } else {
    tol = default_glue_tol(pieces);
  }
  for (auto& p : pieces) p.simple = p.vertices.size() >= 2 && is_simple(p);
  return build_complex(std::move(pieces), tol);
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return doc;
}

CurveComplex read_complex(const std::filesystem::path& path) { return complex_from_json(read_json(path)); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

void write_complex(const CurveComplex& complex, const std::filesystem::path& path) {
  write_text(path, complex_to_json(complex).dump() + "\n");
}

}  // namespace dset

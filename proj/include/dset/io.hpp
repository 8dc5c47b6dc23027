#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dset/geometry.hpp"

namespace dset {

/// {"glue_tol": τ, "pieces": [[[x, y], ...], ...]}
nlohmann::json complex_to_json(const CurveComplex& complex);
/// Throws ParseError on schema violations; construction errors propagate.
CurveComplex complex_from_json(const nlohmann::json& doc);

/// Throws ParseError when the file is missing or not JSON.
nlohmann::json read_json(const std::filesystem::path& path);
CurveComplex read_complex(const std::filesystem::path& path);
void write_complex(const CurveComplex& complex, const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dset

#pragma once

#include <filesystem>
#include <json.hpp>

#include "oor/recipe.hpp"
#include "oor/uncertainty.hpp"

namespace oor {

// Doubles are rounded to 9 significant digits before insertion so the
// serialized reports are byte-stable across runs.
nlohmann::json grid_to_json(const Grid& grid);
nlohmann::json recipe_to_json(const Recipe& recipe, const std::string& predicted_csv_path);
nlohmann::json variation_report_to_json(const VariationReport& report);

ToleranceSet tolerance_set_from_json(const nlohmann::json& doc);
ToleranceSet read_tolerance_set(const std::filesystem::path& path);
nlohmann::json tolerance_set_to_json(const ToleranceSet& tol);

} // namespace oor

#include "oor/report_json.hpp"

#include "oor/csv_io.hpp"

namespace oor {

using nlohmann::json;

json grid_to_json(const Grid& grid) {
    return json{{"lo_nm", round_g9(grid.lo_nm)},
                {"hi_nm", round_g9(grid.hi_nm)},
                {"step_nm", round_g9(grid.step_nm)}};
}

json recipe_to_json(const Recipe& recipe, const std::string& predicted_csv_path) {
    json additives = json::array();
    for (const auto& entry : recipe.additives) {
        json item{{"name", entry.name},
                  {"role", to_string(entry.role)},
                  {"weight", round_g9(entry.weight)}};
        if (entry.role == AdditiveRole::dye) {
            item["volume_ml"] = round_g9(entry.volume_ml);
            item["standard_volume_ml"] = round_g9(entry.standard_volume_ml);
        } else {
            item["mass_g"] = round_g9(entry.mass_g);
        }
        additives.push_back(std::move(item));
    }
    return json{
        {"reference_label", recipe.reference_label},
        {"depth_scale", round_g9(recipe.depth_scale)},
        {"tank_volume_l", round_g9(recipe.tank_volume_l)},
        {"grid", grid_to_json(recipe.grid)},
        {"additives", std::move(additives)},
        {"residual_norm", round_g9(recipe.residual_norm)},
        {"kkt_violation", round_g9(recipe.diagnostics.kkt_violation)},
        {"diagnostics",
         json{{"clamped_points", recipe.diagnostics.clamped_points},
              {"condition_estimate", round_g9(recipe.diagnostics.condition_estimate)},
              {"kkt_violation", round_g9(recipe.diagnostics.kkt_violation)},
              {"nnls_iterations", recipe.diagnostics.nnls_iterations}}},
        {"predicted_spectrum_csv_path", predicted_csv_path},
        {"warnings", recipe.warnings},
    };
}

json variation_report_to_json(const VariationReport& report) {
    json additives = json::array();
    for (const auto& v : report.additives) {
        json item{{"name", v.name},
                  {"role", to_string(v.role)},
                  {"unit", v.unit},
                  {"nominal", round_g9(v.nominal)},
                  {"min", round_g9(v.min)},
                  {"max", round_g9(v.max)},
                  {"variation_percent", round_g9(v.variation_percent)}};
        if (v.p50) {
            item["percentiles"] = json{{"p2_5", round_g9(*v.p2_5)},
                                       {"p50", round_g9(*v.p50)},
                                       {"p97_5", round_g9(*v.p97_5)}};
        }
        if (v.accumulated_low) item["accumulated_low"] = round_g9(*v.accumulated_low);
        if (v.accumulated_high) item["accumulated_high"] = round_g9(*v.accumulated_high);
        additives.push_back(std::move(item));
    }
    json out{
        {"method", report.method},
        {"sample_count", report.sample_count},
        {"failed_samples", report.failed_samples},
        {"additives", std::move(additives)},
        {"warnings", report.warnings},
    };
    if (report.method == "mc") out["seed"] = report.seed;
    return out;
}

ToleranceSet tolerance_set_from_json(const json& doc) {
    ToleranceSet tol;
    tol.cup_ml = doc.value("cup_ml", tol.cup_ml);
    tol.scale_repro_g = doc.value("scale_repro_g", tol.scale_repro_g);
    tol.scale_linearity_g = doc.value("scale_linearity_g", tol.scale_linearity_g);
    tol.ruler_mm = doc.value("ruler_mm", tol.ruler_mm);
    tol.precipitation_loss_frac = doc.value("precipitation_loss_frac", tol.precipitation_loss_frac);
    tol.tank_footprint_m2 = doc.value("tank_footprint_m2", tol.tank_footprint_m2);
    if (doc.contains("spectrophotometer_bands")) {
        if (!doc["spectrophotometer_bands"].is_array())
            throw ParseError("spectrophotometer_bands must be an array");
        tol.spectrophotometer_bands.clear();
        for (const auto& item : doc["spectrophotometer_bands"]) {
            SpectroBand band;
            band.absorbance_lo = item.at("absorbance_lo").get<double>();
            band.absorbance_hi = item.at("absorbance_hi").get<double>();
            band.tol = item.at("tol").get<double>();
            tol.spectrophotometer_bands.push_back(band);
        }
    }
    tol.validate();
    return tol;
}

ToleranceSet read_tolerance_set(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ParseError(path.filename().string() + ": invalid JSON");
    try {
        return tolerance_set_from_json(doc);
    } catch (const json::exception& e) {
        throw ParseError(path.filename().string() + ": " + e.what());
    }
}

json tolerance_set_to_json(const ToleranceSet& tol) {
    json bands = json::array();
    for (const auto& b : tol.spectrophotometer_bands)
        bands.push_back(json{{"absorbance_lo", round_g9(b.absorbance_lo)},
                             {"absorbance_hi", round_g9(b.absorbance_hi)},
                             {"tol", round_g9(b.tol)}});
    return json{
        {"cup_ml", round_g9(tol.cup_ml)},
        {"scale_repro_g", round_g9(tol.scale_repro_g)},
        {"scale_linearity_g", round_g9(tol.scale_linearity_g)},
        {"ruler_mm", round_g9(tol.ruler_mm)},
        {"precipitation_loss_frac", round_g9(tol.precipitation_loss_frac)},
        {"spectrophotometer_bands", std::move(bands)},
        {"tank_footprint_m2", round_g9(tol.tank_footprint_m2)},
    };
}

} // namespace oor

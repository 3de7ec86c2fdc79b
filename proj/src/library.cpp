#include "oor/library.hpp"

#include <json.hpp>

#include "oor/checksum.hpp"
#include "oor/csv_io.hpp"

namespace oor {

using nlohmann::json;

namespace {

json parse_json_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded())
        throw ParseError(path.filename().string() + ": invalid JSON");
    return doc;
}

std::string require_string(const json& doc, const char* key, const std::string& context) {
    if (!doc.contains(key) || !doc[key].is_string())
        throw ParseError(context + ": missing string field '" + key + "'");
    return doc[key].get<std::string>();
}

double require_number(const json& doc, const char* key, const std::string& context) {
    if (!doc.contains(key) || !doc[key].is_number())
        throw ParseError(context + ": missing numeric field '" + key + "'");
    return doc[key].get<double>();
}

} // namespace

const ManifestEntry& LibraryManifest::find(const std::string& label) const {
    for (const auto& entry : entries)
        if (entry.label == label) return entry;
    throw ParseError("reference label '" + label + "' not found in manifest");
}

LibraryManifest read_manifest(const std::filesystem::path& path) {
    const json doc = parse_json_file(path);
    const std::string context = path.filename().string();
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw ParseError(context + ": manifest needs an 'entries' array");

    LibraryManifest manifest;
    manifest.base_dir = path.parent_path();
    for (const auto& item : doc["entries"]) {
        ManifestEntry entry;
        entry.label = require_string(item, "label", context);
        entry.absorption_csv = require_string(item, "absorption_csv", context);
        entry.scattering_csv = require_string(item, "scattering_csv", context);
        entry.provenance = item.value("provenance", std::string{});
        entry.absorption_sha256 = item.value("absorption_sha256", std::string{});
        entry.scattering_sha256 = item.value("scattering_sha256", std::string{});
        for (const auto& existing : manifest.entries)
            if (existing.label == entry.label)
                throw ParseError(context + ": duplicate label '" + entry.label + "'");
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

namespace {

Spectrum load_checked_spectrum(const std::filesystem::path& base_dir, const std::string& rel_path,
                               const std::string& expected_sha, SpectrumKind expected_kind,
                               const Grid& grid) {
    const auto path = base_dir / rel_path;
    const std::string text = read_text_file(path);
    if (!expected_sha.empty()) {
        const std::string actual = sha256_hex(text);
        if (actual != expected_sha)
            throw ChecksumError(rel_path + ": checksum mismatch (expected " + expected_sha +
                                ", got " + actual + ")");
    }
    Spectrum s = spectrum_from_csv(text, rel_path);
    if (s.kind() != expected_kind)
        throw ParseError(rel_path + ": expected kind '" + to_string(expected_kind) + "', got '" +
                         to_string(s.kind()) + "'");
    return resample(s, grid);
}

} // namespace

WaterReference load_reference(const LibraryManifest& manifest, const std::string& label,
                              const Grid& grid) {
    const ManifestEntry& entry = manifest.find(label);
    WaterReference ref{
        entry.label,
        load_checked_spectrum(manifest.base_dir, entry.absorption_csv, entry.absorption_sha256,
                              SpectrumKind::absorption, grid),
        load_checked_spectrum(manifest.base_dir, entry.scattering_csv, entry.scattering_sha256,
                              SpectrumKind::scattering, grid),
    };
    ref.validate();
    return ref;
}

Additive validate_additive(const std::filesystem::path& sidecar_path, const Grid& grid) {
    const json doc = parse_json_file(sidecar_path);
    const std::string context = sidecar_path.filename().string();

    Additive additive;
    additive.name = require_string(doc, "name", context);
    additive.role = additive_role_from_string(require_string(doc, "role", context));
    additive.base_volume_l = require_number(doc, "base_volume_l", context);
    if (doc.contains("base_mass_g")) additive.base_mass_g = require_number(doc, "base_mass_g", context);
    if (doc.contains("cuvette_path_mm"))
        additive.cuvette_path_mm = require_number(doc, "cuvette_path_mm", context);
    if (doc.contains("dilution_base_ml") != doc.contains("dilution_total_ml"))
        throw ParseError(context + ": dilution_base_ml and dilution_total_ml go together");
    if (doc.contains("dilution_base_ml")) {
        additive.dilution = DilutionRecord{require_number(doc, "dilution_base_ml", context),
                                           require_number(doc, "dilution_total_ml", context)};
    }

    const std::string csv_rel = require_string(doc, "spectrum_csv", context);
    const auto csv_path = sidecar_path.parent_path() / csv_rel;
    Spectrum measured = read_spectrum_csv(csv_path);

    if (measured.kind() == SpectrumKind::absorbance) {
        const double max_absorbance = doc.value("max_absorbance", kDefaultMaxAbsorbance);
        const double dilution = additive.dilution ? additive.dilution->factor() : 1.0;
        measured = from_absorbance(measured, additive.cuvette_path_mm, dilution, max_absorbance);
    } else if (measured.kind() != SpectrumKind::attenuation) {
        throw ParseError(context + ": additive spectra must be attenuation or absorbance");
    }
    additive.base_spectrum = resample(measured, grid);

    if (doc.contains("standard_scale"))
        additive.standard_scale = require_number(doc, "standard_scale", context);
    else
        additive.standard_scale = normalize_standard(additive.base_spectrum).scale_factor;

    additive.validate();
    return additive;
}

std::filesystem::path serialize_additive(const Additive& additive,
                                         const std::filesystem::path& directory) {
    additive.validate();
    const std::string csv_name = additive.name + ".csv";
    write_spectrum_csv(directory / csv_name, additive.base_spectrum);

    json doc;
    doc["name"] = additive.name;
    doc["role"] = to_string(additive.role);
    doc["spectrum_csv"] = csv_name;
    doc["base_volume_l"] = round_g9(additive.base_volume_l);
    if (additive.base_mass_g) doc["base_mass_g"] = round_g9(*additive.base_mass_g);
    doc["standard_scale"] = round_g9(additive.standard_scale);
    doc["cuvette_path_mm"] = round_g9(additive.cuvette_path_mm);
    if (additive.dilution) {
        doc["dilution_base_ml"] = round_g9(additive.dilution->base_ml);
        doc["dilution_total_ml"] = round_g9(additive.dilution->total_ml);
    }

    const auto sidecar = directory / (additive.name + ".json");
    write_text_file(sidecar, doc.dump(2) + "\n");
    return sidecar;
}

} // namespace oor

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "oor/recipe.hpp"
#include "oor/spectrum.hpp"

namespace oor {

// One reference water entry: CSV paths are resolved relative to the
// manifest location; sha256 checksums are verified on load when present.
struct ManifestEntry {
    std::string label;
    std::string absorption_csv;
    std::string scattering_csv;
    std::string provenance;
    std::string absorption_sha256; // optional; empty skips verification
    std::string scattering_sha256;
};

struct LibraryManifest {
    std::filesystem::path base_dir;
    std::vector<ManifestEntry> entries;

    const ManifestEntry& find(const std::string& label) const;
};

LibraryManifest read_manifest(const std::filesystem::path& path);

// Loads a labelled reference, verifies checksums and kinds, and resamples
// both spectra to the grid.
WaterReference load_reference(const LibraryManifest& manifest, const std::string& label,
                              const Grid& grid = Grid::canonical());

// Additive sidecar JSON: {name, role, spectrum_csv, base_volume_l,
// base_mass_g?, standard_scale?, cuvette_path_mm?, dilution_base_ml?,
// dilution_total_ml?, max_absorbance?}. Absorbance CSVs are converted to
// the attenuation of the undiluted base via the recorded geometry;
// standard_scale defaults to the normalization factor of the spectrum.
Additive validate_additive(const std::filesystem::path& sidecar_path,
                           const Grid& grid = Grid::canonical());

// Writes sidecar JSON + spectrum CSV; returns the sidecar path. The pair
// round-trips through validate_additive.
std::filesystem::path serialize_additive(const Additive& additive,
                                         const std::filesystem::path& directory);

} // namespace oor

#pragma once

#include <filesystem>
#include <string>

#include "oor/spectrum.hpp"

namespace oor {

// Locale-independent %.9g formatting; all file output goes through this
// so serialization stays byte-stable.
std::string format_g9(double value);

// Round to 9 significant decimal digits (used before placing doubles in
// JSON documents, so reports serialize deterministically).
double round_g9(double value);

double parse_double(const std::string& text);

// Spectrum CSV: header `wavelength_nm,value,kind,unit`, one row per
// wavelength. unit is per_m, per_mm (x1000 on ingest) or absorbance;
// written files always carry per_m / absorbance.
std::string spectrum_to_csv(const Spectrum& s);
Spectrum spectrum_from_csv(const std::string& text, const std::string& source_name = "<string>");

Spectrum read_spectrum_csv(const std::filesystem::path& path);
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace oor

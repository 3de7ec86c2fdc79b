#pragma once

#include <string>
#include <vector>

#include "oor/errors.hpp"

namespace oor {

enum class SpectrumKind { attenuation, absorption, scattering, absorbance };

std::string to_string(SpectrumKind kind);
SpectrumKind spectrum_kind_from_string(const std::string& name);

// Uniform wavelength grid in nanometers, endpoints inclusive.
struct Grid {
    double lo_nm = 0.0;
    double hi_nm = 0.0;
    double step_nm = 0.0;

    Grid() = default;
    Grid(double lo, double hi, double step);

    std::size_t size() const { return n_points_; }
    double wavelength(std::size_t i) const { return lo_nm + static_cast<double>(i) * step_nm; }
    std::vector<double> wavelengths() const;

    bool operator==(const Grid&) const = default;

    // 400-700 nm at 2 nm: covers the visual-spectrum integration bounds
    // and resolves the dye peaks of the shipped base additives.
    static Grid canonical() { return Grid(400.0, 700.0, 2.0); }

private:
    std::size_t n_points_ = 0;
};

// A wavelength-indexed optical coefficient curve. Immutable after
// construction. Coefficient kinds carry natural-log values in 1/m;
// absorbance is unitless decadic.
class Spectrum {
public:
    // Zero placeholder over [400, 700]; aggregate holders need a default.
    Spectrum() : Spectrum({400.0, 700.0}, {0.0, 0.0}, SpectrumKind::attenuation) {}

    Spectrum(std::vector<double> wavelengths_nm, std::vector<double> values,
             SpectrumKind kind, std::string meta = {});

    const std::vector<double>& wavelengths_nm() const { return wavelengths_nm_; }
    const std::vector<double>& values() const { return values_; }
    SpectrumKind kind() const { return kind_; }
    const std::string& meta() const { return meta_; }

    std::size_t size() const { return wavelengths_nm_.size(); }
    double min_wavelength_nm() const { return wavelengths_nm_.front(); }
    double max_wavelength_nm() const { return wavelengths_nm_.back(); }
    bool covers(double lo_nm, double hi_nm) const;

    // Linear interpolation; CoverageError outside the measured range.
    double value_at(double wavelength_nm) const;

    bool same_grid(const Spectrum& other) const;
    bool on_grid(const Grid& grid) const;

    Spectrum with_values(std::vector<double> values) const;
    Spectrum with_kind(SpectrumKind kind) const;

    static constexpr double kMinWavelengthNm = 350.0;
    static constexpr double kMaxWavelengthNm = 800.0;

private:
    std::vector<double> wavelengths_nm_;
    std::vector<double> values_;
    SpectrumKind kind_;
    std::string meta_;
};

// --- spectral operations ------------------------------------------------

// Linear interpolation onto the grid points; extrapolation is forbidden.
Spectrum resample(const Spectrum& s, const Grid& grid);

// Trapezoidal integral of the piecewise-linear curve over [lo, hi], in
// (value unit) * nm.
double integrate(const Spectrum& s, double lo_nm, double hi_nm);

struct NormalizationResult {
    Spectrum spectrum;
    double scale_factor = 1.0;
};

// Integration bounds and target for the virtual standard solution:
// 1 mm^-1 over 400-700 nm, i.e. 1000 m^-1*nm with values carried in 1/m.
inline constexpr double kStandardIntegralLoNm = 400.0;
inline constexpr double kStandardIntegralHiNm = 700.0;
inline constexpr double kStandardIntegralValue = 1000.0;

// Rescales so the spectrum integrates to the standard-solution integral.
// scale_factor is the divisor applied; idempotent.
NormalizationResult normalize_standard(const Spectrum& s);

// Pointwise sum_i weights[i] * spectra[i]; all on one grid, same kind.
Spectrum lin_combine(const std::vector<double>& weights, const std::vector<Spectrum>& spectra);

inline constexpr double kDefaultMaxAbsorbance = 3.0;

// Converts a decadic absorbance readout over a cuvette path to the
// natural-log attenuation coefficient of the undiluted solution, in 1/m:
// c = ln(10) * A / path * dilution.
Spectrum from_absorbance(const Spectrum& absorbance, double cuvette_path_mm,
                         double dilution_factor,
                         double max_absorbance = kDefaultMaxAbsorbance);

} // namespace oor

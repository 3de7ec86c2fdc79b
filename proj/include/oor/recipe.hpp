#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oor/nnls.hpp"
#include "oor/spectrum.hpp"

namespace oor {

enum class AdditiveRole { dye, scatterer };

std::string to_string(AdditiveRole role);
AdditiveRole additive_role_from_string(const std::string& name);

// Cup-measured dilution applied before the spectrophotometer reading:
// base_ml of base solution topped up to total_ml.
struct DilutionRecord {
    double base_ml = 0.0;
    double total_ml = 0.0;

    double factor() const { return total_ml / base_ml; }
};

// A dye or scatterer base solution/suspension.
struct Additive {
    std::string name;
    AdditiveRole role = AdditiveRole::dye;
    Spectrum base_spectrum;             // attenuation of the base, 1/m
    double base_volume_l = 1.0;         // V_s for the scatterer suspension
    std::optional<double> base_mass_g;  // m0, scatterer only
    double standard_scale = 1.0;        // strength relative to the virtual standard solution

    // Measurement provenance, used by uncertainty propagation to rebuild
    // the absorbance-space readout.
    double cuvette_path_mm = 10.0;
    std::optional<DilutionRecord> dilution;

    void validate() const;
};

struct WaterReference {
    std::string label;
    Spectrum absorption;
    Spectrum scattering;

    void validate() const;
};

enum class PureWaterMode { zero_baseline, subtract_pure_water };

std::string to_string(PureWaterMode mode);
PureWaterMode pure_water_mode_from_string(const std::string& name);

struct TankConfig {
    double volume_l = 0.0;
    double depth_scale = 1.0;
    PureWaterMode pure_water_mode = PureWaterMode::zero_baseline;
    std::optional<Spectrum> pure_water_absorption;

    void validate() const;
};

// How the per-wavelength scatterer gap collapses to one scalar weight.
enum class ScattererAggregation { projection, mean_ratio };

struct FitOptions {
    ScattererAggregation scatter_agg = ScattererAggregation::projection;
    double nnls_tol = kNnlsDefaultTol;
    std::size_t nnls_max_iter = 0;
    double condition_limit = 1e8;       // reject collinear dye bases above this
    double volume_warning_frac = 0.01;  // warn when dye volume exceeds this share of V
};

struct RecipeEntry {
    std::string name;
    AdditiveRole role = AdditiveRole::dye;
    double weight = 0.0;           // w_i = V_i/V for dyes, w_s for the scatterer
    double volume_ml = 0.0;        // dyes
    double standard_volume_ml = 0.0;
    double mass_g = 0.0;           // scatterer
};

struct RecipeDiagnostics {
    std::size_t clamped_points = 0;   // pure-water subtraction + scatterer gap clamps
    double condition_estimate = 1.0;  // dye design matrix
    double kkt_violation = 0.0;
    std::size_t nnls_iterations = 0;
};

struct Recipe {
    std::string reference_label;
    double depth_scale = 1.0;
    double tank_volume_l = 0.0;
    Grid grid;
    std::vector<RecipeEntry> additives;
    std::vector<double> dye_weights;
    double scatter_weight = 0.0;           // w_s = w' * V / V_s
    double scatter_spectral_weight = 0.0;  // w', the concentration ratio in the tank
    double residual_norm = 0.0;
    Spectrum predicted;  // attenuation assembled from the fitted additives
    Spectrum target;     // effective attenuation target after scaling / baseline handling
    RecipeDiagnostics diagnostics;
    std::vector<std::string> warnings;
};

// Depth scaling: multiplies both reference spectra by k to mimic a k-times
// longer water path at fixed tank geometry. Labels gain a "xk" suffix.
WaterReference scale_target(const WaterReference& ref, double k);

struct DyeFit {
    std::vector<double> weights;
    Spectrum fitted_absorption;
    Spectrum effective_target;
    double residual_norm = 0.0;
    std::size_t clamped_points = 0;
    double condition_estimate = 1.0;
    NnlsSolution solution;
};

DyeFit fit_dyes(const Spectrum& target_absorption, const std::vector<Additive>& dyes,
                const TankConfig& tank, const FitOptions& options = {});

struct ScattererFit {
    double spectral_weight = 0.0;  // w'
    double weight = 0.0;           // w_s
    double mass_g = 0.0;
    std::size_t clamped_points = 0;
};

ScattererFit fit_scatterer(const Spectrum& target_attenuation, const Spectrum& fitted_absorption,
                           const Additive& scatterer, const TankConfig& tank,
                           ScattererAggregation agg = ScattererAggregation::projection);

Recipe compose(const WaterReference& ref, const std::vector<Additive>& dyes,
               const Additive& scatterer, const TankConfig& tank,
               const FitOptions& options = {});

// Smallest integer dilution factor that brings the expected peak
// absorbance into the instrument's working range.
long plan_dilution(double peak_absorbance_estimate, double instrument_max);

} // namespace oor

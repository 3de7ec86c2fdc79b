#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oor/recipe.hpp"

namespace oor {

// Instrument tolerance for one absorbance band, e.g. +-0.002 over [0, 0.5].
struct SpectroBand {
    double absorbance_lo = 0.0;
    double absorbance_hi = 0.0;
    double tol = 0.0;
};

// Tolerance bounds of the instruments involved in mixing and control.
// Defaults follow the recipe-preparation bench: 5 ml measuring cup,
// precision scale, folding ruler for the water level, transmission
// spectrophotometer, and the one-sided attenuation loss of the scatterer
// suspension from precipitation during a measurement.
struct ToleranceSet {
    double cup_ml = 2.5;
    double scale_repro_g = 0.02;
    double scale_linearity_g = 0.03;
    double ruler_mm = 0.5;
    double precipitation_loss_frac = 0.073; // measured spectrum may read low by this
    std::vector<SpectroBand> spectrophotometer_bands = {
        {0.0, 0.5, 0.002},
        {0.5, 1.0, 0.004},
        {1.0, 2.0, 0.008},
    };
    double tank_footprint_m2 = 2.0; // converts the ruler tolerance into a volume

    static ToleranceSet defaults() { return {}; }
    static ToleranceSet zero();

    void validate() const;

    // Band lookup; absorbance beyond the last band uses the last band.
    double spectro_tol_at(double absorbance) const;
};

// Everything compose() needs, bundled for repeated perturbed evaluation.
struct RecipeInputs {
    WaterReference ref;
    std::vector<Additive> dyes;
    Additive scatterer;
    TankConfig tank;
    FitOptions options;
};

Recipe compose(const RecipeInputs& inputs);

// Normalized source offsets: symmetric sources in [-1, 1], precipitation
// in [0, 1] (one-sided).
struct Perturbation {
    double cup = 0.0;
    double scale_repro = 0.0;
    double scale_linearity = 0.0;
    double ruler = 0.0;
    double precipitation = 0.0;
    double spectro = 0.0;
};

// Applies a perturbation to the input bundle: spectra are pushed back to
// absorbance space, offset per band, re-diluted with cup-perturbed
// volumes and converted back; the scatterer spectrum gains the one-sided
// precipitation correction; scale offsets hit the recorded initial mass
// and the ruler offset hits the tank volume via the footprint.
RecipeInputs apply_perturbation(const RecipeInputs& inputs, const ToleranceSet& tol,
                                const Perturbation& p);

// Recipe quantities in report order: dye volumes (ml) then scatterer mass (g).
std::vector<double> recipe_quantities(const Recipe& recipe);

struct AdditiveVariation {
    std::string name;
    AdditiveRole role = AdditiveRole::dye;
    std::string unit; // "ml" or "g"
    double nominal = 0.0;
    double min = 0.0;
    double max = 0.0;
    double variation_percent = 0.0;
    std::optional<double> p2_5, p50, p97_5;                   // Monte Carlo only
    std::optional<double> accumulated_low, accumulated_high;  // corner only
};

struct VariationReport {
    std::string method; // "corner" or "mc"
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
    std::size_t failed_samples = 0;
    std::vector<AdditiveVariation> additives;
    std::vector<std::string> warnings;
};

inline constexpr std::size_t kMaxCornerSources = 8;

// Recomputes the recipe at every corner of the tolerance hypercube (one
// axis per active source, 2^k corners, k <= 8) and reports per-additive
// extremes. The two fully accumulated scenarios (all sources low / all
// high) are reported alongside. Corner failures are recorded, not fatal,
// unless every corner fails.
VariationReport propagate_corners(const RecipeInputs& inputs, const ToleranceSet& tol);

// One Monte Carlo draw; the perturbation derives solely from (seed,
// sample_index), so any evaluation schedule produces identical samples.
std::vector<double> mc_sample(const RecipeInputs& inputs, const ToleranceSet& tol,
                              std::uint64_t seed, std::uint64_t sample_index);

// Uniform sampling within the tolerance bounds; reports 2.5/50/97.5
// percentiles plus extremes per additive.
VariationReport propagate_mc(const RecipeInputs& inputs, const ToleranceSet& tol,
                             std::size_t n_samples, std::uint64_t seed);

// --- scatterer precipitation ---------------------------------------------

// Relative attenuation of a scatterer suspension over time: exponential
// decay from 1 towards a plateau, r(t) = f + (1-f) * exp(-t / tau).
// A single exponential to zero cannot hold both of the observed loss
// points; the plateau form can.
struct DecayModel {
    double plateau_frac = 0.0;      // f in [0, 1]
    double time_constant_min = 1.0; // tau > 0
    double restore_frac = 1.0;      // rho: share of the deficit a shake restores

    double relative_attenuation(double t_min) const;
};

// Least-squares fit of (f, tau) to (t_min, relative_attenuation) samples.
// With exactly two consistent samples the fit interpolates them.
DecayModel fit_decay(const std::vector<std::pair<double, double>>& samples);

// Relative attenuation at time t given stir/shake events: each shake
// restores a rho-share of the deficit and decay restarts from the new
// level with the same time constant.
double decay_at(const DecayModel& model, double t_min, std::vector<double> shake_events_min);

} // namespace oor

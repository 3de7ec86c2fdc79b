#include "oor/recipe.hpp"

#include <algorithm>
#include <cmath>

#include "oor/csv_io.hpp"
#include "oor/linalg.hpp"

namespace oor {

std::string to_string(AdditiveRole role) {
    return role == AdditiveRole::dye ? "dye" : "scatterer";
}

AdditiveRole additive_role_from_string(const std::string& name) {
    if (name == "dye") return AdditiveRole::dye;
    if (name == "scatterer") return AdditiveRole::scatterer;
    throw ParseError("unknown additive role: '" + name + "'");
}

std::string to_string(PureWaterMode mode) {
    return mode == PureWaterMode::zero_baseline ? "zero_baseline" : "subtract_pure_water";
}

PureWaterMode pure_water_mode_from_string(const std::string& name) {
    if (name == "zero_baseline") return PureWaterMode::zero_baseline;
    if (name == "subtract_pure_water") return PureWaterMode::subtract_pure_water;
    throw ParseError("unknown pure-water mode: '" + name + "'");
}

void Additive::validate() const {
    if (name.empty()) throw InvalidArgumentError("additive needs a name");
    if (base_spectrum.kind() != SpectrumKind::attenuation)
        throw InvalidArgumentError("additive base spectrum must be an attenuation spectrum");
    if (!(base_volume_l > 0.0)) throw InvalidArgumentError("additive base volume must be > 0");
    if (!(standard_scale > 0.0)) throw InvalidArgumentError("standard_scale must be > 0");
    if (role == AdditiveRole::scatterer) {
        if (!base_mass_g || !(*base_mass_g > 0.0))
            throw RoleError("scatterer additive requires base_mass_g > 0");
        for (double v : base_spectrum.values())
            if (!(v > 0.0))
                throw DegenerateSpectrumError("scatterer base spectrum must be strictly positive");
    }
    if (!(cuvette_path_mm > 0.0)) throw InvalidArgumentError("cuvette path must be > 0");
    if (dilution) {
        if (!(dilution->base_ml > 0.0) || !(dilution->total_ml >= dilution->base_ml))
            throw InvalidArgumentError("dilution record requires 0 < base_ml <= total_ml");
    }
}

void WaterReference::validate() const {
    if (absorption.kind() != SpectrumKind::absorption)
        throw InvalidArgumentError("reference absorption spectrum has wrong kind");
    if (scattering.kind() != SpectrumKind::scattering)
        throw InvalidArgumentError("reference scattering spectrum has wrong kind");
    if (!absorption.same_grid(scattering))
        throw GridMismatchError("reference spectra are not on a common grid");
}

void TankConfig::validate() const {
    if (!(volume_l > 0.0)) throw InvalidArgumentError("tank volume must be > 0");
    if (!(depth_scale >= 1.0)) throw InvalidArgumentError("depth scale must be >= 1");
    if (pure_water_mode == PureWaterMode::subtract_pure_water && !pure_water_absorption)
        throw InvalidArgumentError("subtract_pure_water mode needs a pure-water absorption spectrum");
}

namespace {

Grid infer_grid(const Spectrum& s) {
    const auto& w = s.wavelengths_nm();
    const double step = (w.back() - w.front()) / static_cast<double>(w.size() - 1);
    Grid grid(w.front(), w.back(), step);
    if (!s.on_grid(grid))
        throw GridMismatchError("spectrum is not on a uniform grid");
    return grid;
}

std::string format_scale_suffix(double k) {
    return " x" + format_g9(k);
}

} // namespace

WaterReference scale_target(const WaterReference& ref, double k) {
    ref.validate();
    if (!(k >= 1.0)) throw InvalidArgumentError("depth scale must be >= 1");
    if (k == 1.0) return ref;
    std::vector<double> a = ref.absorption.values();
    std::vector<double> b = ref.scattering.values();
    for (double& v : a) v *= k;
    for (double& v : b) v *= k;
    return WaterReference{ref.label + format_scale_suffix(k),
                          ref.absorption.with_values(std::move(a)),
                          ref.scattering.with_values(std::move(b))};
}

DyeFit fit_dyes(const Spectrum& target_absorption, const std::vector<Additive>& dyes,
                const TankConfig& tank, const FitOptions& options) {
    tank.validate();
    if (dyes.empty()) throw InvalidArgumentError("at least one dye is required");
    std::vector<std::vector<double>> columns;
    std::vector<std::string> labels;
    for (const auto& dye : dyes) {
        dye.validate();
        if (dye.role != AdditiveRole::dye)
            throw RoleError("additive '" + dye.name + "' is not a dye");
        if (!dye.base_spectrum.same_grid(target_absorption))
            throw GridMismatchError("dye '" + dye.name + "' is not on the target grid");
        columns.push_back(dye.base_spectrum.values());
        labels.push_back(dye.name);
    }
    if (dyes.size() >= target_absorption.size())
        throw DimensionError("number of dyes must be smaller than the spectral resolution");

    const double cond = linalg::condition_estimate(columns);
    if (!(cond <= options.condition_limit))
        throw RankError("dye base spectra are collinear (condition estimate " +
                        format_g9(cond) + ")");

    // Effective target: the paper's simplification treats the clean-tank
    // baseline as zero; subtract_pure_water removes a supplied baseline
    // first, clamping negatives.
    std::vector<double> eff = target_absorption.values();
    std::size_t clamped = 0;
    if (tank.pure_water_mode == PureWaterMode::subtract_pure_water) {
        const Spectrum& pw = *tank.pure_water_absorption;
        if (!pw.same_grid(target_absorption))
            throw GridMismatchError("pure-water spectrum is not on the target grid");
        for (std::size_t i = 0; i < eff.size(); ++i) {
            eff[i] -= pw.values()[i];
            if (eff[i] < 0.0) {
                eff[i] = 0.0;
                ++clamped;
            }
        }
    }

    DesignMatrix design(std::move(columns), std::move(labels));
    auto solution = nnls(design, eff, options.nnls_tol, options.nnls_max_iter);

    std::vector<double> fitted(eff.size(), 0.0);
    for (std::size_t j = 0; j < dyes.size(); ++j) {
        const auto& base = dyes[j].base_spectrum.values();
        for (std::size_t i = 0; i < fitted.size(); ++i)
            fitted[i] += solution.weights[j] * base[i];
    }

    double rn = 0.0;
    for (std::size_t i = 0; i < fitted.size(); ++i) {
        const double d = eff[i] - fitted[i];
        rn += d * d;
    }

    DyeFit out{
        solution.weights,
        Spectrum(target_absorption.wavelengths_nm(), std::move(fitted), SpectrumKind::absorption),
        Spectrum(target_absorption.wavelengths_nm(), std::move(eff), SpectrumKind::absorption),
        std::sqrt(rn),
        clamped,
        cond,
        solution,
    };
    return out;
}

ScattererFit fit_scatterer(const Spectrum& target_attenuation, const Spectrum& fitted_absorption,
                           const Additive& scatterer, const TankConfig& tank,
                           ScattererAggregation agg) {
    tank.validate();
    scatterer.validate();
    if (scatterer.role != AdditiveRole::scatterer)
        throw RoleError("additive '" + scatterer.name + "' is not a scatterer");
    if (!scatterer.base_spectrum.same_grid(target_attenuation) ||
        !fitted_absorption.same_grid(target_attenuation))
        throw GridMismatchError("scatterer fit spectra are not on a common grid");

    const auto& bs = scatterer.base_spectrum.values();
    const auto& target = target_attenuation.values();
    const auto& fitted = fitted_absorption.values();

    std::vector<double> gap(target.size());
    std::size_t clamped = 0;
    for (std::size_t i = 0; i < gap.size(); ++i) {
        gap[i] = target[i] - fitted[i];
        if (gap[i] < 0.0) {
            gap[i] = 0.0;
            ++clamped;
        }
    }

    double spectral_weight = 0.0;
    if (agg == ScattererAggregation::projection) {
        const double denom = linalg::dot(bs, bs);
        if (!(denom > 0.0))
            throw DegenerateSpectrumError("scatterer base spectrum is identically zero");
        spectral_weight = std::max(0.0, linalg::dot(bs, gap) / denom);
    } else {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < gap.size(); ++i) {
            if (bs[i] > 0.0) {
                sum += gap[i] / bs[i];
                ++count;
            }
        }
        if (count == 0)
            throw DegenerateSpectrumError("scatterer base spectrum is identically zero");
        spectral_weight = sum / static_cast<double>(count);
    }

    const double weight = spectral_weight * tank.volume_l / scatterer.base_volume_l;
    return ScattererFit{spectral_weight, weight, weight * *scatterer.base_mass_g, clamped};
}

Recipe compose(const WaterReference& ref, const std::vector<Additive>& dyes,
               const Additive& scatterer, const TankConfig& tank, const FitOptions& options) {
    tank.validate();
    ref.validate();

    const WaterReference scaled = scale_target(ref, tank.depth_scale);
    const Grid grid = infer_grid(scaled.absorption);

    auto dye_fit = fit_dyes(scaled.absorption, dyes, tank, options);

    // Attenuation the additives must supply: the effective absorption
    // target plus the scaled reference scattering.
    std::vector<double> target_c(dye_fit.effective_target.values());
    if (!scaled.scattering.same_grid(scaled.absorption))
        throw GridMismatchError("reference spectra are not on a common grid");
    for (std::size_t i = 0; i < target_c.size(); ++i)
        target_c[i] += scaled.scattering.values()[i];
    Spectrum target(scaled.absorption.wavelengths_nm(), std::move(target_c),
                    SpectrumKind::attenuation, scaled.label);

    auto scat_fit =
        fit_scatterer(target, dye_fit.fitted_absorption, scatterer, tank, options.scatter_agg);

    std::vector<double> predicted = dye_fit.fitted_absorption.values();
    for (std::size_t i = 0; i < predicted.size(); ++i)
        predicted[i] += scat_fit.spectral_weight * scatterer.base_spectrum.values()[i];

    Recipe recipe;
    recipe.reference_label = ref.label;
    recipe.depth_scale = tank.depth_scale;
    recipe.tank_volume_l = tank.volume_l;
    recipe.grid = grid;
    recipe.dye_weights = dye_fit.weights;
    recipe.scatter_weight = scat_fit.weight;
    recipe.scatter_spectral_weight = scat_fit.spectral_weight;
    recipe.residual_norm = dye_fit.residual_norm;
    recipe.predicted = Spectrum(target.wavelengths_nm(), std::move(predicted),
                                SpectrumKind::attenuation, "predicted");
    recipe.target = target;
    recipe.diagnostics = RecipeDiagnostics{
        dye_fit.clamped_points + scat_fit.clamped_points,
        dye_fit.condition_estimate,
        dye_fit.solution.kkt_violation,
        dye_fit.solution.iterations,
    };

    double dye_volume_ml_total = 0.0;
    for (std::size_t j = 0; j < dyes.size(); ++j) {
        RecipeEntry entry;
        entry.name = dyes[j].name;
        entry.role = AdditiveRole::dye;
        entry.weight = dye_fit.weights[j];
        entry.volume_ml = dye_fit.weights[j] * tank.volume_l * 1000.0;
        entry.standard_volume_ml = entry.volume_ml * dyes[j].standard_scale;
        dye_volume_ml_total += entry.volume_ml;
        recipe.additives.push_back(std::move(entry));
    }
    RecipeEntry scat_entry;
    scat_entry.name = scatterer.name;
    scat_entry.role = AdditiveRole::scatterer;
    scat_entry.weight = scat_fit.weight;
    scat_entry.mass_g = scat_fit.mass_g;
    recipe.additives.push_back(std::move(scat_entry));

    if (dye_volume_ml_total / 1000.0 > options.volume_warning_frac * tank.volume_l)
        recipe.warnings.push_back(
            "dye volume " + format_g9(dye_volume_ml_total) + " ml exceeds " +
            format_g9(options.volume_warning_frac * 100.0) +
            "% of the tank volume; the neglected-volume assumption may not hold");
    if (recipe.diagnostics.clamped_points > 0)
        recipe.warnings.push_back(format_g9(static_cast<double>(recipe.diagnostics.clamped_points)) +
                                  " grid points clamped to zero during fitting");

    return recipe;
}

long plan_dilution(double peak_absorbance_estimate, double instrument_max) {
    if (!(peak_absorbance_estimate > 0.0))
        throw InvalidArgumentError("peak absorbance estimate must be > 0");
    if (!(instrument_max > 0.0)) throw InvalidArgumentError("instrument maximum must be > 0");
    const double ratio = peak_absorbance_estimate / instrument_max;
    const long d = static_cast<long>(std::ceil(ratio - 1e-12));
    return std::max(1L, d);
}

} // namespace oor

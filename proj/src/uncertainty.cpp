#include "oor/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oor/csv_io.hpp"

namespace oor {

ToleranceSet ToleranceSet::zero() {
    ToleranceSet t;
    t.cup_ml = 0.0;
    t.scale_repro_g = 0.0;
    t.scale_linearity_g = 0.0;
    t.ruler_mm = 0.0;
    t.precipitation_loss_frac = 0.0;
    t.spectrophotometer_bands.clear();
    return t;
}

void ToleranceSet::validate() const {
    if (cup_ml < 0.0 || scale_repro_g < 0.0 || scale_linearity_g < 0.0 || ruler_mm < 0.0 ||
        precipitation_loss_frac < 0.0)
        throw InvalidArgumentError("tolerance magnitudes must be >= 0");
    if (!(tank_footprint_m2 > 0.0)) throw InvalidArgumentError("tank footprint must be > 0");
    for (std::size_t i = 0; i < spectrophotometer_bands.size(); ++i) {
        const auto& b = spectrophotometer_bands[i];
        if (b.tol < 0.0) throw InvalidArgumentError("spectrophotometer tolerance must be >= 0");
        if (!(b.absorbance_lo < b.absorbance_hi))
            throw InvalidArgumentError("spectrophotometer band is empty");
        if (i > 0 && spectrophotometer_bands[i - 1].absorbance_hi != b.absorbance_lo)
            throw InvalidArgumentError("spectrophotometer bands must be contiguous");
    }
}

double ToleranceSet::spectro_tol_at(double absorbance) const {
    if (spectrophotometer_bands.empty()) return 0.0;
    for (const auto& b : spectrophotometer_bands)
        if (absorbance <= b.absorbance_hi) return b.tol;
    return spectrophotometer_bands.back().tol;
}

Recipe compose(const RecipeInputs& inputs) {
    return compose(inputs.ref, inputs.dyes, inputs.scatterer, inputs.tank, inputs.options);
}

namespace {

Additive perturb_additive(const Additive& additive, const ToleranceSet& tol,
                          const Perturbation& p) {
    const double path_m = additive.cuvette_path_mm / 1000.0;
    const double d_nominal = additive.dilution ? additive.dilution->factor() : 1.0;

    double d_perturbed = 1.0;
    if (additive.dilution) {
        const double base = additive.dilution->base_ml + p.cup * tol.cup_ml;
        const double total = additive.dilution->total_ml + p.cup * tol.cup_ml;
        if (!(base > 0.0))
            throw RangeError("cup perturbation drives the dilution base volume to zero");
        d_perturbed = total / base;
    }

    const double precip_gain = additive.role == AdditiveRole::scatterer
                                   ? 1.0 + p.precipitation * tol.precipitation_loss_frac
                                   : 1.0;

    std::vector<double> values(additive.base_spectrum.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        // Reconstruct the diluted absorbance readout, offset it within its
        // band, then convert back with the perturbed dilution.
        const double c = additive.base_spectrum.values()[i];
        const double absorbance = c * path_m / (std::numbers::ln10 * d_nominal);
        const double offset = p.spectro * tol.spectro_tol_at(absorbance);
        const double perturbed = std::max(0.0, absorbance + offset);
        values[i] = std::numbers::ln10 * perturbed / path_m * d_perturbed * precip_gain;
    }

    Additive out = additive;
    out.base_spectrum = additive.base_spectrum.with_values(std::move(values));
    if (out.role == AdditiveRole::scatterer && out.base_mass_g) {
        const double mass = *out.base_mass_g + p.scale_repro * tol.scale_repro_g +
                            p.scale_linearity * tol.scale_linearity_g;
        if (!(mass > 0.0))
            throw RangeError("scale perturbation drives the initial scatterer mass to zero");
        out.base_mass_g = mass;
    }
    return out;
}

struct SourceAxis {
    double Perturbation::* field;
    double lo;
    double hi;
};

std::vector<SourceAxis> active_sources(const ToleranceSet& tol) {
    std::vector<SourceAxis> axes;
    if (tol.cup_ml > 0.0) axes.push_back({&Perturbation::cup, -1.0, 1.0});
    if (tol.scale_repro_g > 0.0) axes.push_back({&Perturbation::scale_repro, -1.0, 1.0});
    if (tol.scale_linearity_g > 0.0) axes.push_back({&Perturbation::scale_linearity, -1.0, 1.0});
    if (tol.ruler_mm > 0.0) axes.push_back({&Perturbation::ruler, -1.0, 1.0});
    if (tol.precipitation_loss_frac > 0.0)
        axes.push_back({&Perturbation::precipitation, 0.0, 1.0});
    bool spectro = false;
    for (const auto& b : tol.spectrophotometer_bands) spectro = spectro || b.tol > 0.0;
    if (spectro) axes.push_back({&Perturbation::spectro, -1.0, 1.0});
    return axes;
}

std::vector<AdditiveVariation> init_variations(const RecipeInputs& inputs,
                                               const std::vector<double>& nominal) {
    std::vector<AdditiveVariation> vars;
    for (std::size_t i = 0; i < inputs.dyes.size(); ++i) {
        AdditiveVariation v;
        v.name = inputs.dyes[i].name;
        v.role = AdditiveRole::dye;
        v.unit = "ml";
        v.nominal = v.min = v.max = nominal[i];
        vars.push_back(std::move(v));
    }
    AdditiveVariation s;
    s.name = inputs.scatterer.name;
    s.role = AdditiveRole::scatterer;
    s.unit = "g";
    s.nominal = s.min = s.max = nominal.back();
    vars.push_back(std::move(s));
    return vars;
}

void finalize_variation(AdditiveVariation& v) {
    v.variation_percent =
        v.nominal > 0.0 ? (v.max - v.min) / (2.0 * v.nominal) * 100.0 : 0.0;
}

// Sorted-sample quantile with linear interpolation.
double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t idx = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(idx);
    if (idx + 1 < sorted.size()) return sorted[idx] * (1.0 - frac) + sorted[idx + 1] * frac;
    return sorted[idx];
}

} // namespace

RecipeInputs apply_perturbation(const RecipeInputs& inputs, const ToleranceSet& tol,
                                const Perturbation& p) {
    tol.validate();
    RecipeInputs out = inputs;
    for (auto& dye : out.dyes) dye = perturb_additive(dye, tol, p);
    out.scatterer = perturb_additive(out.scatterer, tol, p);
    const double delta_l = p.ruler * tol.ruler_mm * tol.tank_footprint_m2; // mm * m^2 = liters
    out.tank.volume_l = inputs.tank.volume_l + delta_l;
    if (!(out.tank.volume_l > 0.0))
        throw RangeError("ruler perturbation drives the tank volume to zero");
    return out;
}

std::vector<double> recipe_quantities(const Recipe& recipe) {
    std::vector<double> q;
    for (const auto& entry : recipe.additives)
        q.push_back(entry.role == AdditiveRole::dye ? entry.volume_ml : entry.mass_g);
    return q;
}

VariationReport propagate_corners(const RecipeInputs& inputs, const ToleranceSet& tol) {
    tol.validate();
    const auto axes = active_sources(tol);
    if (axes.size() > kMaxCornerSources)
        throw InvalidArgumentError("corner propagation supports at most 8 tolerance sources");

    const auto nominal = recipe_quantities(compose(inputs));
    auto vars = init_variations(inputs, nominal);

    VariationReport report;
    report.method = "corner";
    report.sample_count = std::size_t{1} << axes.size();

    std::exception_ptr last_failure;
    std::size_t succeeded = 0;
    for (std::size_t corner = 0; corner < report.sample_count; ++corner) {
        Perturbation p;
        bool all_low = true, all_high = true;
        for (std::size_t s = 0; s < axes.size(); ++s) {
            const bool high = (corner >> s) & 1u;
            p.*(axes[s].field) = high ? axes[s].hi : axes[s].lo;
            all_low = all_low && !high;
            all_high = all_high && high;
        }
        try {
            const auto q = recipe_quantities(compose(apply_perturbation(inputs, tol, p)));
            for (std::size_t i = 0; i < vars.size(); ++i) {
                vars[i].min = std::min(vars[i].min, q[i]);
                vars[i].max = std::max(vars[i].max, q[i]);
                if (all_low) vars[i].accumulated_low = q[i];
                if (all_high) vars[i].accumulated_high = q[i];
            }
            ++succeeded;
        } catch (const Error& e) {
            ++report.failed_samples;
            report.warnings.push_back("corner " + std::to_string(corner) + " failed: " + e.what());
            last_failure = std::current_exception();
        }
    }
    if (succeeded == 0 && last_failure) std::rethrow_exception(last_failure);

    for (auto& v : vars) finalize_variation(v);
    report.additives = std::move(vars);
    return report;
}

std::vector<double> mc_sample(const RecipeInputs& inputs, const ToleranceSet& tol,
                              std::uint64_t seed, std::uint64_t sample_index) {
    std::seed_seq seq{static_cast<unsigned>(seed & 0xffffffffu),
                      static_cast<unsigned>(seed >> 32),
                      static_cast<unsigned>(sample_index & 0xffffffffu),
                      static_cast<unsigned>(sample_index >> 32)};
    std::mt19937_64 rng(seq);
    auto uniform01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto symmetric = [&] { return 2.0 * uniform01() - 1.0; };

    Perturbation p;
    p.cup = symmetric();
    p.scale_repro = symmetric();
    p.scale_linearity = symmetric();
    p.ruler = symmetric();
    p.precipitation = uniform01();
    p.spectro = symmetric();

    return recipe_quantities(compose(apply_perturbation(inputs, tol, p)));
}

VariationReport propagate_mc(const RecipeInputs& inputs, const ToleranceSet& tol,
                             std::size_t n_samples, std::uint64_t seed) {
    tol.validate();
    if (n_samples < 1) throw InvalidArgumentError("at least one Monte Carlo sample is required");

    const auto nominal = recipe_quantities(compose(inputs));
    auto vars = init_variations(inputs, nominal);

    VariationReport report;
    report.method = "mc";
    report.sample_count = n_samples;
    report.seed = seed;

    std::vector<std::vector<double>> samples(vars.size());
    std::exception_ptr last_failure;
    for (std::size_t i = 0; i < n_samples; ++i) {
        try {
            const auto q = mc_sample(inputs, tol, seed, i);
            for (std::size_t j = 0; j < vars.size(); ++j) samples[j].push_back(q[j]);
        } catch (const Error& e) {
            ++report.failed_samples;
            report.warnings.push_back("sample " + std::to_string(i) + " failed: " + e.what());
            last_failure = std::current_exception();
        }
    }
    if (samples[0].empty() && last_failure) std::rethrow_exception(last_failure);

    for (std::size_t j = 0; j < vars.size(); ++j) {
        auto& values = samples[j];
        std::sort(values.begin(), values.end());
        if (!values.empty()) {
            vars[j].min = std::min(vars[j].min, values.front());
            vars[j].max = std::max(vars[j].max, values.back());
            vars[j].p2_5 = quantile(values, 0.025);
            vars[j].p50 = quantile(values, 0.5);
            vars[j].p97_5 = quantile(values, 0.975);
        }
        finalize_variation(vars[j]);
    }
    report.additives = std::move(vars);
    return report;
}

double DecayModel::relative_attenuation(double t_min) const {
    return plateau_frac + (1.0 - plateau_frac) * std::exp(-t_min / time_constant_min);
}

namespace {

// Residual of the plateau-decay model at a given tau, with the plateau
// eliminated in closed form (linear in f) and clamped to [0, 1].
struct ProjectedFit {
    double f = 0.0;
    double residual2 = 0.0;
};

ProjectedFit project_plateau(const std::vector<std::pair<double, double>>& samples, double tau) {
    double uu = 0.0, uy = 0.0;
    for (const auto& [t, r] : samples) {
        const double e = std::exp(-t / tau);
        const double u = 1.0 - e;
        uu += u * u;
        uy += u * (r - e);
    }
    double f = uu > 0.0 ? uy / uu : 0.0;
    f = std::clamp(f, 0.0, 1.0);
    double res = 0.0;
    for (const auto& [t, r] : samples) {
        const double e = std::exp(-t / tau);
        const double d = f + (1.0 - f) * e - r;
        res += d * d;
    }
    return {f, res};
}

} // namespace

DecayModel fit_decay(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2) throw FitError("decay fit needs at least two samples");
    double t_min_seen = std::numeric_limits<double>::infinity(), t_max_seen = 0.0;
    double r_first = 0.0, r_last = 0.0;
    for (const auto& [t, r] : samples) {
        if (!(std::isfinite(t) && t >= 0.0)) throw FitError("sample times must be >= 0");
        if (!(r > 0.0 && r <= 1.0)) throw FitError("relative attenuation must be in (0, 1]");
        if (t < t_min_seen) {
            t_min_seen = t;
            r_first = r;
        }
        if (t >= t_max_seen) {
            t_max_seen = t;
            r_last = r;
        }
    }
    if (!(t_max_seen > t_min_seen)) throw FitError("samples need at least two distinct times");
    if (!(r_last < r_first)) throw FitError("samples are non-decreasing; nothing to fit");

    // Variable projection over tau: coarse log grid, then golden-section
    // refinement around the best cell.
    const double lo = std::log(t_max_seen * 1e-3);
    const double hi = std::log(t_max_seen * 1e3);
    const std::size_t n_grid = 400;
    double best_log_tau = lo;
    double best_res = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= n_grid; ++i) {
        const double log_tau = lo + (hi - lo) * static_cast<double>(i) / n_grid;
        const double res = project_plateau(samples, std::exp(log_tau)).residual2;
        if (res < best_res) {
            best_res = res;
            best_log_tau = log_tau;
        }
    }
    const double cell = (hi - lo) / n_grid;
    double a = best_log_tau - cell, b = best_log_tau + cell;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = project_plateau(samples, std::exp(c)).residual2;
    double fd = project_plateau(samples, std::exp(d)).residual2;
    for (int iter = 0; iter < 200; ++iter) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = project_plateau(samples, std::exp(c)).residual2;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = project_plateau(samples, std::exp(d)).residual2;
        }
    }
    const double tau = std::exp(0.5 * (a + b));
    const auto fit = project_plateau(samples, tau);
    return DecayModel{fit.f, tau, 1.0};
}

double decay_at(const DecayModel& model, double t_min, std::vector<double> shake_events_min) {
    const double t = std::max(0.0, t_min);
    std::sort(shake_events_min.begin(), shake_events_min.end());
    double level = 1.0;
    double t_prev = 0.0;
    for (double s : shake_events_min) {
        if (!(s >= 0.0) || s >= t) continue;
        level = model.plateau_frac +
                (level - model.plateau_frac) * std::exp(-(s - t_prev) / model.time_constant_min);
        level += model.restore_frac * (1.0 - level);
        t_prev = s;
    }
    return model.plateau_frac +
           (level - model.plateau_frac) * std::exp(-(t - t_prev) / model.time_constant_min);
}

} // namespace oor

#include "oor/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oor {

std::string to_string(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::attenuation: return "attenuation";
        case SpectrumKind::absorption: return "absorption";
        case SpectrumKind::scattering: return "scattering";
        case SpectrumKind::absorbance: return "absorbance";
    }
    throw InvalidArgumentError("unknown spectrum kind");
}

SpectrumKind spectrum_kind_from_string(const std::string& name) {
    if (name == "attenuation") return SpectrumKind::attenuation;
    if (name == "absorption") return SpectrumKind::absorption;
    if (name == "scattering") return SpectrumKind::scattering;
    if (name == "absorbance") return SpectrumKind::absorbance;
    throw ParseError("unknown spectrum kind: '" + name + "'");
}

Grid::Grid(double lo, double hi, double step) : lo_nm(lo), hi_nm(hi), step_nm(step) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && std::isfinite(step)))
        throw InvalidArgumentError("grid bounds must be finite");
    if (!(lo < hi)) throw InvalidArgumentError("grid requires lo < hi");
    if (!(step > 0.0)) throw InvalidArgumentError("grid requires step > 0");
    const double intervals = (hi - lo) / step;
    const double rounded = std::round(intervals);
    if (std::abs(intervals - rounded) > 1e-9)
        throw InvalidArgumentError("grid span must be divisible by step");
    n_points_ = static_cast<std::size_t>(rounded) + 1;
}

std::vector<double> Grid::wavelengths() const {
    std::vector<double> w(n_points_);
    for (std::size_t i = 0; i < n_points_; ++i) w[i] = wavelength(i);
    return w;
}

Spectrum::Spectrum(std::vector<double> wavelengths_nm, std::vector<double> values,
                   SpectrumKind kind, std::string meta)
    : wavelengths_nm_(std::move(wavelengths_nm)),
      values_(std::move(values)),
      kind_(kind),
      meta_(std::move(meta)) {
    if (wavelengths_nm_.size() != values_.size())
        throw DimensionError("wavelength and value counts differ");
    if (wavelengths_nm_.size() < 2)
        throw InvalidArgumentError("spectrum needs at least two points");
    double prev = -1.0;
    for (double w : wavelengths_nm_) {
        if (!std::isfinite(w) || w < kMinWavelengthNm || w > kMaxWavelengthNm)
            throw InvalidArgumentError("wavelength outside [350, 800] nm");
        if (w <= prev) throw InvalidArgumentError("wavelengths must be strictly increasing");
        prev = w;
    }
    const bool nonnegative = kind_ != SpectrumKind::absorbance;
    for (double v : values_) {
        if (!std::isfinite(v)) throw InvalidArgumentError("spectrum values must be finite");
        if (nonnegative && v < 0.0)
            throw InvalidArgumentError("coefficient spectra must be non-negative");
    }
}

bool Spectrum::covers(double lo_nm, double hi_nm) const {
    return min_wavelength_nm() <= lo_nm && hi_nm <= max_wavelength_nm();
}

double Spectrum::value_at(double wavelength_nm) const {
    if (wavelength_nm < min_wavelength_nm() || wavelength_nm > max_wavelength_nm())
        throw CoverageError("wavelength outside measured range");
    auto it = std::lower_bound(wavelengths_nm_.begin(), wavelengths_nm_.end(), wavelength_nm);
    std::size_t j = static_cast<std::size_t>(it - wavelengths_nm_.begin());
    if (j < wavelengths_nm_.size() && wavelengths_nm_[j] == wavelength_nm) return values_[j];
    // strictly between knots j-1 and j
    const double w0 = wavelengths_nm_[j - 1], w1 = wavelengths_nm_[j];
    const double t = (wavelength_nm - w0) / (w1 - w0);
    return values_[j - 1] * (1.0 - t) + values_[j] * t;
}

bool Spectrum::same_grid(const Spectrum& other) const {
    return wavelengths_nm_ == other.wavelengths_nm_;
}

bool Spectrum::on_grid(const Grid& grid) const {
    if (size() != grid.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (wavelengths_nm_[i] != grid.wavelength(i)) return false;
    return true;
}

Spectrum Spectrum::with_values(std::vector<double> values) const {
    return Spectrum(wavelengths_nm_, std::move(values), kind_, meta_);
}

Spectrum Spectrum::with_kind(SpectrumKind kind) const {
    return Spectrum(wavelengths_nm_, values_, kind, meta_);
}

Spectrum resample(const Spectrum& s, const Grid& grid) {
    if (!s.covers(grid.lo_nm, grid.hi_nm))
        throw CoverageError("spectrum does not cover the target grid");
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = s.value_at(grid.wavelength(i));
    return Spectrum(grid.wavelengths(), std::move(values), s.kind(), s.meta());
}

double integrate(const Spectrum& s, double lo_nm, double hi_nm) {
    if (lo_nm > hi_nm) throw CoverageError("integration range is empty");
    if (!s.covers(lo_nm, hi_nm))
        throw CoverageError("integration range outside spectrum coverage");
    if (lo_nm == hi_nm) return 0.0;

    const auto& w = s.wavelengths_nm();
    const auto& v = s.values();
    double prev_w = lo_nm;
    double prev_v = s.value_at(lo_nm);
    double sum = 0.0;
    auto it = std::upper_bound(w.begin(), w.end(), lo_nm);
    for (; it != w.end() && *it < hi_nm; ++it) {
        const std::size_t j = static_cast<std::size_t>(it - w.begin());
        sum += 0.5 * (prev_v + v[j]) * (*it - prev_w);
        prev_w = *it;
        prev_v = v[j];
    }
    sum += 0.5 * (prev_v + s.value_at(hi_nm)) * (hi_nm - prev_w);
    return sum;
}

NormalizationResult normalize_standard(const Spectrum& s) {
    if (s.kind() != SpectrumKind::attenuation && s.kind() != SpectrumKind::absorption)
        throw InvalidArgumentError("normalize_standard requires an attenuation or absorption spectrum");
    const double integral = integrate(s, kStandardIntegralLoNm, kStandardIntegralHiNm);
    if (!(integral > 0.0))
        throw DegenerateSpectrumError("spectrum integrates to zero over 400-700 nm");
    const double factor = integral / kStandardIntegralValue;
    std::vector<double> values = s.values();
    for (double& x : values) x /= factor;
    return {s.with_values(std::move(values)), factor};
}

Spectrum lin_combine(const std::vector<double>& weights, const std::vector<Spectrum>& spectra) {
    if (spectra.empty()) throw InvalidArgumentError("lin_combine needs at least one spectrum");
    if (weights.size() != spectra.size())
        throw DimensionError("weight count does not match spectrum count");
    for (double wgt : weights)
        if (!(wgt >= 0.0)) throw InvalidArgumentError("lin_combine weights must be >= 0");
    for (std::size_t i = 1; i < spectra.size(); ++i) {
        if (!spectra[i].same_grid(spectra[0]))
            throw GridMismatchError("spectra are not on a common grid");
        if (spectra[i].kind() != spectra[0].kind())
            throw GridMismatchError("spectra kinds differ");
    }
    std::vector<double> values(spectra[0].size(), 0.0);
    for (std::size_t i = 0; i < spectra.size(); ++i) {
        const auto& v = spectra[i].values();
        for (std::size_t j = 0; j < values.size(); ++j) values[j] += weights[i] * v[j];
    }
    return Spectrum(spectra[0].wavelengths_nm(), std::move(values), spectra[0].kind());
}

Spectrum from_absorbance(const Spectrum& absorbance, double cuvette_path_mm,
                         double dilution_factor, double max_absorbance) {
    if (absorbance.kind() != SpectrumKind::absorbance)
        throw InvalidArgumentError("from_absorbance requires an absorbance spectrum");
    if (!(cuvette_path_mm > 0.0)) throw InvalidArgumentError("cuvette path must be > 0");
    if (!(dilution_factor >= 1.0)) throw InvalidArgumentError("dilution factor must be >= 1");
    const double path_m = cuvette_path_mm / 1000.0;
    std::vector<double> values(absorbance.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double a = absorbance.values()[i];
        if (a > max_absorbance)
            throw RangeError("absorbance exceeds the instrument maximum; redilute the sample");
        if (a < 0.0) throw RangeError("absorbance must be non-negative");
        values[i] = std::numbers::ln10 * a / path_m * dilution_factor;
    }
    return Spectrum(absorbance.wavelengths_nm(), std::move(values),
                    SpectrumKind::attenuation, absorbance.meta());
}

} // namespace oor

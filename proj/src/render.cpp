#include "oor/render.hpp"

#include <cmath>

namespace oor {

void BandSet::validate() const {
    for (const Band& band : {r, g, b}) {
        if (!(band.lo_nm < band.hi_nm)) throw InvalidArgumentError("channel band is empty");
        if (band.lo_nm < 400.0 || band.hi_nm > 700.0)
            throw InvalidArgumentError("channel bands must lie within [400, 700] nm");
    }
}

void Image::validate() const {
    if (width == 0 || height == 0) throw DimensionError("image has zero extent");
    if (pixels.size() != width * height * 3)
        throw DimensionError("image buffer does not match its dimensions");
    for (double v : pixels)
        if (!(v >= 0.0 && v <= 1.0))
            throw InvalidArgumentError("image values must be linear-light in [0, 1]");
}

void DistanceMap::validate() const {
    if (width == 0 || height == 0) throw DimensionError("distance map has zero extent");
    if (meters.size() != width * height)
        throw DimensionError("distance buffer does not match its dimensions");
    for (double v : meters)
        if (!std::isfinite(v) || v < 0.0)
            throw InvalidArgumentError("distances must be finite and >= 0");
}

std::array<double, 3> channel_coefficients(const Spectrum& attenuation, const BandSet& bands) {
    bands.validate();
    if (attenuation.kind() != SpectrumKind::attenuation)
        throw InvalidArgumentError("channel_coefficients expects an attenuation spectrum");
    auto mean = [&](const Band& band) {
        return integrate(attenuation, band.lo_nm, band.hi_nm) / (band.hi_nm - band.lo_nm);
    };
    return {mean(bands.r), mean(bands.g), mean(bands.b)};
}

std::array<double, 3> channel_coefficients(const Spectrum& attenuation,
                                           const std::array<Spectrum, 3>& sensitivities) {
    if (attenuation.kind() != SpectrumKind::attenuation)
        throw InvalidArgumentError("channel_coefficients expects an attenuation spectrum");
    std::array<double, 3> out{};
    for (std::size_t ch = 0; ch < 3; ++ch) {
        const Spectrum& s = sensitivities[ch];
        if (!s.same_grid(attenuation))
            throw GridMismatchError("sensitivity curve is not on the spectrum grid");
        std::vector<double> weighted(s.size());
        for (std::size_t i = 0; i < weighted.size(); ++i)
            weighted[i] = s.values()[i] * attenuation.values()[i];
        const Spectrum prod(s.wavelengths_nm(), std::move(weighted), SpectrumKind::attenuation);
        const double lo = s.min_wavelength_nm(), hi = s.max_wavelength_nm();
        const double norm = integrate(s, lo, hi);
        if (!(norm > 0.0)) throw DegenerateSpectrumError("sensitivity curve integrates to zero");
        out[ch] = integrate(prod, lo, hi) / norm;
    }
    return out;
}

Image attenuate(const SceneInput& scene, const std::array<double, 3>& coeffs) {
    scene.image.validate();
    scene.distance.validate();
    if (scene.image.width != scene.distance.width || scene.image.height != scene.distance.height)
        throw DimensionError("image and distance map dimensions differ");
    for (double c : coeffs)
        if (!(c >= 0.0)) throw RangeError("attenuation coefficients must be >= 0");
    for (double a : scene.ambient_scale)
        if (!(a >= 0.0)) throw RangeError("ambient scale must be >= 0");

    Image out;
    out.width = scene.image.width;
    out.height = scene.image.height;
    out.pixels.resize(scene.image.pixels.size());
    const std::size_t n = out.width * out.height;
    for (std::size_t p = 0; p < n; ++p) {
        const double x = scene.distance.meters[p];
        for (std::size_t ch = 0; ch < 3; ++ch) {
            const double v =
                scene.image.pixels[p * 3 + ch] * scene.ambient_scale[ch] * std::exp(-coeffs[ch] * x);
            out.pixels[p * 3 + ch] = std::min(1.0, std::max(0.0, v));
        }
    }
    return out;
}

} // namespace oor

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "oor/spectrum.hpp"

namespace oor {

// Wavelength interval in nm, used as a box-shaped channel sensitivity.
struct Band {
    double lo_nm = 0.0;
    double hi_nm = 0.0;
};

// R/G/B channel sensitivities. The camera response is unknown, so the
// default is honest box bands over thirds of the visual range.
struct BandSet {
    Band r{600.0, 700.0};
    Band g{500.0, 600.0};
    Band b{400.0, 500.0};

    void validate() const;
};

// Linear-light RGB image, row-major, values in [0, 1].
struct Image {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> pixels; // width * height * 3

    double& at(std::size_t x, std::size_t y, std::size_t ch) {
        return pixels[(y * width + x) * 3 + ch];
    }
    double at(std::size_t x, std::size_t y, std::size_t ch) const {
        return pixels[(y * width + x) * 3 + ch];
    }

    void validate() const;
};

// Per-pixel path length through water, in meters.
struct DistanceMap {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> meters;

    void validate() const;
};

struct SceneInput {
    Image image;
    DistanceMap distance;
    std::array<double, 3> ambient_scale{1.0, 1.0, 1.0};
};

// Band-averaged attenuation coefficients in 1/m: integral of c over the
// band divided by the band width.
std::array<double, 3> channel_coefficients(const Spectrum& attenuation, const BandSet& bands);

// Same with explicit sensitivity curves: integral of c * s / integral of s.
std::array<double, 3> channel_coefficients(const Spectrum& attenuation,
                                           const std::array<Spectrum, 3>& sensitivities);

// Direct-beam attenuation preview: out = in * ambient * exp(-c * x),
// clamped to [0, 1]. Purely per-pixel.
Image attenuate(const SceneInput& scene, const std::array<double, 3>& coeffs);

} // namespace oor

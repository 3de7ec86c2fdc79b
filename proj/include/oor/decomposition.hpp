#pragma once

#include <cstddef>

#include "oor/spectrum.hpp"

namespace oor {

struct DecompositionResult {
    Spectrum absorption;
    Spectrum scattering;
    double anchor_wavelength_nm = 0.0;
    double scatter_scale = 0.0;
    std::size_t clamped_points = 0; // negative-absorption points clamped to zero
};

// Splits a measured attenuation spectrum into absorption and scattering:
// the attenuation minimum marks where absorption drops out, so the
// scatterer reference shape is anchored there, scaled to pass through it,
// and subtracted. Residual negatives (measurement noise) clamp to zero.
// Ties on the minimum break towards the smallest wavelength.
DecompositionResult split(const Spectrum& attenuation, const Spectrum& scatter_shape);

} // namespace oor

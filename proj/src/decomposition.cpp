#include "oor/decomposition.hpp"

namespace oor {

DecompositionResult split(const Spectrum& attenuation, const Spectrum& scatter_shape) {
    if (attenuation.kind() != SpectrumKind::attenuation)
        throw InvalidArgumentError("split expects an attenuation spectrum");
    if (scatter_shape.kind() != SpectrumKind::scattering)
        throw InvalidArgumentError("split expects a scattering reference shape");
    if (!attenuation.same_grid(scatter_shape))
        throw GridMismatchError("attenuation and scatter shape are not on the same grid");
    for (double v : scatter_shape.values())
        if (!(v > 0.0))
            throw DegenerateSpectrumError("scatter shape must be strictly positive on the grid");

    const auto& c = attenuation.values();
    const auto& shape = scatter_shape.values();

    std::size_t anchor = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] < c[anchor]) anchor = i;

    const double scatter_scale = c[anchor] / shape[anchor];

    std::vector<double> scattering(c.size());
    std::vector<double> absorption(c.size());
    std::size_t clamped = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        scattering[i] = scatter_scale * shape[i];
        double a = c[i] - scattering[i];
        if (a < 0.0) {
            a = 0.0;
            ++clamped;
        }
        absorption[i] = a;
    }

    return DecompositionResult{
        Spectrum(attenuation.wavelengths_nm(), std::move(absorption), SpectrumKind::absorption,
                 attenuation.meta()),
        Spectrum(attenuation.wavelengths_nm(), std::move(scattering), SpectrumKind::scattering,
                 attenuation.meta()),
        attenuation.wavelengths_nm()[anchor],
        scatter_scale,
        clamped,
    };
}

} // namespace oor

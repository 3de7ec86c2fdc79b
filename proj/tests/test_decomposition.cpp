#include <doctest.h>

#include <cmath>
#include <random>

#include "oor/decomposition.hpp"
#include "test_helpers.hpp"

using namespace oor;
using oor::testing::gaussian_dye;
using oor::testing::linear_scatter_shape;
using oor::testing::make_spectrum;

namespace {

const Grid g = Grid::canonical();

Spectrum shape() { return linear_scatter_shape(g); }

} // namespace

TEST_CASE("split: pure scatterer") {
    const Spectrum sh = shape();
    std::vector<double> c(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) c[i] = 2.0 * sh.values()[i];
    const auto res = split(make_spectrum(g, c), sh);
    CHECK(res.scatter_scale == 2.0);
    CHECK(res.clamped_points == 0);
    for (double a : res.absorption.values()) CHECK(a == 0.0);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(res.scattering.values()[i] == doctest::Approx(c[i]).epsilon(1e-15));
}

TEST_CASE("split: pure dye whose minimum is zero") {
    const Spectrum dye = gaussian_dye(g, 550, 30, 5.0, 1e-3); // clipped tails are exactly 0
    const auto res = split(dye, shape());
    CHECK(res.scatter_scale == 0.0);
    for (double b : res.scattering.values()) CHECK(b == 0.0);
    CHECK(res.absorption.values() == dye.values());
}

TEST_CASE("split recovers a synthesized absorption + scattering mix") {
    const Spectrum sh = shape();
    // absorber that is exactly zero at 700 nm, where the combined minimum
    // lands because the shape decreases with wavelength
    std::vector<double> a_true(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w = g.wavelength(i);
        const double gauss = 6.0 * std::exp(-0.5 * std::pow((w - 520) / 40.0, 2));
        const double at700 = 6.0 * std::exp(-0.5 * std::pow((700 - 520) / 40.0, 2));
        a_true[i] = std::max(0.0, gauss - at700);
    }
    const double beta = 1.75;
    std::vector<double> c(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) c[i] = a_true[i] + beta * sh.values()[i];

    const auto res = split(make_spectrum(g, c), sh);
    CHECK(res.anchor_wavelength_nm == 700.0);
    CHECK(res.scatter_scale == doctest::Approx(beta).epsilon(1e-6));
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(res.absorption.values()[i] == doctest::Approx(a_true[i]).epsilon(1e-6));
}

TEST_CASE("split: reconstruction differs from input only at clamped points") {
    std::mt19937_64 rng(880);
    std::uniform_real_distribution<double> noise(-0.05, 0.3);
    const Spectrum sh = shape();
    std::vector<double> c(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        c[i] = std::max(0.0, 0.9 * sh.values()[i] + noise(rng));
    const auto res = split(make_spectrum(g, c), sh);
    std::size_t clamped_seen = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double recon = res.absorption.values()[i] + res.scattering.values()[i];
        if (std::abs(recon - c[i]) > 1e-9) {
            ++clamped_seen;
            CHECK(res.absorption.values()[i] == 0.0);
            CHECK(recon >= c[i]); // clamping only ever raises the reconstruction
        }
    }
    CHECK(clamped_seen == res.clamped_points);
}

TEST_CASE("split homogeneity") {
    const Spectrum sh = shape();
    std::vector<double> c(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w = g.wavelength(i);
        c[i] = 1.2 * sh.values()[i] + 4.0 * std::exp(-0.5 * std::pow((w - 620) / 25.0, 2));
    }
    const double k = 3.0;
    std::vector<double> kc(c);
    for (double& v : kc) v *= k;

    const auto base = split(make_spectrum(g, c), sh);
    const auto scaled = split(make_spectrum(g, kc), sh);
    CHECK(scaled.scatter_scale == doctest::Approx(k * base.scatter_scale).epsilon(1e-12));
    CHECK(scaled.clamped_points == base.clamped_points);
    CHECK(scaled.anchor_wavelength_nm == base.anchor_wavelength_nm);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(scaled.absorption.values()[i] ==
              doctest::Approx(k * base.absorption.values()[i]).epsilon(1e-12));
        CHECK(scaled.scattering.values()[i] ==
              doctest::Approx(k * base.scattering.values()[i]).epsilon(1e-12));
    }
}

TEST_CASE("split: anchor ties break to the smallest wavelength") {
    std::vector<double> flat(g.size(), 1.0);
    const auto res = split(make_spectrum(g, flat), shape());
    CHECK(res.anchor_wavelength_nm == 400.0);
}

TEST_CASE("split rejects bad inputs") {
    const Spectrum sh = shape();
    std::vector<double> c(g.size(), 1.0);
    const Spectrum att = make_spectrum(g, c);
    CHECK_THROWS_AS(split(att.with_kind(SpectrumKind::absorption), sh), InvalidArgumentError);
    std::vector<double> with_zero(g.size(), 1.0);
    with_zero[10] = 0.0;
    CHECK_THROWS_AS(split(att, make_spectrum(g, with_zero, SpectrumKind::scattering)),
                    DegenerateSpectrumError);
    const Grid other(400, 700, 4);
    std::vector<double> short_shape(other.size(), 1.0);
    CHECK_THROWS_AS(split(att, make_spectrum(other, short_shape, SpectrumKind::scattering)),
                    GridMismatchError);
}

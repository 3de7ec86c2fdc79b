#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oor/csv_io.hpp"
#include "oor/spectrum.hpp"
#include "test_helpers.hpp"

using namespace oor;

TEST_CASE("grid invariants") {
    const Grid g = Grid::canonical();
    CHECK(g.size() == 151);
    CHECK(g.wavelength(0) == 400.0);
    CHECK(g.wavelength(150) == 700.0);
    CHECK_THROWS_AS(Grid(700, 400, 2), InvalidArgumentError);
    CHECK_THROWS_AS(Grid(400, 700, -1), InvalidArgumentError);
    CHECK_THROWS_AS(Grid(400, 700, 7), InvalidArgumentError); // 300/7 not integral
}

TEST_CASE("spectrum invariants") {
    CHECK_THROWS_AS(Spectrum({500, 400}, {1, 1}, SpectrumKind::attenuation), InvalidArgumentError);
    CHECK_THROWS_AS(Spectrum({300, 400}, {1, 1}, SpectrumKind::attenuation), InvalidArgumentError);
    CHECK_THROWS_AS(Spectrum({400, 500}, {1, -1}, SpectrumKind::attenuation), InvalidArgumentError);
    CHECK_THROWS_AS(Spectrum({400, 500}, {1}, SpectrumKind::attenuation), DimensionError);
    // absorbance may dip below zero (instrument noise)
    CHECK_NOTHROW(Spectrum({400, 500}, {-0.001, 0.5}, SpectrumKind::absorbance));
}

TEST_CASE("resample identity on matching grid") {
    const Grid g(400, 700, 50);
    const Spectrum s = testing::make_spectrum(g, {1, 2, 3, 4, 5, 6, 7});
    const Spectrum r = resample(s, g);
    CHECK(r.values() == s.values());
    CHECK(r.wavelengths_nm() == s.wavelengths_nm());
}

TEST_CASE("resample forces linear interpolation") {
    const Spectrum s({400, 700}, {1.0, 4.0}, SpectrumKind::attenuation);
    const Spectrum r = resample(s, Grid(400, 700, 150));
    REQUIRE(r.size() == 3);
    CHECK(r.values()[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.values()[1] == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(r.values()[2] == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("resample refuses extrapolation") {
    const Spectrum s({450, 700}, {1.0, 2.0}, SpectrumKind::attenuation);
    CHECK_THROWS_AS(resample(s, Grid::canonical()), CoverageError);
}

TEST_CASE("resample matches independent per-point interpolation oracle") {
    std::mt19937_64 rng(7001);
    std::uniform_real_distribution<double> val(0.0, 10.0);
    for (int rep = 0; rep < 20; ++rep) {
        // random piecewise-linear spectrum on an irregular knot set
        std::vector<double> knots{380.0};
        while (knots.back() < 720.0)
            knots.push_back(knots.back() + 1.0 + val(rng));
        std::vector<double> values;
        for (std::size_t i = 0; i < knots.size(); ++i) values.push_back(val(rng));
        const Spectrum s(knots, values, SpectrumKind::attenuation);

        const Grid g(400, 700, 4);
        const Spectrum r = resample(s, g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.wavelength(i);
            std::size_t j = 0;
            while (knots[j + 1] < x) ++j;
            const double expect =
                values[j] + (x - knots[j]) / (knots[j + 1] - knots[j]) * (values[j + 1] - values[j]);
            CHECK(r.values()[i] == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("resample twice on one grid is the identity, exactly") {
    std::mt19937_64 rng(7002);
    std::uniform_real_distribution<double> val(0.0, 5.0);
    std::vector<double> knots, values;
    for (double w = 390; w <= 710; w += 3.7) {
        knots.push_back(w);
        values.push_back(val(rng));
    }
    const Spectrum s(knots, values, SpectrumKind::absorption);
    const Grid g = Grid::canonical();
    const Spectrum once = resample(s, g);
    const Spectrum twice = resample(once, g);
    CHECK(once.values() == twice.values());
}

TEST_CASE("integrate: constant and triangle") {
    const Grid g = Grid::canonical();
    std::vector<double> flat(g.size(), 2.5);
    CHECK(integrate(testing::make_spectrum(g, flat), 400, 700) == doctest::Approx(300 * 2.5));

    std::vector<double> tri(g.size());
    const double h = 4.0;
    for (std::size_t i = 0; i < g.size(); ++i) tri[i] = h * (g.wavelength(i) - 400.0) / 300.0;
    CHECK(integrate(testing::make_spectrum(g, tri), 400, 700) == doctest::Approx(150 * h));
}

TEST_CASE("integrate handles partial segments") {
    const Spectrum s({400, 500, 600, 700}, {1, 3, 3, 1}, SpectrumKind::attenuation);
    // over [450, 650]: 0.5*(2+3)*50 + 0.5*(3+3)*100 + 0.5*(3+2)*50 = 125+300+125
    CHECK(integrate(s, 450, 650) == doctest::Approx(550.0).epsilon(1e-12));
    CHECK(integrate(s, 450, 450) == 0.0);
    CHECK_THROWS_AS(integrate(s, 390, 500), CoverageError);
}

TEST_CASE("integrate matches fine Riemann oracle") {
    std::mt19937_64 rng(7003);
    std::uniform_real_distribution<double> val(0.0, 8.0);
    const Grid g = Grid::canonical();
    std::vector<double> values(g.size());
    for (double& v : values) v = val(rng);
    const Spectrum s = testing::make_spectrum(g, values);

    const double exact = integrate(s, 403.0, 691.0);
    double riemann = 0.0;
    const double h = 0.01;
    for (double x = 403.0; x + h <= 691.0 + 1e-12; x += h)
        riemann += 0.5 * (s.value_at(x) + s.value_at(std::min(691.0, x + h))) * h;
    CHECK(exact == doctest::Approx(riemann).epsilon(1e-6));
}

TEST_CASE("integrate is linear") {
    std::mt19937_64 rng(7004);
    std::uniform_real_distribution<double> val(0.0, 8.0);
    const Grid g = Grid::canonical();
    std::vector<double> a(g.size()), b(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        a[i] = val(rng);
        b[i] = val(rng);
    }
    const Spectrum sa = testing::make_spectrum(g, a);
    const Spectrum sb = testing::make_spectrum(g, b);
    const double alpha = 1.7, beta = 0.3;
    const Spectrum mix = lin_combine({alpha, beta}, {sa, sb});
    const double lhs = integrate(mix, 400, 700);
    const double rhs = alpha * integrate(sa, 400, 700) + beta * integrate(sb, 400, 700);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("normalize_standard anchors") {
    const Grid g = Grid::canonical();
    std::vector<double> already(g.size(), 1000.0 / 300.0);
    auto res = normalize_standard(testing::make_spectrum(g, already));
    CHECK(res.scale_factor == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(res.spectrum.values()[i] == doctest::Approx(already[i]).epsilon(1e-12));

    std::vector<double> twice(g.size(), 2000.0 / 300.0);
    auto res2 = normalize_standard(testing::make_spectrum(g, twice));
    CHECK(res2.scale_factor == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(res2.spectrum.values()[0] == doctest::Approx(1000.0 / 300.0).epsilon(1e-12));
}

TEST_CASE("normalize_standard: integral oracle and idempotence") {
    std::mt19937_64 rng(7005);
    std::uniform_real_distribution<double> val(0.1, 900.0);
    const Grid g = Grid::canonical();
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> values(g.size());
        for (double& v : values) v = val(rng);
        auto res = normalize_standard(testing::make_spectrum(g, values));
        CHECK(integrate(res.spectrum, 400, 700) == doctest::Approx(1000.0).epsilon(1e-12));
        auto res2 = normalize_standard(res.spectrum);
        CHECK(res2.scale_factor == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(std::abs(res2.spectrum.values()[i] - res.spectrum.values()[i]) <=
                  1e-12 * std::abs(res.spectrum.values()[i]));
    }
}

TEST_CASE("normalize_standard rejects degenerate input") {
    const Grid g = Grid::canonical();
    std::vector<double> zero(g.size(), 0.0);
    CHECK_THROWS_AS(normalize_standard(testing::make_spectrum(g, zero)), DegenerateSpectrumError);
    CHECK_THROWS_AS(
        normalize_standard(testing::make_spectrum(g, zero, SpectrumKind::scattering)),
        InvalidArgumentError);
}

TEST_CASE("lin_combine basics") {
    const Grid g(400, 700, 100);
    const Spectrum a = testing::make_spectrum(g, {1, 2, 3, 4});
    const Spectrum b = testing::make_spectrum(g, {4, 3, 2, 1});
    const Spectrum first = lin_combine({1, 0}, {a, b});
    CHECK(first.values() == a.values());
    const Spectrum mean = lin_combine({0.5, 0.5}, {a, a});
    CHECK(mean.values() == a.values());

    const Spectrum other = testing::make_spectrum(Grid(400, 700, 150), {1, 2, 3});
    CHECK_THROWS_AS(lin_combine({1, 1}, {a, other}), GridMismatchError);
    CHECK_THROWS_AS(lin_combine({1, -1}, {a, b}), InvalidArgumentError);
}

TEST_CASE("lin_combine matches pointwise oracle") {
    std::mt19937_64 rng(7006);
    std::uniform_real_distribution<double> val(0.0, 5.0);
    const Grid g = Grid::canonical();
    std::vector<Spectrum> spectra;
    std::vector<double> weights;
    for (int k = 0; k < 4; ++k) {
        std::vector<double> values(g.size());
        for (double& v : values) v = val(rng);
        spectra.push_back(testing::make_spectrum(g, values));
        weights.push_back(val(rng));
    }
    const Spectrum mix = lin_combine(weights, spectra);
    for (std::size_t i = 0; i < g.size(); ++i) {
        double expect = 0.0;
        for (std::size_t k = 0; k < spectra.size(); ++k)
            expect += weights[k] * spectra[k].values()[i];
        CHECK(mix.values()[i] == expect);
    }
}

TEST_CASE("from_absorbance anchors") {
    const Grid g(400, 700, 300);
    const Spectrum a3 = testing::make_spectrum(g, {3.0, 3.0}, SpectrumKind::absorbance);
    const Spectrum c3 = from_absorbance(a3, 10.0, 1.0);
    CHECK(c3.kind() == SpectrumKind::attenuation);
    CHECK(c3.values()[0] == doctest::Approx(300.0 * std::numbers::ln10).epsilon(1e-12));
    CHECK(c3.values()[0] == doctest::Approx(690.776).epsilon(1e-5));

    const Spectrum a0 = testing::make_spectrum(g, {0.0, 0.0}, SpectrumKind::absorbance);
    CHECK(from_absorbance(a0, 10.0, 1.0).values() == std::vector<double>{0.0, 0.0});

    const Spectrum a1 = testing::make_spectrum(g, {1.0, 1.0}, SpectrumKind::absorbance);
    CHECK(from_absorbance(a1, 10.0, 4.0).values()[0] == doctest::Approx(921.034).epsilon(1e-5));
}

TEST_CASE("from_absorbance rejects out-of-range input") {
    const Grid g(400, 700, 300);
    const Spectrum high = testing::make_spectrum(g, {3.2, 1.0}, SpectrumKind::absorbance);
    CHECK_THROWS_AS(from_absorbance(high, 10.0, 1.0), RangeError);
    CHECK_NOTHROW(from_absorbance(high, 10.0, 1.0, 3.5));
    const Spectrum neg = testing::make_spectrum(g, {-0.1, 1.0}, SpectrumKind::absorbance);
    CHECK_THROWS_AS(from_absorbance(neg, 10.0, 1.0), RangeError);
    const Spectrum ok = testing::make_spectrum(g, {1.0, 1.0}, SpectrumKind::absorbance);
    CHECK_THROWS_AS(from_absorbance(ok, 0.0, 1.0), InvalidArgumentError);
    CHECK_THROWS_AS(from_absorbance(ok, 10.0, 0.5), InvalidArgumentError);
}

TEST_CASE("from_absorbance is linear in absorbance and dilution") {
    std::mt19937_64 rng(7007);
    std::uniform_real_distribution<double> val(0.0, 2.0);
    const Grid g = Grid::canonical();
    std::vector<double> a(g.size());
    for (double& v : a) v = val(rng);
    const Spectrum base = testing::make_spectrum(g, a, SpectrumKind::absorbance);
    std::vector<double> half(a);
    for (double& v : half) v *= 0.5;
    const Spectrum half_s = testing::make_spectrum(g, half, SpectrumKind::absorbance);

    const auto c1 = from_absorbance(base, 10.0, 1.0);
    const auto c2 = from_absorbance(half_s, 10.0, 2.0);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(c2.values()[i] == doctest::Approx(c1.values()[i]).epsilon(1e-12));
}

TEST_CASE("spectrum csv round trip") {
    const Grid g(400, 700, 75);
    const Spectrum s = testing::make_spectrum(g, {0.123456, 2.5, 0.0, 700.25, 1e-4});
    const std::string text = spectrum_to_csv(s);
    const Spectrum back = spectrum_from_csv(text);
    CHECK(back.wavelengths_nm() == s.wavelengths_nm());
    CHECK(back.values() == s.values());
    CHECK(back.kind() == s.kind());
    // serialization is a fixed point
    CHECK(spectrum_to_csv(back) == text);
}

TEST_CASE("spectrum csv unit handling") {
    const std::string per_mm =
        "wavelength_nm,value,kind,unit\n400,0.001,attenuation,per_mm\n700,0.002,attenuation,per_mm\n";
    const Spectrum s = spectrum_from_csv(per_mm);
    CHECK(s.values()[0] == doctest::Approx(1.0));
    CHECK(s.values()[1] == doctest::Approx(2.0));

    CHECK_THROWS_AS(spectrum_from_csv("nope\n"), ParseError);
    CHECK_THROWS_AS(
        spectrum_from_csv("wavelength_nm,value,kind,unit\n400,1,attenuation,furlong\n"),
        ParseError);
    CHECK_THROWS_AS(
        spectrum_from_csv("wavelength_nm,value,kind,unit\n400,1,attenuation,per_m\n500,1,absorption,per_m\n"),
        ParseError);
    CHECK_THROWS_AS(
        spectrum_from_csv("wavelength_nm,value,kind,unit\n400,x,attenuation,per_m\n"),
        ParseError);
}

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "oor/recipe.hpp"
#include "oor/spectrum.hpp"

namespace oor::testing {

inline Spectrum make_spectrum(const Grid& grid, const std::vector<double>& values,
                              SpectrumKind kind = SpectrumKind::attenuation) {
    return Spectrum(grid.wavelengths(), values, kind);
}

// Gaussian absorber peak clipped to zero below `floor`, so bases can have
// genuinely disjoint supports.
inline Spectrum gaussian_dye(const Grid& grid, double center_nm, double sigma_nm, double peak,
                             double floor = 0.0) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = (grid.wavelength(i) - center_nm) / sigma_nm;
        const double g = peak * std::exp(-0.5 * d * d);
        v[i] = g > floor ? g : 0.0;
    }
    return make_spectrum(grid, v);
}

// Smooth, nearly-linear decreasing curve: the shape of a particulate
// scatterer suspension.
inline Spectrum linear_scatter_shape(const Grid& grid, double at_400 = 30.0,
                                     double slope_per_nm = 0.025,
                                     SpectrumKind kind = SpectrumKind::scattering) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        v[i] = at_400 - slope_per_nm * (grid.wavelength(i) - 400.0);
    return make_spectrum(grid, v, kind);
}

inline Additive make_dye(std::string name, Spectrum base) {
    Additive a;
    a.name = std::move(name);
    a.role = AdditiveRole::dye;
    a.base_spectrum = std::move(base);
    a.base_volume_l = 1.0;
    a.standard_scale = normalize_standard(a.base_spectrum).scale_factor;
    return a;
}

inline Additive make_scatterer(std::string name, Spectrum base, double mass_g = 10.0,
                               double volume_l = 1.0) {
    Additive a;
    a.name = std::move(name);
    a.role = AdditiveRole::scatterer;
    a.base_spectrum = base.kind() == SpectrumKind::attenuation
                          ? std::move(base)
                          : base.with_kind(SpectrumKind::attenuation);
    a.base_volume_l = volume_l;
    a.base_mass_g = mass_g;
    a.standard_scale = normalize_standard(a.base_spectrum).scale_factor;
    return a;
}

// --- independent linear algebra for oracles -------------------------------
// Normal equations + Gaussian elimination with partial pivoting: a
// deliberately different route from the QR used by the implementation.

inline std::vector<double> solve_normal_equations(const std::vector<std::vector<double>>& cols,
                                                  const std::vector<double>& b) {
    const std::size_t n = cols.size();
    std::vector<std::vector<double>> ata(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < b.size(); ++k) ata[i][j] += cols[i][k] * cols[j][k];
        for (std::size_t k = 0; k < b.size(); ++k) ata[i][n] += cols[i][k] * b[k];
    }
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t pivot = p;
        for (std::size_t r = p + 1; r < n; ++r)
            if (std::abs(ata[r][p]) > std::abs(ata[pivot][p])) pivot = r;
        std::swap(ata[p], ata[pivot]);
        if (ata[p][p] == 0.0) return {}; // singular
        for (std::size_t r = 0; r < n; ++r) {
            if (r == p) continue;
            const double f = ata[r][p] / ata[p][p];
            for (std::size_t c = p; c <= n; ++c) ata[r][c] -= f * ata[p][c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = ata[i][n] / ata[i][i];
    return x;
}

inline double objective(const std::vector<std::vector<double>>& cols,
                        const std::vector<double>& x, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) {
        double r = b[k];
        for (std::size_t j = 0; j < cols.size(); ++j) r -= x[j] * cols[j][k];
        s += r * r;
    }
    return std::sqrt(s);
}

// Exhaustive active-set enumeration: unconstrained least squares on every
// support subset, keeping the feasible minimizer.
struct EnumerationResult {
    std::vector<double> weights;
    double objective = 0.0;
};

inline EnumerationResult nnls_enumerate(const std::vector<std::vector<double>>& cols,
                                        const std::vector<double>& b) {
    const std::size_t n = cols.size();
    EnumerationResult best;
    best.weights.assign(n, 0.0);
    best.objective = objective(cols, best.weights, b);
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::vector<double>> sub;
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < n; ++j)
            if (mask & (std::size_t{1} << j)) {
                sub.push_back(cols[j]);
                idx.push_back(j);
            }
        const auto z = solve_normal_equations(sub, b);
        if (z.empty()) continue;
        bool feasible = true;
        for (double v : z) feasible = feasible && v >= -1e-12;
        if (!feasible) continue;
        std::vector<double> x(n, 0.0);
        for (std::size_t k = 0; k < idx.size(); ++k) x[idx[k]] = std::max(0.0, z[k]);
        const double obj = objective(cols, x, b);
        if (obj < best.objective) {
            best.objective = obj;
            best.weights = x;
        }
    }
    return best;
}

struct RandomProblem {
    std::vector<std::vector<double>> columns;
    std::vector<double> target;
};

inline RandomProblem random_problem(std::mt19937_64& rng, std::size_t max_rows = 8,
                                    std::size_t max_cols = 3) {
    std::uniform_int_distribution<std::size_t> cols_dist(1, max_cols);
    const std::size_t n = cols_dist(rng);
    std::uniform_int_distribution<std::size_t> rows_dist(n, max_rows);
    const std::size_t m = rows_dist(rng);
    std::normal_distribution<double> gauss(0.0, 1.0);
    RandomProblem p;
    p.columns.assign(n, std::vector<double>(m));
    for (auto& col : p.columns)
        for (double& v : col) v = gauss(rng);
    p.target.resize(m);
    for (double& v : p.target) v = gauss(rng);
    return p;
}

} // namespace oor::testing

#include "oor/linalg.hpp"

#include <cmath>
#include <limits>

#include "oor/errors.hpp"

namespace oor::linalg {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

double QrSolveResult::condition_estimate() const {
    if (r_diag_abs.empty()) return 1.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double d : r_diag_abs) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

QrSolveResult qr_solve(const std::vector<std::vector<double>>& columns,
                       const std::vector<double>& rhs) {
    const std::size_t n = columns.size();
    const std::size_t m = rhs.size();
    for (const auto& col : columns)
        if (col.size() != m) throw DimensionError("qr_solve: column length mismatch");
    if (m < n) throw DimensionError("qr_solve: fewer rows than columns");

    // Working copies; A is column-major.
    std::vector<std::vector<double>> a = columns;
    std::vector<double> b = rhs;

    QrSolveResult out;
    out.r_diag_abs.resize(n, 0.0);

    std::vector<double> v(m); // Householder vector of the current column
    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < m; ++i) norm += a[k][i] * a[k][i];
        norm = std::sqrt(norm);
        out.r_diag_abs[k] = norm;
        if (norm == 0.0) {
            out.singular = true;
            continue;
        }
        const double alpha = a[k][k] >= 0.0 ? -norm : norm;
        double vnorm2 = 0.0;
        v[k] = a[k][k] - alpha;
        vnorm2 += v[k] * v[k];
        for (std::size_t i = k + 1; i < m; ++i) {
            v[i] = a[k][i];
            vnorm2 += v[i] * v[i];
        }
        a[k][k] = alpha;
        for (std::size_t i = k + 1; i < m; ++i) a[k][i] = 0.0;
        if (vnorm2 == 0.0) continue;

        for (std::size_t j = k + 1; j < n; ++j) {
            double proj = 0.0;
            for (std::size_t i = k; i < m; ++i) proj += v[i] * a[j][i];
            proj *= 2.0 / vnorm2;
            for (std::size_t i = k; i < m; ++i) a[j][i] -= proj * v[i];
        }
        double proj = 0.0;
        for (std::size_t i = k; i < m; ++i) proj += v[i] * b[i];
        proj *= 2.0 / vnorm2;
        for (std::size_t i = k; i < m; ++i) b[i] -= proj * v[i];
    }

    out.solution.assign(n, 0.0);
    if (!out.singular) {
        for (std::size_t kk = n; kk-- > 0;) {
            double s = b[kk];
            for (std::size_t j = kk + 1; j < n; ++j) s -= a[j][kk] * out.solution[j];
            out.solution[kk] = s / a[kk][kk];
        }
    }
    double rn = 0.0;
    for (std::size_t i = n; i < m; ++i) rn += b[i] * b[i];
    out.residual_norm = std::sqrt(rn);
    return out;
}

double condition_estimate(const std::vector<std::vector<double>>& columns) {
    if (columns.empty()) return 1.0;
    std::vector<double> zero(columns[0].size(), 0.0);
    return qr_solve(columns, zero).condition_estimate();
}

} // namespace oor::linalg

#pragma once

#include <cstddef>
#include <vector>

namespace oor::linalg {

// Least-squares solve of min ||A x - b|| for a dense column-major matrix
// via Householder QR without pivoting. Diagonal magnitudes of R are
// exposed so callers can screen near-dependent columns.
struct QrSolveResult {
    std::vector<double> solution;     // n entries
    std::vector<double> r_diag_abs;   // |R_kk|, n entries
    double residual_norm = 0.0;
    bool singular = false;            // some |R_kk| is exactly zero

    double condition_estimate() const; // max|R_kk| / min|R_kk|, inf if singular
};

QrSolveResult qr_solve(const std::vector<std::vector<double>>& columns,
                       const std::vector<double>& rhs);

// Condition estimate of a column set from the QR diagonal ratio.
double condition_estimate(const std::vector<std::vector<double>>& columns);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);

} // namespace oor::linalg

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "oor/errors.hpp"

namespace oor {

// Column-major design matrix for the additive fit. Columns are base
// spectra sampled on one grid; rows are grid points.
class DesignMatrix {
public:
    DesignMatrix(std::vector<std::vector<double>> columns,
                 std::vector<std::string> column_labels = {});

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }
    const std::vector<std::vector<double>>& columns() const { return columns_; }
    const std::vector<std::string>& column_labels() const { return labels_; }

    // Residual b - A*x and gradient A^T r without forming A^T A.
    std::vector<double> residual(const std::vector<double>& x, const std::vector<double>& b) const;
    std::vector<double> gradient(const std::vector<double>& r) const;

private:
    std::vector<std::vector<double>> columns_;
    std::vector<std::string> labels_;
    std::size_t rows_ = 0;
};

struct NnlsSolution {
    std::vector<double> weights;   // >= 0 exactly
    double residual_norm = 0.0;
    std::size_t iterations = 0;    // outer (column-add) iterations
    double kkt_violation = 0.0;    // relative to ||A^T b||_inf
};

inline constexpr double kNnlsDefaultTol = 1e-10;

// Active-set non-negative least squares (Lawson-Hanson): minimizes
// ||A w - b||_2 subject to w >= 0. Passive-set subproblems are solved by
// QR on the column subset; candidate columns whose projection onto the
// passive set leaves no independent component are rejected, which also
// breaks cycling. Deterministic: ties in the dual pick the lowest index.
//
// max_iter = 0 selects the default of 3 * n outer iterations.
NnlsSolution nnls(const DesignMatrix& a, const std::vector<double>& b,
                  double tol = kNnlsDefaultTol, std::size_t max_iter = 0);

} // namespace oor

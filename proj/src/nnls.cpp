#include "oor/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oor/linalg.hpp"

namespace oor {

namespace {

constexpr double kSubproblemConditionLimit = 1e12;
constexpr double kDependenceThreshold = 1e-12; // relative to column norm

} // namespace

DesignMatrix::DesignMatrix(std::vector<std::vector<double>> columns,
                           std::vector<std::string> column_labels)
    : columns_(std::move(columns)), labels_(std::move(column_labels)) {
    if (columns_.empty()) throw DimensionError("design matrix needs at least one column");
    rows_ = columns_[0].size();
    for (const auto& col : columns_) {
        if (col.size() != rows_) throw DimensionError("design matrix columns differ in length");
        for (double v : col)
            if (!std::isfinite(v)) throw InvalidArgumentError("design matrix entries must be finite");
    }
    if (rows_ < cols()) throw DimensionError("design matrix needs rows >= columns");
    if (labels_.empty()) {
        labels_.resize(cols());
        for (std::size_t j = 0; j < cols(); ++j) labels_[j] = "col" + std::to_string(j);
    } else if (labels_.size() != cols()) {
        throw DimensionError("label count does not match column count");
    }
}

std::vector<double> DesignMatrix::residual(const std::vector<double>& x,
                                           const std::vector<double>& b) const {
    std::vector<double> r = b;
    for (std::size_t j = 0; j < cols(); ++j) {
        if (x[j] == 0.0) continue;
        const auto& col = columns_[j];
        for (std::size_t i = 0; i < rows_; ++i) r[i] -= x[j] * col[i];
    }
    return r;
}

std::vector<double> DesignMatrix::gradient(const std::vector<double>& r) const {
    std::vector<double> g(cols());
    for (std::size_t j = 0; j < cols(); ++j) g[j] = linalg::dot(columns_[j], r);
    return g;
}

NnlsSolution nnls(const DesignMatrix& a, const std::vector<double>& b, double tol,
                  std::size_t max_iter) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m) throw DimensionError("target length does not match matrix rows");
    if (!(tol > 0.0)) throw InvalidArgumentError("nnls tolerance must be > 0");
    if (max_iter == 0) max_iter = 3 * n;

    // Dual threshold scale; homogeneous in b so the solve is too.
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        scale = std::max(scale, std::abs(linalg::dot(a.columns()[j], b)));
    const double entry_threshold = tol * scale;

    std::vector<double> x(n, 0.0);
    std::vector<bool> passive(n, false);
    std::vector<bool> rejected(n, false);
    std::vector<std::size_t> passive_order; // insertion order of passive columns

    NnlsSolution out;
    out.weights.assign(n, 0.0);

    auto passive_columns = [&] {
        std::vector<std::vector<double>> cols;
        cols.reserve(passive_order.size());
        for (std::size_t j : passive_order) cols.push_back(a.columns()[j]);
        return cols;
    };

    auto finish = [&] {
        const auto r = a.residual(x, b);
        const auto g = a.gradient(r);
        double violation = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (x[j] > 0.0)
                violation = std::max(violation, std::abs(g[j]));
            else
                violation = std::max(violation, std::max(0.0, g[j]));
        }
        out.weights = x;
        out.residual_norm = linalg::norm2(r);
        out.kkt_violation = scale > 0.0 ? violation / scale : violation;
        return out;
    };

    if (scale == 0.0) return finish();

    while (true) {
        const auto r = a.residual(x, b);
        const auto g = a.gradient(r);

        // Candidate with the largest positive dual; lowest index on ties.
        std::size_t candidate = n;
        double best = entry_threshold;
        for (std::size_t j = 0; j < n; ++j) {
            if (passive[j] || rejected[j]) continue;
            if (g[j] > best) {
                best = g[j];
                candidate = j;
            }
        }
        if (candidate == n) return finish();

        if (out.iterations >= max_iter)
            throw ConvergenceError("nnls exceeded " + std::to_string(max_iter) +
                                   " outer iterations");

        // Tentative add: reject the column if it is numerically dependent
        // on the passive set or its unconstrained coefficient is not
        // positive (the anti-cycling screen of the original algorithm).
        passive_order.push_back(candidate);
        auto solve = linalg::qr_solve(passive_columns(), b);
        const double col_norm = linalg::norm2(a.columns()[candidate]);
        if (solve.singular || solve.r_diag_abs.back() <= kDependenceThreshold * col_norm ||
            solve.solution.back() <= 0.0) {
            passive_order.pop_back();
            rejected[candidate] = true;
            continue;
        }
        passive[candidate] = true;
        ++out.iterations;
        rejected.assign(n, false);

        // Inner loop: back off along the segment towards the subproblem
        // solution until it is feasible, dropping variables pinned at zero.
        while (true) {
            bool feasible = true;
            for (double z : solve.solution)
                if (z <= 0.0) { feasible = false; break; }
            if (feasible) break;

            double alpha = std::numeric_limits<double>::infinity();
            std::size_t blocking = passive_order.size();
            for (std::size_t k = 0; k < passive_order.size(); ++k) {
                const double z = solve.solution[k];
                if (z > 0.0) continue;
                const double xk = x[passive_order[k]];
                const double denom = xk - z;
                const double t = denom > 0.0 ? xk / denom : 0.0;
                if (t < alpha) {
                    alpha = t;
                    blocking = k;
                }
            }
            for (std::size_t k = 0; k < passive_order.size(); ++k) {
                const std::size_t j = passive_order[k];
                x[j] += alpha * (solve.solution[k] - x[j]);
            }
            std::vector<std::size_t> kept;
            for (std::size_t k = 0; k < passive_order.size(); ++k) {
                const std::size_t j = passive_order[k];
                if (k != blocking && x[j] > 0.0) {
                    kept.push_back(j);
                } else {
                    x[j] = 0.0;
                    passive[j] = false;
                }
            }
            passive_order = std::move(kept);
            if (passive_order.empty()) {
                solve.solution.clear();
                break;
            }
            solve = linalg::qr_solve(passive_columns(), b);
            if (solve.singular || solve.condition_estimate() > kSubproblemConditionLimit)
                throw RankError("passive-set subproblem is numerically singular");
        }
        for (std::size_t k = 0; k < passive_order.size(); ++k)
            x[passive_order[k]] = solve.solution[k];
    }
}

} // namespace oor

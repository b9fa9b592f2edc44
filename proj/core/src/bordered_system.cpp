#include "qubvp/bordered_system.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "qubvp/errors.hpp"

namespace qubvp {

BorderedJacobian::BorderedJacobian(int dim, int intervals)
    : dim_(dim),
      intervals_(intervals),
      left_(static_cast<std::size_t>(intervals), Matrix::Zero(dim, dim)),
      right_(static_cast<std::size_t>(intervals), Matrix::Zero(dim, dim)),
      origin_(Matrix::Zero(dim, dim)),
      infinity_(Matrix::Zero(dim, dim)) {
    if (dim < 1 || intervals < 1) {
        throw ConfigError("structured matrix needs dim >= 1 and at least one interval");
    }
}

Vector BorderedJacobian::multiply(const Vector& x) const {
    const Eigen::Index d = dim_;
    Vector y(size());
    for (int n = 0; n < intervals_; ++n) {
        y.segment(n * d, d) = left(n) * x.segment(n * d, d) + right(n) * x.segment((n + 1) * d, d);
    }
    y.segment(intervals_ * d, d) =
        origin_ * x.segment(0, d) + infinity_ * x.segment(intervals_ * d, d);
    return y;
}

Matrix BorderedJacobian::to_dense() const {
    const Eigen::Index d = dim_;
    Matrix dense = Matrix::Zero(size(), size());
    for (int n = 0; n < intervals_; ++n) {
        dense.block(n * d, n * d, d, d) = left(n);
        dense.block(n * d, (n + 1) * d, d, d) = right(n);
    }
    dense.block(intervals_ * d, 0, d, d) = origin_;
    dense.block(intervals_ * d, intervals_ * d, d, d) += infinity_;
    return dense;
}

double BorderedJacobian::max_abs_entry() const {
    double m = std::max(origin_.cwiseAbs().maxCoeff(), infinity_.cwiseAbs().maxCoeff());
    for (int n = 0; n < intervals_; ++n) {
        m = std::max({m, left(n).cwiseAbs().maxCoeff(), right(n).cwiseAbs().maxCoeff()});
    }
    return m;
}

namespace {

// Gaussian elimination with partial pivoting on the first `pivots` columns
// of `panel`. Rows below the pivots end up zero in those columns.
void eliminate(Matrix& panel, Vector& rhs, Eigen::Index pivots, double threshold,
               Eigen::Index column_offset) {
    const Eigen::Index rows = panel.rows();
    for (Eigen::Index j = 0; j < pivots; ++j) {
        Eigen::Index p = j;
        double best = std::abs(panel(j, j));
        for (Eigen::Index i = j + 1; i < rows; ++i) {
            const double v = std::abs(panel(i, j));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (!(best > threshold)) {
            throw LinearSolveError("singular Newton matrix: pivot " + std::to_string(best) +
                                   " in column " + std::to_string(column_offset + j));
        }
        if (p != j) {
            panel.row(j).swap(panel.row(p));
            std::swap(rhs[j], rhs[p]);
        }
        for (Eigen::Index i = j + 1; i < rows; ++i) {
            const double factor = panel(i, j) / panel(j, j);
            if (factor == 0.0) continue;
            panel.row(i).tail(panel.cols() - j) -= factor * panel.row(j).tail(panel.cols() - j);
            rhs[i] -= factor * rhs[j];
        }
    }
}

struct EliminatedStep {
    Matrix rows;  // d x (2d or 3d): [pivot block | next block | far block]
    Vector rhs;
};

}  // namespace

Vector solve_linear(const BorderedJacobian& jac, const Vector& rhs) {
    const Eigen::Index d = jac.dim();
    const int n_int = jac.intervals();
    if (rhs.size() != jac.size()) {
        throw ConfigError("right-hand side has " + std::to_string(rhs.size()) +
                          " entries, expected " + std::to_string(jac.size()));
    }
    const double scale = jac.max_abs_entry();
    const double threshold = 1e3 * std::numeric_limits<double>::epsilon() * scale;

    // Boundary rows carried down the band: coefficients on the current
    // column, on column N, and their right-hand side.
    Matrix carry_cur = jac.boundary_origin();
    Matrix carry_far = jac.boundary_infinity();
    Vector carry_rhs = rhs.segment(n_int * d, d);

    std::vector<EliminatedStep> steps(static_cast<std::size_t>(n_int));
    for (int k = 0; k < n_int; ++k) {
        const bool last = k + 1 == n_int;
        const Eigen::Index width = last ? 2 * d : 3 * d;
        const Eigen::Index far = width - d;

        Matrix panel = Matrix::Zero(2 * d, width);
        Vector prhs(2 * d);
        panel.block(0, 0, d, d) = jac.left(k);
        panel.block(0, last ? far : d, d, d) = jac.right(k);
        prhs.head(d) = rhs.segment(k * d, d);

        panel.block(d, 0, d, d) = carry_cur;
        panel.block(d, far, d, d) += carry_far;
        prhs.tail(d) = carry_rhs;

        eliminate(panel, prhs, d, threshold, k * d);

        steps[static_cast<std::size_t>(k)] = {panel.topRows(d), prhs.head(d)};
        if (!last) carry_cur = panel.block(d, d, d, d);
        carry_far = panel.block(d, far, d, d);
        carry_rhs = prhs.tail(d);
    }

    // What remains of the carried rows couples only to column N.
    eliminate(carry_far, carry_rhs, d, threshold, n_int * d);

    Vector x(jac.size());
    x.segment(n_int * d, d) =
        carry_far.triangularView<Eigen::Upper>().solve(carry_rhs);
    const auto x_far = x.segment(n_int * d, d);

    for (int k = n_int - 1; k >= 0; --k) {
        const EliminatedStep& s = steps[static_cast<std::size_t>(k)];
        const bool last = k + 1 == n_int;
        const Eigen::Index far = s.rows.cols() - d;
        Vector y = s.rhs - s.rows.block(0, far, d, d) * x_far;
        if (!last) y -= s.rows.block(0, d, d, d) * x.segment((k + 1) * d, d);
        x.segment(k * d, d) = s.rows.block(0, 0, d, d).triangularView<Eigen::Upper>().solve(y);
    }
    return x;
}

}  // namespace qubvp

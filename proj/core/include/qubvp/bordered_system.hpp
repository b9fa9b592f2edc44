#pragma once

#include <vector>

#include "qubvp/problem.hpp"

namespace qubvp {

/**
 * Newton matrix of the two-point scheme, d(N+1) x d(N+1).
 *
 * Block row n < N holds the interval equation n with block `left(n)` in
 * column n and `right(n)` in column n+1. The last block row holds the
 * boundary equations with `boundary_origin()` in column 0 and
 * `boundary_infinity()` in column N. Everything else is zero.
 */
class BorderedJacobian {
public:
    BorderedJacobian(int dim, int intervals);

    int dim() const noexcept { return dim_; }
    int intervals() const noexcept { return intervals_; }
    Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(dim_) * (intervals_ + 1); }

    Matrix& left(int n) { return left_[static_cast<std::size_t>(n)]; }
    const Matrix& left(int n) const { return left_[static_cast<std::size_t>(n)]; }
    Matrix& right(int n) { return right_[static_cast<std::size_t>(n)]; }
    const Matrix& right(int n) const { return right_[static_cast<std::size_t>(n)]; }

    Matrix& boundary_origin() { return origin_; }
    const Matrix& boundary_origin() const { return origin_; }
    Matrix& boundary_infinity() { return infinity_; }
    const Matrix& boundary_infinity() const { return infinity_; }

    Vector multiply(const Vector& x) const;
    Matrix to_dense() const;
    double max_abs_entry() const;

private:
    int dim_;
    int intervals_;
    std::vector<Matrix> left_;
    std::vector<Matrix> right_;
    Matrix origin_;
    Matrix infinity_;
};

/**
 * Solves J x = rhs in O(N d^3) time and O(N d^2) memory.
 *
 * Block column k is eliminated with partial pivoting among the d rows of
 * interval k and the d carried boundary rows. The carried rows only ever
 * touch columns k, k+1 and N, so no fill escapes that window. Throws
 * LinearSolveError when a pivot falls below 1e3 * eps * max|J|.
 */
Vector solve_linear(const BorderedJacobian& jac, const Vector& rhs);

}  // namespace qubvp

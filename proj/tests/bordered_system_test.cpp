#include <random>

#include <gtest/gtest.h>

#include "qubvp/bordered_system.hpp"
#include "qubvp/errors.hpp"
#include "test_support.hpp"

namespace qubvp {
namespace {

using testing::dense_solve;

Matrix random_block(int d, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = scale * unit(rng);
    return m;
}

// Shaped like a Newton matrix of the scheme: -I - small, I - small, then a
// boundary row that pins a mix of U_0 and U_N.
BorderedJacobian random_instance(int d, int n_int, std::mt19937_64& rng) {
    BorderedJacobian jac(d, n_int);
    const Matrix eye = Matrix::Identity(d, d);
    for (int n = 0; n < n_int; ++n) {
        jac.left(n) = -eye + random_block(d, rng, 0.3);
        jac.right(n) = eye + random_block(d, rng, 0.3);
    }
    jac.boundary_origin() = eye + random_block(d, rng, 0.4);
    jac.boundary_infinity() = random_block(d, rng, 0.4);
    return jac;
}

Vector random_vector(Eigen::Index size, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Vector v(size);
    for (Eigen::Index i = 0; i < size; ++i) v[i] = unit(rng);
    return v;
}

TEST(BorderedJacobian, DenseLayout) {
    BorderedJacobian jac(2, 3);
    for (int n = 0; n < 3; ++n) {
        jac.left(n) = Matrix::Constant(2, 2, -(n + 1));
        jac.right(n) = Matrix::Constant(2, 2, n + 1);
    }
    jac.boundary_origin() = Matrix::Constant(2, 2, 7);
    jac.boundary_infinity() = Matrix::Constant(2, 2, 9);
    const Matrix dense = jac.to_dense();
    ASSERT_EQ(dense.rows(), 8);
    EXPECT_EQ(dense(2, 2), -2.0);
    EXPECT_EQ(dense(2, 4), 2.0);
    EXPECT_EQ(dense(2, 0), 0.0);
    EXPECT_EQ(dense(6, 0), 7.0);
    EXPECT_EQ(dense(7, 7), 9.0);
    EXPECT_EQ(dense(6, 3), 0.0);
    EXPECT_EQ(jac.max_abs_entry(), 9.0);

    std::mt19937_64 rng(3);
    const Vector x = random_vector(8, rng);
    EXPECT_LT((jac.multiply(x) - dense * x).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SolveLinear, IdentityStructure) {
    // f = 0, g = U_0: the solve is a forward substitution.
    const int n_int = 8;
    BorderedJacobian jac(1, n_int);
    for (int n = 0; n < n_int; ++n) {
        jac.left(n) = -Matrix::Identity(1, 1);
        jac.right(n) = Matrix::Identity(1, 1);
    }
    jac.boundary_origin() = Matrix::Identity(1, 1);
    jac.boundary_infinity() = Matrix::Zero(1, 1);

    std::mt19937_64 rng(8);
    const Vector rhs = random_vector(n_int + 1, rng);
    const Vector x = solve_linear(jac, rhs);
    const Vector expected = dense_solve(jac.to_dense(), rhs);
    EXPECT_LT((x - expected).cwiseAbs().maxCoeff(), 1e-12);

    double acc = rhs[n_int];
    EXPECT_NEAR(x[0], acc, 1e-12);
    for (int n = 0; n < n_int; ++n) {
        acc += rhs[n];
        EXPECT_NEAR(x[n + 1], acc, 1e-12);
    }
}

TEST(SolveLinear, MatchesDenseLuOnRandomInstances) {
    std::mt19937_64 rng(0xb0bde7);
    std::uniform_int_distribution<int> pick_d(1, 3);
    std::uniform_int_distribution<int> pick_n(2, 32);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = pick_d(rng);
        const int n_int = pick_n(rng);
        const auto jac = random_instance(d, n_int, rng);
        const Vector rhs = random_vector(jac.size(), rng);
        const Vector x = solve_linear(jac, rhs);
        const Vector ref = dense_solve(jac.to_dense(), rhs);
        const double rel = (x - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff();
        ASSERT_LT(rel, 1e-10) << "d=" << d << " N=" << n_int;
        const double res = (jac.multiply(x) - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff();
        ASSERT_LT(res, 1e-10);
    }
}

TEST(SolveLinear, NeedsPivotingAcrossBoundaryRows) {
    // Zero interval blocks in the first column force the boundary row to pivot.
    BorderedJacobian jac(2, 4);
    for (int n = 0; n < 4; ++n) {
        jac.left(n) = -Matrix::Identity(2, 2);
        jac.right(n) = Matrix::Identity(2, 2);
    }
    jac.left(0).setZero();
    jac.left(0)(1, 1) = -1.0;
    jac.boundary_origin() << 1.0, 0.0, 0.0, 0.0;
    jac.boundary_infinity() << 0.0, 0.0, 0.0, 1.0;
    jac.right(0) << 1.0, 0.5, 0.0, 1.0;

    const Matrix dense = jac.to_dense();
    ASSERT_GT(std::abs(dense.determinant()), 1e-8);
    std::mt19937_64 rng(4);
    const Vector rhs = random_vector(jac.size(), rng);
    EXPECT_LT((solve_linear(jac, rhs) - dense_solve(dense, rhs)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SolveLinear, DuplicateBoundaryRowIsSingular) {
    std::mt19937_64 rng(5);
    auto jac = random_instance(2, 6, rng);
    jac.boundary_origin().row(1) = jac.boundary_origin().row(0);
    jac.boundary_infinity().row(1) = jac.boundary_infinity().row(0);
    const Vector rhs = random_vector(jac.size(), rng);
    EXPECT_THROW((void)solve_linear(jac, rhs), LinearSolveError);
}

TEST(SolveLinear, RejectsWrongRhsLength) {
    std::mt19937_64 rng(6);
    const auto jac = random_instance(2, 4, rng);
    EXPECT_THROW((void)solve_linear(jac, Vector::Zero(jac.size() - 1)), ConfigError);
}

}  // namespace
}  // namespace qubvp

#pragma once

// Test-only oracles. Nothing here calls into the structured solver or the
// library's Jacobian assembly.

#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "qubvp/problem.hpp"

namespace qubvp::testing {

/// Central-difference Jacobian of an arbitrary vector function.
inline Matrix brute_force_jacobian(const std::function<Vector(const Vector&)>& fn, const Vector& x,
                                   double h = 1e-6) {
    const Vector f0 = fn(x);
    Matrix jac(f0.size(), x.size());
    Vector plus = x;
    Vector minus = x;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        plus[j] = x[j] + h;
        minus[j] = x[j] - h;
        jac.col(j) = (fn(plus) - fn(minus)) / (2.0 * h);
        plus[j] = minus[j] = x[j];
    }
    return jac;
}

/// Dense LU with partial pivoting.
inline Vector dense_solve(const Matrix& a, const Vector& b) { return a.partialPivLu().solve(b); }

/// Random smooth nonlinear system of dimension d with separated-plus-coupled
/// boundary rows. Coefficients are drawn once from `rng`.
inline BvpSystem random_system(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    Matrix lin(d, d);
    Matrix quad(d, d);
    Matrix g0(d, d);
    Matrix gi(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            lin(i, j) = coef(rng);
            quad(i, j) = 0.3 * coef(rng);
            g0(i, j) = coef(rng);
            gi(i, j) = coef(rng);
        }
    }
    BvpSystem sys;
    sys.dim = d;
    sys.rhs = [lin, quad](double x, const Vector& u) {
        Vector f = lin * u + std::sin(x) * Vector::Ones(u.size());
        for (Eigen::Index i = 0; i < u.size(); ++i) f[i] += quad.row(i).dot(u.cwiseProduct(u)) + std::sin(u[i]);
        return f;
    };
    sys.boundary = [g0, gi](const Vector& u0, const Vector& ui) {
        Vector g = g0 * u0 + gi * ui;
        g[0] += u0[0] * u0[0];
        return g;
    };
    return sys;
}

inline StateMatrix random_states(int rows, int cols, std::mt19937_64& rng, double lo = -2.0,
                                 double hi = 2.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    StateMatrix s(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) s(i, j) = dist(rng);
    return s;
}

inline Vector flatten(const StateMatrix& s) {
    return Eigen::Map<const Vector>(s.data(), s.size());
}

inline StateMatrix unflatten(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
    return Eigen::Map<const StateMatrix>(v.data(), rows, cols);
}

/// max_ij |a - b| / max(1, max |b|)
inline double relative_error(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace qubvp::testing

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qubvp/mesh.hpp"

namespace qubvp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// (N+1) x d node states; row n is U_n.
using StateMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Partial derivatives of the boundary function with respect to u(0) and u(inf).
struct BoundaryJacobian {
    Matrix at_origin;
    Matrix at_infinity;
};

using RhsFunction = std::function<Vector(double x, const Vector& u)>;
using BoundaryFunction = std::function<Vector(const Vector& u0, const Vector& u_inf)>;
using RhsJacobian = std::function<Matrix(double x, const Vector& u)>;
using BoundaryJacobianFunction =
    std::function<BoundaryJacobian(const Vector& u0, const Vector& u_inf)>;

/**
 * First-order system du/dx = f(x, u) on [0, inf) with g(u(0), u(inf)) = 0.
 *
 * f is only ever called at finite midpoints x_{n+1/2}. The analytic
 * Jacobians are optional; when absent, forward differences are used.
 * f and g must be pure functions.
 */
struct BvpSystem {
    int dim = 0;
    RhsFunction rhs;
    BoundaryFunction boundary;
    RhsJacobian rhs_jacobian;                      // optional
    BoundaryJacobianFunction boundary_jacobian;    // optional

    /// Analytic df/du if supplied, finite differences otherwise.
    Matrix jacobian_f(double x, const Vector& u) const;

    /// Analytic (dg/du0, dg/du_inf) if supplied, finite differences otherwise.
    BoundaryJacobian jacobian_g(const Vector& u0, const Vector& u_inf) const;
};

/// Initial Newton iterate: a profile for the finite nodes and a value for x_N.
struct InitialGuess {
    std::function<Vector(double x)> eval;
    std::function<Vector(const Mesh& mesh)> at_infinity;

    /// Samples the guess on every node of `mesh`.
    StateMatrix sample(const Mesh& mesh) const;
};

/// Forward differences with a fixed step: column j = (f(x, u + eps e_j) - f(x, u)) / h,
/// where h is the representable step (u_j + eps) - u_j actually taken.
Matrix fd_jacobian_f(const BvpSystem& sys, double x, const Vector& u, double eps);

/// Forward differences with step sqrt(machine eps) * max(1, |u_j|) per column.
Matrix fd_jacobian_f(const BvpSystem& sys, double x, const Vector& u);

/// Forward differences of g over (u0, u_inf) jointly, same step rule as above.
BoundaryJacobian fd_jacobian_g(const BvpSystem& sys, const Vector& u0, const Vector& u_inf);

enum class DiagnosticKind {
    BadDimension,
    DimensionMismatch,
    NonFiniteOutput,
    MissingFunction,
    JacobianDisagreement,
};

struct Diagnostic {
    DiagnosticKind kind;
    std::string message;
};

/// Probes f, g and any analytic Jacobians. Returns an empty list for a well-formed system.
std::vector<Diagnostic> validate(const BvpSystem& sys);

}  // namespace qubvp

#include "qubvp/problem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "qubvp/errors.hpp"

namespace qubvp {

namespace {

const double kSqrtEps = std::sqrt(std::numeric_limits<double>::epsilon());

double column_step(double value) { return kSqrtEps * std::max(1.0, std::abs(value)); }

void require_finite(const Vector& v, const char* what) {
    if (!v.allFinite()) {
        throw EvaluationError(std::string(what) + " returned a non-finite value", 0);
    }
}

}  // namespace

Matrix BvpSystem::jacobian_f(double x, const Vector& u) const {
    if (rhs_jacobian) return rhs_jacobian(x, u);
    return fd_jacobian_f(*this, x, u);
}

BoundaryJacobian BvpSystem::jacobian_g(const Vector& u0, const Vector& u_inf) const {
    if (boundary_jacobian) return boundary_jacobian(u0, u_inf);
    return fd_jacobian_g(*this, u0, u_inf);
}

StateMatrix InitialGuess::sample(const Mesh& mesh) const {
    const int n_int = mesh.intervals();
    const Vector first = eval(0.0);
    StateMatrix u(n_int + 1, first.size());
    u.row(0) = first.transpose();
    for (int n = 1; n < n_int; ++n) u.row(n) = eval(mesh.finite_node(n)).transpose();
    u.row(n_int) = at_infinity(mesh).transpose();
    return u;
}

Matrix fd_jacobian_f(const BvpSystem& sys, double x, const Vector& u, double eps) {
    if (!(eps > 0.0)) throw DomainError("finite-difference step must be positive");
    const Vector f0 = sys.rhs(x, u);
    require_finite(f0, "f");
    Matrix jac(f0.size(), u.size());
    Vector probe = u;
    for (Eigen::Index j = 0; j < u.size(); ++j) {
        probe[j] = u[j] + eps;
        const double h = probe[j] - u[j];
        if (h == 0.0) throw DomainError("finite-difference step is below the resolution of u");
        const Vector f1 = sys.rhs(x, probe);
        require_finite(f1, "f");
        jac.col(j) = (f1 - f0) / h;
        probe[j] = u[j];
    }
    return jac;
}

Matrix fd_jacobian_f(const BvpSystem& sys, double x, const Vector& u) {
    const Vector f0 = sys.rhs(x, u);
    require_finite(f0, "f");
    Matrix jac(f0.size(), u.size());
    Vector probe = u;
    for (Eigen::Index j = 0; j < u.size(); ++j) {
        // Use the representable step actually taken.
        probe[j] = u[j] + column_step(u[j]);
        const double h = probe[j] - u[j];
        if (h == 0.0) throw DomainError("finite-difference step is below the resolution of u");
        const Vector f1 = sys.rhs(x, probe);
        require_finite(f1, "f");
        jac.col(j) = (f1 - f0) / h;
        probe[j] = u[j];
    }
    return jac;
}

BoundaryJacobian fd_jacobian_g(const BvpSystem& sys, const Vector& u0, const Vector& u_inf) {
    const Vector g0 = sys.boundary(u0, u_inf);
    require_finite(g0, "g");
    BoundaryJacobian jac{Matrix(g0.size(), u0.size()), Matrix(g0.size(), u_inf.size())};

    Vector probe = u0;
    for (Eigen::Index j = 0; j < u0.size(); ++j) {
        probe[j] = u0[j] + column_step(u0[j]);
        const double h = probe[j] - u0[j];
        const Vector g1 = sys.boundary(probe, u_inf);
        require_finite(g1, "g");
        jac.at_origin.col(j) = (g1 - g0) / h;
        probe[j] = u0[j];
    }
    probe = u_inf;
    for (Eigen::Index j = 0; j < u_inf.size(); ++j) {
        probe[j] = u_inf[j] + column_step(u_inf[j]);
        const double h = probe[j] - u_inf[j];
        const Vector g1 = sys.boundary(u0, probe);
        require_finite(g1, "g");
        jac.at_infinity.col(j) = (g1 - g0) / h;
        probe[j] = u_inf[j];
    }
    return jac;
}

namespace {

constexpr double kJacobianRelTol = 1e-4;

bool matrices_agree(const Matrix& analytic, const Matrix& numeric) {
    if (analytic.rows() != numeric.rows() || analytic.cols() != numeric.cols()) return false;
    for (Eigen::Index i = 0; i < analytic.rows(); ++i) {
        for (Eigen::Index j = 0; j < analytic.cols(); ++j) {
            const double scale = std::max(1.0, std::abs(analytic(i, j)));
            if (!(std::abs(analytic(i, j) - numeric(i, j)) <= kJacobianRelTol * scale)) return false;
        }
    }
    return true;
}

// Central differences: the oracle here must be more accurate than the
// tolerance it is compared against.
Matrix central_jacobian_f(const BvpSystem& sys, double x, const Vector& u) {
    const double h = 1e-6;
    Vector plus = u;
    Vector minus = u;
    Matrix jac(sys.dim, sys.dim);
    for (int j = 0; j < sys.dim; ++j) {
        plus[j] = u[j] + h;
        minus[j] = u[j] - h;
        jac.col(j) = (sys.rhs(x, plus) - sys.rhs(x, minus)) / (2.0 * h);
        plus[j] = minus[j] = u[j];
    }
    return jac;
}

BoundaryJacobian central_jacobian_g(const BvpSystem& sys, const Vector& u0, const Vector& u_inf) {
    const double h = 1e-6;
    BoundaryJacobian jac{Matrix(sys.dim, sys.dim), Matrix(sys.dim, sys.dim)};
    Vector plus = u0;
    Vector minus = u0;
    for (int j = 0; j < sys.dim; ++j) {
        plus[j] = u0[j] + h;
        minus[j] = u0[j] - h;
        jac.at_origin.col(j) = (sys.boundary(plus, u_inf) - sys.boundary(minus, u_inf)) / (2.0 * h);
        plus[j] = minus[j] = u0[j];
    }
    plus = minus = u_inf;
    for (int j = 0; j < sys.dim; ++j) {
        plus[j] = u_inf[j] + h;
        minus[j] = u_inf[j] - h;
        jac.at_infinity.col(j) = (sys.boundary(u0, plus) - sys.boundary(u0, minus)) / (2.0 * h);
        plus[j] = minus[j] = u_inf[j];
    }
    return jac;
}

}  // namespace

std::vector<Diagnostic> validate(const BvpSystem& sys) {
    std::vector<Diagnostic> out;
    if (sys.dim < 1) {
        out.push_back({DiagnosticKind::BadDimension,
                       "system dimension must be at least 1, got " + std::to_string(sys.dim)});
        return out;
    }
    if (!sys.rhs || !sys.boundary) {
        out.push_back({DiagnosticKind::MissingFunction, "f and g must both be set"});
        return out;
    }

    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> unit(-2.0, 2.0);
    auto random_state = [&] {
        Vector v(sys.dim);
        for (int i = 0; i < sys.dim; ++i) v[i] = unit(rng);
        return v;
    };

    constexpr std::array<double, 4> probe_x{0.0, 0.5, 1.0, 5.0};
    bool shape_ok = true;
    for (double x : probe_x) {
        const Vector u = random_state();
        const Vector fu = sys.rhs(x, u);
        if (fu.size() != sys.dim) {
            out.push_back({DiagnosticKind::DimensionMismatch,
                           "f returned " + std::to_string(fu.size()) + " components, expected " +
                               std::to_string(sys.dim)});
            shape_ok = false;
            break;
        }
        if (!fu.allFinite()) {
            out.push_back({DiagnosticKind::NonFiniteOutput,
                           "f returned a non-finite value at x = " + std::to_string(x)});
            shape_ok = false;
            break;
        }
    }
    {
        const Vector u0 = random_state();
        const Vector ui = random_state();
        const Vector gu = sys.boundary(u0, ui);
        if (gu.size() != sys.dim) {
            out.push_back({DiagnosticKind::DimensionMismatch,
                           "g returned " + std::to_string(gu.size()) + " components, expected " +
                               std::to_string(sys.dim)});
            shape_ok = false;
        } else if (!gu.allFinite()) {
            out.push_back({DiagnosticKind::NonFiniteOutput, "g returned a non-finite value"});
            shape_ok = false;
        }
    }
    if (!shape_ok) return out;

    if (sys.rhs_jacobian) {
        for (double x : probe_x) {
            const Vector u = random_state();
            const Matrix analytic = sys.rhs_jacobian(x, u);
            if (!matrices_agree(analytic, central_jacobian_f(sys, x, u))) {
                out.push_back({DiagnosticKind::JacobianDisagreement,
                               "analytic df/du disagrees with finite differences at x = " +
                                   std::to_string(x)});
                break;
            }
        }
    }
    if (sys.boundary_jacobian) {
        const Vector u0 = random_state();
        const Vector ui = random_state();
        const BoundaryJacobian analytic = sys.boundary_jacobian(u0, ui);
        const BoundaryJacobian numeric = central_jacobian_g(sys, u0, ui);
        if (!matrices_agree(analytic.at_origin, numeric.at_origin) ||
            !matrices_agree(analytic.at_infinity, numeric.at_infinity)) {
            out.push_back({DiagnosticKind::JacobianDisagreement,
                           "analytic dg/du disagrees with finite differences"});
        }
    }
    return out;
}

}  // namespace qubvp

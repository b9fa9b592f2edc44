#include "qubvp/models.hpp"

#include <cmath>
#include <string>

#include "qubvp/errors.hpp"

namespace qubvp::models {

BvpSystem mhd_system(double beta) {
    if (!std::isfinite(beta)) throw ConfigError("magnetic parameter must be finite");

    BvpSystem sys;
    sys.dim = 3;
    sys.rhs = [beta](double, const Vector& u) {
        Vector f(3);
        f << u[1], u[2], -u[0] * u[2] - beta * (1.0 - u[1]);
        return f;
    };
    sys.boundary = [](const Vector& u0, const Vector& u_inf) {
        Vector g(3);
        g << u0[0], u0[1], u_inf[1] - 1.0;
        return g;
    };
    sys.rhs_jacobian = [beta](double, const Vector& u) {
        Matrix j(3, 3);
        j << 0.0, 1.0, 0.0,
             0.0, 0.0, 1.0,
             -u[2], beta, -u[0];
        return j;
    };
    sys.boundary_jacobian = [](const Vector&, const Vector&) {
        BoundaryJacobian j{Matrix::Zero(3, 3), Matrix::Zero(3, 3)};
        j.at_origin(0, 0) = 1.0;
        j.at_origin(1, 1) = 1.0;
        j.at_infinity(2, 1) = 1.0;
        return j;
    };
    return sys;
}

InitialGuess mhd_initial_guess() {
    InitialGuess guess;
    guess.eval = [](double x) {
        Vector u(3);
        u << 0.5 * x, 1.0, std::exp(-x);
        return u;
    };
    guess.at_infinity = [](const Mesh& mesh) {
        const int last = mesh.intervals() - 1;
        Vector u(3);
        u << 0.5 * mesh.finite_node(last) + 0.5 * mesh.interval(last).a, 1.0, 0.0;
        return u;
    };
    return guess;
}

double wall_shear(const SolutionGrid& sol) {
    if (sol.states.cols() != 3 || sol.states.rows() < 1) {
        throw ConfigError("wall shear needs a three-component solution, got " +
                          std::to_string(sol.states.cols()) + " components");
    }
    return sol.states(0, 2);
}

}  // namespace qubvp::models

#pragma once

#include <vector>

#include "qubvp/bordered_system.hpp"
#include "qubvp/mesh.hpp"
#include "qubvp/problem.hpp"

namespace qubvp {

struct NewtonConfig {
    /// Threshold on the mean absolute update (1/(d(N+1))) sum |dU|.
    double tol = 1e-8;
    int max_iter = 50;
    /// Step-shrink factor applied while the residual grows. 1 means plain Newton.
    double damping = 1.0;

    void check() const;
};

/// Converged (or last) iterate of a Newton solve on one mesh.
struct SolutionGrid {
    Mesh mesh;
    StateMatrix states;       // (N+1) x d, row n = U_n
    int iterations = 0;       // number of linear solves performed
    bool converged = false;
    double final_update_norm = 0.0;
    std::vector<double> update_history;
};

/**
 * Residual of the scheme, length d(N+1):
 *
 *   U_{n+1} - U_n - a f(x_{n+1/2}, b U_{n+1} + c U_n),   n = 0..N-1
 *   g(U_0, U_N)                                           (last d entries)
 */
Vector residual(const BvpSystem& sys, const Mesh& mesh, const StateMatrix& states);

/// Newton matrix of `residual` at `states`.
BorderedJacobian jacobian(const BvpSystem& sys, const Mesh& mesh, const StateMatrix& states);

/// (1/len) sum |delta_i|, the termination measure.
double mean_abs_update(const Vector& delta);

/**
 * Newton iteration from `guess` until the mean absolute update is <= tol.
 *
 * Running out of iterations returns converged == false. A singular Newton
 * matrix raises LinearSolveError tagged with the iteration; an update that
 * grows past 1e6 times the first one raises DivergenceError.
 */
SolutionGrid newton_solve(const BvpSystem& sys, const Mesh& mesh, StateMatrix guess,
                          const NewtonConfig& cfg = {});

}  // namespace qubvp

#include "qubvp/newton.hpp"

#include <cmath>
#include <string>

#include "qubvp/errors.hpp"

namespace qubvp {

namespace {

constexpr double kDivergenceFactor = 1e6;
constexpr int kMaxShrinks = 30;

void check_shape(const BvpSystem& sys, const Mesh& mesh, const StateMatrix& states) {
    if (sys.dim < 1) throw ConfigError("system dimension must be at least 1");
    if (states.rows() != static_cast<Eigen::Index>(mesh.node_count()) || states.cols() != sys.dim) {
        throw ConfigError("state matrix is " + std::to_string(states.rows()) + "x" +
                          std::to_string(states.cols()) + ", expected " +
                          std::to_string(mesh.node_count()) + "x" + std::to_string(sys.dim));
    }
}

Vector midpoint_state(const IntervalCoefficients& k, const StateMatrix& states, int n) {
    return k.b * states.row(n + 1).transpose() + k.c * states.row(n).transpose();
}

StateMatrix as_states(const Vector& flat, Eigen::Index rows, Eigen::Index cols) {
    return Eigen::Map<const StateMatrix>(flat.data(), rows, cols);
}

}  // namespace

void NewtonConfig::check() const {
    if (!(tol > 0.0)) throw ConfigError("Newton tolerance must be positive");
    if (max_iter < 1) throw ConfigError("Newton max_iter must be at least 1");
    if (!(damping > 0.0 && damping <= 1.0)) throw ConfigError("Newton damping must lie in (0,1]");
}

Vector residual(const BvpSystem& sys, const Mesh& mesh, const StateMatrix& states) {
    check_shape(sys, mesh, states);
    const int n_int = mesh.intervals();
    const Eigen::Index d = sys.dim;
    Vector r(d * (n_int + 1));
    for (int n = 0; n < n_int; ++n) {
        const IntervalCoefficients& k = mesh.interval(n);
        const Vector f = sys.rhs(k.x_mid, midpoint_state(k, states, n));
        if (f.size() != d || !f.allFinite()) {
            throw EvaluationError("f failed on interval " + std::to_string(n), static_cast<std::size_t>(n));
        }
        r.segment(n * d, d) = (states.row(n + 1) - states.row(n)).transpose() - k.a * f;
    }
    const Vector g = sys.boundary(states.row(0).transpose(), states.row(n_int).transpose());
    if (g.size() != d || !g.allFinite()) {
        throw EvaluationError("g failed", static_cast<std::size_t>(n_int));
    }
    r.segment(n_int * d, d) = g;
    return r;
}

BorderedJacobian jacobian(const BvpSystem& sys, const Mesh& mesh, const StateMatrix& states) {
    check_shape(sys, mesh, states);
    const int n_int = mesh.intervals();
    const int d = sys.dim;
    const Matrix eye = Matrix::Identity(d, d);
    BorderedJacobian jac(d, n_int);
    for (int n = 0; n < n_int; ++n) {
        const IntervalCoefficients& k = mesh.interval(n);
        const Matrix jf = sys.jacobian_f(k.x_mid, midpoint_state(k, states, n));
        if (jf.rows() != d || jf.cols() != d || !jf.allFinite()) {
            throw EvaluationError("df/du failed on interval " + std::to_string(n), static_cast<std::size_t>(n));
        }
        jac.left(n) = -eye - (k.a * k.c) * jf;
        jac.right(n) = eye - (k.a * k.b) * jf;
    }
    BoundaryJacobian jg = sys.jacobian_g(states.row(0).transpose(), states.row(n_int).transpose());
    jac.boundary_origin() = std::move(jg.at_origin);
    jac.boundary_infinity() = std::move(jg.at_infinity);
    return jac;
}

double mean_abs_update(const Vector& delta) {
    if (delta.size() == 0) return 0.0;
    return delta.cwiseAbs().sum() / static_cast<double>(delta.size());
}

SolutionGrid newton_solve(const BvpSystem& sys, const Mesh& mesh, StateMatrix guess,
                          const NewtonConfig& cfg) {
    cfg.check();
    check_shape(sys, mesh, guess);
    if (!guess.allFinite()) throw ConfigError("initial guess contains non-finite entries");

    SolutionGrid out{mesh, std::move(guess), 0, false, 0.0, {}};
    const Eigen::Index rows = out.states.rows();
    const Eigen::Index cols = out.states.cols();

    Vector r = residual(sys, mesh, out.states);
    double first_norm = 0.0;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        Vector delta;
        try {
            delta = solve_linear(jacobian(sys, mesh, out.states), -r);
        } catch (const LinearSolveError& e) {
            throw LinearSolveError(std::string(e.what()) + " (Newton iteration " +
                                       std::to_string(it) + ")",
                                   it);
        }

        double step = 1.0;
        StateMatrix trial = out.states + as_states(delta, rows, cols);
        Vector r_trial = residual(sys, mesh, trial);
        if (cfg.damping < 1.0) {
            const double r_norm = r.cwiseAbs().maxCoeff();
            for (int s = 0; s < kMaxShrinks && r_trial.cwiseAbs().maxCoeff() > r_norm; ++s) {
                step *= cfg.damping;
                trial = out.states + step * as_states(delta, rows, cols);
                r_trial = residual(sys, mesh, trial);
            }
        }
        out.states = std::move(trial);
        r = std::move(r_trial);

        const double norm = step * mean_abs_update(delta);
        out.iterations = it;
        out.final_update_norm = norm;
        out.update_history.push_back(norm);
        if (it == 1) first_norm = norm;
        if (!std::isfinite(norm) || (first_norm > 0.0 && norm > kDivergenceFactor * first_norm)) {
            throw DivergenceError("Newton diverged at iteration " + std::to_string(it), it);
        }
        if (norm <= cfg.tol && step == 1.0) {
            out.converged = true;
            return out;
        }
    }
    return out;
}

}  // namespace qubvp

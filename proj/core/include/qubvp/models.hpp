#pragma once

#include "qubvp/newton.hpp"
#include "qubvp/problem.hpp"

namespace qubvp::models {

/**
 * MHD flat-plate boundary layer, u''' + u u'' + beta (1 - u') = 0 with
 * u(0) = u'(0) = 0 and u'(inf) = 1, written for (u, u', u''):
 *
 *   f = (u2, u3, -u1 u3 - beta (1 - u2)),   g = (u1(0), u2(0), u2(inf) - 1).
 *
 * beta = 0 is the Blasius problem. Analytic Jacobians are attached.
 */
BvpSystem mhd_system(double beta);

/// Blasius flat-plate problem, the beta = 0 case of mhd_system.
inline BvpSystem blasius_system() { return mhd_system(0.0); }

/**
 * (0.5 x, 1, exp(-x)) on finite nodes. The node at infinity gets
 * (0.5 x_{N-1} + 0.5 a_{N-1/2}, 1, 0).
 */
InitialGuess mhd_initial_guess();

/// Wall shear u''(0), i.e. component 3 of node 0. Throws ConfigError unless d == 3.
double wall_shear(const SolutionGrid& sol);

}  // namespace qubvp::models

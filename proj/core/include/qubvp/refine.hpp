#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qubvp/newton.hpp"

namespace qubvp {

/// Scalar quantity read off a solution, e.g. the wall shear.
using SolutionFunctional = std::function<double(const SolutionGrid&)>;

/**
 * Triangular Richardson table.
 *
 * values[g][0] is the raw functional on grid g; values[g][k] for 0 < k <= g
 * is the level-k extrapolant
 *
 *   U_{g,k} = U_{g,k-1} + (U_{g,k-1} - U_{g-1,k-1}) / (r^{p_{k-1}} - 1).
 */
struct RichardsonLadder {
    std::vector<int> grid_sizes;              // N_g, may be empty
    std::vector<std::vector<double>> values;  // row g has g+1 entries
    std::vector<double> orders;               // p_k used at each level
    int ratio = 2;

    std::size_t levels() const noexcept { return values.size(); }
    /// Most extrapolated entry U_{G,G}.
    double best() const { return values.back().back(); }
};

/// Default error-expansion exponents p_k = 2(k+1) for `count` levels.
std::vector<double> default_orders(std::size_t count);

/**
 * Prolongs a coarse solution onto a nested fine mesh for use as a Newton guess.
 *
 * Fine node r*n copies coarse node n; nodes in between are linear in the
 * reference coordinate xi. Throws ConfigError if the meshes are not nested.
 */
StateMatrix interpolate_to_refined(const SolutionGrid& coarse, const Mesh& fine);

/**
 * Solves on N0, 2 N0, ..., 2^levels N0, seeding each level with the
 * interpolated previous solution. Throws ContinuationError naming the first
 * level that fails to converge, diverges or hits a singular Newton matrix
 * (last_update_norm is NaN in the latter two cases).
 */
std::vector<SolutionGrid> continuation_solve(const BvpSystem& sys, const GridMap& map, int n0,
                                             int levels, const InitialGuess& guess,
                                             const NewtonConfig& cfg = {},
                                             WeightRule rule = WeightRule::Nodal);

/// Fills the Richardson table from raw per-grid values with refinement ratio `ratio`.
RichardsonLadder extrapolate(std::span<const double> raw, std::span<const double> orders,
                             int ratio = 2);

/// Applies `functional` to each level and extrapolates with `orders`.
RichardsonLadder richardson_ladder(std::span<const SolutionGrid> levels,
                                   const SolutionFunctional& functional,
                                   std::span<const double> orders);

/// log2((v0 - v1) / (v1 - v2)) for three consecutive doublings; empty if undefined.
std::optional<double> observed_order(double v0, double v1, double v2);

}  // namespace qubvp

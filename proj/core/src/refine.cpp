#include "qubvp/refine.hpp"

#include <cmath>
#include <string>

#include "qubvp/errors.hpp"

namespace qubvp {

std::vector<double> default_orders(std::size_t count) {
    std::vector<double> p(count);
    for (std::size_t k = 0; k < count; ++k) p[k] = 2.0 * static_cast<double>(k + 1);
    return p;
}

StateMatrix interpolate_to_refined(const SolutionGrid& coarse, const Mesh& fine) {
    const Mesh& cm = coarse.mesh;
    const int nc = cm.intervals();
    const int nf = fine.intervals();
    if (!(cm.map() == fine.map()) || nf <= nc || nf % nc != 0) {
        throw ConfigError("fine mesh (N=" + std::to_string(nf) +
                          ") is not a nested refinement of the coarse mesh (N=" +
                          std::to_string(nc) + ")");
    }
    const int r = nf / nc;
    StateMatrix out(nf + 1, coarse.states.cols());
    for (int n = 0; n < nc; ++n) {
        const auto lo = coarse.states.row(n);
        const auto hi = coarse.states.row(n + 1);
        out.row(r * n) = lo;
        for (int j = 1; j < r; ++j) {
            const double t = static_cast<double>(j) / r;
            out.row(r * n + j) = (1.0 - t) * lo + t * hi;
        }
    }
    out.row(nf) = coarse.states.row(nc);
    return out;
}

std::vector<SolutionGrid> continuation_solve(const BvpSystem& sys, const GridMap& map, int n0,
                                             int levels, const InitialGuess& guess,
                                             const NewtonConfig& cfg, WeightRule rule) {
    if (n0 < 2) throw ConfigError("continuation needs N0 >= 2, got " + std::to_string(n0));
    if (levels < 0) throw ConfigError("continuation levels must be non-negative");

    std::vector<SolutionGrid> out;
    out.reserve(static_cast<std::size_t>(levels) + 1);

    Mesh mesh = Mesh::build(map, n0, rule);
    StateMatrix start = guess.sample(mesh);
    for (int g = 0; g <= levels; ++g) {
        if (g > 0) {
            mesh = out.back().mesh.refined(2);
            start = interpolate_to_refined(out.back(), mesh);
        }
        SolutionGrid sol = [&] {
            try {
                return newton_solve(sys, mesh, std::move(start), cfg);
            } catch (const DivergenceError& e) {
                throw ContinuationError("level " + std::to_string(g) + ": " + e.what(), g, NAN);
            } catch (const LinearSolveError& e) {
                throw ContinuationError("level " + std::to_string(g) + ": " + e.what(), g, NAN);
            }
        }();
        if (!sol.converged) {
            throw ContinuationError("Newton did not converge on level " + std::to_string(g) +
                                        " (N=" + std::to_string(mesh.intervals()) +
                                        "), last update " + std::to_string(sol.final_update_norm),
                                    g, sol.final_update_norm);
        }
        out.push_back(std::move(sol));
    }
    return out;
}

RichardsonLadder extrapolate(std::span<const double> raw, std::span<const double> orders,
                             int ratio) {
    if (raw.empty()) throw ConfigError("Richardson extrapolation needs at least one value");
    if (orders.size() + 1 < raw.size()) {
        throw ConfigError("Richardson extrapolation needs " + std::to_string(raw.size() - 1) +
                          " orders, got " + std::to_string(orders.size()));
    }
    if (ratio < 2) throw ConfigError("refinement ratio must be at least 2");

    RichardsonLadder ladder;
    ladder.ratio = ratio;
    ladder.orders.assign(orders.begin(), orders.begin() + static_cast<std::ptrdiff_t>(raw.size() - 1));
    ladder.values.resize(raw.size());
    for (std::size_t g = 0; g < raw.size(); ++g) {
        auto& row = ladder.values[g];
        row.resize(g + 1);
        row[0] = raw[g];
        for (std::size_t k = 0; k < g; ++k) {
            const double fine = row[k];
            const double coarse = ladder.values[g - 1][k];
            row[k + 1] = fine + (fine - coarse) / (std::pow(ratio, orders[k]) - 1.0);
        }
    }
    return ladder;
}

RichardsonLadder richardson_ladder(std::span<const SolutionGrid> levels,
                                   const SolutionFunctional& functional,
                                   std::span<const double> orders) {
    std::vector<double> raw;
    std::vector<int> sizes;
    for (const SolutionGrid& s : levels) {
        raw.push_back(functional(s));
        sizes.push_back(s.mesh.intervals());
    }
    RichardsonLadder ladder = extrapolate(raw, orders, 2);
    ladder.grid_sizes = std::move(sizes);
    return ladder;
}

std::optional<double> observed_order(double v0, double v1, double v2) {
    const double num = v0 - v1;
    const double den = v1 - v2;
    if (den == 0.0 || num == 0.0) return std::nullopt;
    const double q = num / den;
    if (!(q > 0.0) || !std::isfinite(q)) return std::nullopt;
    return std::log2(q);
}

}  // namespace qubvp

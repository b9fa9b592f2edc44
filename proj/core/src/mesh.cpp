#include "qubvp/mesh.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "qubvp/errors.hpp"

namespace qubvp {

GridMap::GridMap(MapKind kind, double c) : kind_(kind), c_(c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ConfigError("grid map control parameter c must be positive and finite, got " +
                          std::to_string(c));
    }
}

GridMap GridMap::logarithmic(double c) { return GridMap(MapKind::Logarithmic, c); }

GridMap GridMap::algebraic(double c) { return GridMap(MapKind::Algebraic, c); }

double GridMap::at(double xi) const {
    if (!(xi >= 0.0 && xi <= 1.0)) {
        throw DomainError("grid map argument must lie in [0,1], got " + std::to_string(xi));
    }
    if (xi == 1.0) return kInfinityNode;
    switch (kind_) {
    case MapKind::Logarithmic:
        return -c_ * std::log1p(-xi);
    case MapKind::Algebraic:
        return c_ * xi / (1.0 - xi);
    }
    return 0.0;
}

double GridMap::at_fraction(std::int64_t num, std::int64_t den) const {
    if (den <= 0 || num < 0 || num > den) {
        throw DomainError("grid map fraction must lie in [0,1], got " + std::to_string(num) +
                          "/" + std::to_string(den));
    }
    if (num == den) return kInfinityNode;
    const double n = static_cast<double>(num);
    const double d = static_cast<double>(den);
    const double rest = static_cast<double>(den - num);
    switch (kind_) {
    case MapKind::Logarithmic:
        // log1p is accurate near 0, the ratio form near 1.
        if (2 * num <= den) return -c_ * std::log1p(-(n / d));
        return c_ * std::log(d / rest);
    case MapKind::Algebraic:
        // The reduced ratio rounds the same for (kn)/(k(den-num)), so refined nodes match bitwise.
        return c_ * (n / rest);
    }
    return 0.0;
}

std::string_view to_string(WeightRule rule) noexcept {
    return rule == WeightRule::Nodal ? "nodal" : "quarter";
}

std::string_view to_string(MapKind kind) noexcept {
    return kind == MapKind::Logarithmic ? "log" : "alg";
}

Mesh::Mesh(const GridMap& map, int intervals, WeightRule rule)
    : map_(map), intervals_(intervals), rule_(rule) {}

Mesh Mesh::build(const GridMap& map, int intervals, WeightRule rule) {
    if (intervals < 2) {
        throw ConfigError("mesh needs at least 2 intervals, got " + std::to_string(intervals));
    }
    Mesh mesh(map, intervals, rule);
    const std::int64_t n_int = intervals;

    mesh.nodes_.resize(static_cast<std::size_t>(intervals) + 1);
    for (std::int64_t n = 0; n <= n_int; ++n) {
        mesh.nodes_[static_cast<std::size_t>(n)] = map.at_fraction(n, n_int);
    }

    // Quarter nodes live on the reference grid with spacing 1/(4N).
    const std::int64_t quarter_den = 4 * n_int;
    mesh.coeffs_.resize(static_cast<std::size_t>(intervals));
    for (std::int64_t n = 0; n < n_int; ++n) {
        IntervalCoefficients& k = mesh.coeffs_[static_cast<std::size_t>(n)];
        k.x_quarter = map.at_fraction(4 * n + 1, quarter_den);
        k.x_mid = map.at_fraction(4 * n + 2, quarter_den);
        k.x_three_quarter = map.at_fraction(4 * n + 3, quarter_den);

        const double width = k.x_three_quarter - k.x_quarter;
        k.a = 2.0 * width;

        const bool last = n + 1 == n_int;
        if (rule == WeightRule::Nodal && !last) {
            const double left = mesh.nodes_[static_cast<std::size_t>(n)];
            const double right = mesh.nodes_[static_cast<std::size_t>(n + 1)];
            k.b = (k.x_mid - left) / (right - left);
            k.c = (right - k.x_mid) / (right - left);
        } else {
            k.b = (k.x_mid - k.x_quarter) / width;
            k.c = (k.x_three_quarter - k.x_mid) / width;
        }
    }
    return mesh;
}

double Mesh::finite_node(int n) const {
    assert(n >= 0 && n < intervals_ && "x_N is the infinity sentinel");
    return nodes_[static_cast<std::size_t>(n)];
}

Mesh Mesh::refined(int factor) const {
    if (factor < 2) {
        throw ConfigError("refinement factor must be at least 2, got " + std::to_string(factor));
    }
    return build(map_, intervals_ * factor, rule_);
}

}  // namespace qubvp

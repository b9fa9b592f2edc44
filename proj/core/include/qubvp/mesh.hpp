#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace qubvp {

/// Value stored for the node placed at infinity. It is never used in arithmetic.
inline constexpr double kInfinityNode = std::numeric_limits<double>::infinity();

enum class MapKind { Logarithmic, Algebraic };

/**
 * Grid generating function x(xi) taking [0,1] onto [0, inf].
 *
 *   Logarithmic:  x = -c ln(1 - xi)
 *   Algebraic:    x = c xi / (1 - xi)
 *
 * Both maps are strictly increasing with x(0) = 0 and x(1) = inf. More than
 * half of the reference interval lands in [0, ~c], so c sets the length scale
 * that gets fine resolution.
 */
class GridMap {
public:
    static GridMap logarithmic(double c = 2.0);
    static GridMap algebraic(double c = 2.0);

    MapKind kind() const noexcept { return kind_; }
    double scale() const noexcept { return c_; }

    /// x(xi). Throws DomainError for xi outside [0,1]; returns kInfinityNode at xi = 1.
    double at(double xi) const;

    /// x(num/den) evaluated without forming 1 - num/den, so that points near
    /// xi = 1 and refined grids (2n / 2N) reproduce the parent values bitwise.
    double at_fraction(std::int64_t num, std::int64_t den) const;

    friend bool operator==(const GridMap&, const GridMap&) = default;

private:
    GridMap(MapKind kind, double c);

    MapKind kind_;
    double c_;
};

/**
 * How the interpolation weights b, c of the midpoint state are formed.
 *
 * QuarterNode uses the quarter nodes on every interval:
 *   b = (x_{n+1/2} - x_{n+1/4}) / (x_{n+3/4} - x_{n+1/4}),  c = 1 - b.
 *
 * Nodal uses linear interpolation between the actual nodes on every finite
 * interval, b = (x_{n+1/2} - x_n) / (x_{n+1} - x_n), and falls back to the
 * quarter-node weights on the last interval whose right node is at infinity.
 * The step factor a = 2 (x_{n+3/4} - x_{n+1/4}) is the same for both rules.
 */
enum class WeightRule { Nodal, QuarterNode };

std::string_view to_string(WeightRule rule) noexcept;
std::string_view to_string(MapKind kind) noexcept;

/// Geometry and scheme coefficients of one interval [x_n, x_{n+1}].
struct IntervalCoefficients {
    double x_quarter;        // x_{n+1/4}
    double x_mid;            // x_{n+1/2}
    double x_three_quarter;  // x_{n+3/4}
    double a;                // 2 (x_{n+3/4} - x_{n+1/4})
    double b;                // weight of U_{n+1}
    double c;                // weight of U_n
};

/**
 * Quasi-uniform mesh: N intervals, N+1 nodes x_0 = 0 < ... < x_{N-1} < x_N = inf.
 *
 * Immutable after construction. Only the quarter nodes and the finite nodes
 * x_0..x_{N-1} ever enter a formula; the last node is a sentinel.
 */
class Mesh {
public:
    static Mesh build(const GridMap& map, int intervals,
                      WeightRule rule = WeightRule::Nodal);

    int intervals() const noexcept { return intervals_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    const GridMap& map() const noexcept { return map_; }
    WeightRule weight_rule() const noexcept { return rule_; }

    /// Reference coordinate n / N.
    double xi(int n) const noexcept { return static_cast<double>(n) / intervals_; }

    /// All N+1 node coordinates, the last one being kInfinityNode.
    std::span<const double> nodes() const noexcept { return nodes_; }

    /// Finite node x_n for n < N. Asserts on the infinity sentinel.
    double finite_node(int n) const;

    std::span<const IntervalCoefficients> coefficients() const noexcept { return coeffs_; }
    const IntervalCoefficients& interval(int n) const { return coeffs_[static_cast<std::size_t>(n)]; }

    /// Same map and weight rule with factor * N intervals.
    Mesh refined(int factor) const;

private:
    Mesh(const GridMap& map, int intervals, WeightRule rule);

    GridMap map_;
    int intervals_;
    WeightRule rule_;
    std::vector<double> nodes_;
    std::vector<IntervalCoefficients> coeffs_;
};

}  // namespace qubvp

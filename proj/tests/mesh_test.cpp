#include <cmath>
#include <cstring>
#include <random>

#include <gtest/gtest.h>

#include "qubvp/errors.hpp"
#include "qubvp/mesh.hpp"

namespace qubvp {
namespace {

TEST(GridMap, LogarithmicValues) {
    const auto map = GridMap::logarithmic(2.0);
    EXPECT_EQ(map.at(0.0), 0.0);
    EXPECT_NEAR(map.at(0.5), 2.0 * std::log(2.0), 1e-15);
    EXPECT_EQ(map.at(1.0), kInfinityNode);
}

TEST(GridMap, AlgebraicValues) {
    const auto map = GridMap::algebraic(2.0);
    EXPECT_EQ(map.at(0.0), 0.0);
    EXPECT_DOUBLE_EQ(map.at(0.5), 2.0);
    EXPECT_EQ(map.at(1.0), kInfinityNode);
}

TEST(GridMap, RejectsOutOfRange) {
    const auto map = GridMap::logarithmic();
    EXPECT_THROW((void)map.at(-1e-12), DomainError);
    EXPECT_THROW((void)map.at(1.0 + 1e-12), DomainError);
    EXPECT_THROW((void)map.at(std::nan("")), DomainError);
}

TEST(GridMap, RejectsBadScale) {
    EXPECT_THROW((void)GridMap::logarithmic(0.0), ConfigError);
    EXPECT_THROW((void)GridMap::algebraic(-1.0), ConfigError);
    EXPECT_THROW((void)GridMap::logarithmic(INFINITY), ConfigError);
}

TEST(GridMap, FractionMatchesExtendedPrecision) {
    const long double c_log = 1.5L;
    const long double c_alg = 0.7L;
    const auto log_map = GridMap::logarithmic(1.5);
    const auto alg_map = GridMap::algebraic(0.7);
    for (int n = 0; n < 40; ++n) {
        const long double xi = static_cast<long double>(n) / 40.0L;
        const double log_ref = static_cast<double>(-c_log * std::log1p(-xi));
        const double alg_ref = static_cast<double>(c_alg * xi / (1.0L - xi));
        EXPECT_NEAR(log_map.at_fraction(n, 40), log_ref, 4e-16 * std::max(1.0, log_ref)) << n;
        EXPECT_NEAR(alg_map.at_fraction(n, 40), alg_ref, 4e-16 * std::max(1.0, alg_ref)) << n;
        EXPECT_NEAR(log_map.at(n / 40.0), log_ref, 1e-14 * std::max(1.0, log_ref)) << n;
    }
    EXPECT_EQ(log_map.at_fraction(40, 40), kInfinityNode);
    EXPECT_EQ(alg_map.at_fraction(40, 40), kInfinityNode);
    EXPECT_THROW((void)log_map.at_fraction(41, 40), DomainError);
    EXPECT_THROW((void)log_map.at_fraction(-1, 40), DomainError);
}

TEST(Mesh, LogarithmicLastFiniteNode) {
    const auto mesh = Mesh::build(GridMap::logarithmic(2.0), 1000);
    EXPECT_EQ(mesh.node_count(), 1001u);
    EXPECT_NEAR(mesh.finite_node(999), 2.0 * std::log(1000.0), 1e-12);
    EXPECT_NEAR(mesh.finite_node(999), 13.8155, 1e-4);
    EXPECT_EQ(mesh.nodes().back(), kInfinityNode);
}

TEST(Mesh, AlgebraicLastFiniteNode) {
    const auto mesh = Mesh::build(GridMap::algebraic(1.0), 10);
    EXPECT_DOUBLE_EQ(mesh.finite_node(9), 9.0);
}

TEST(Mesh, RejectsTooFewIntervals) {
    EXPECT_THROW((void)Mesh::build(GridMap::logarithmic(), 1), ConfigError);
    EXPECT_THROW((void)Mesh::build(GridMap::logarithmic(), 0), ConfigError);
    EXPECT_NO_THROW((void)Mesh::build(GridMap::logarithmic(), 2));
}

TEST(Mesh, LastIntervalIsFinite) {
    for (const auto rule : {WeightRule::Nodal, WeightRule::QuarterNode}) {
        const auto mesh = Mesh::build(GridMap::algebraic(3.0), 7, rule);
        const auto& last = mesh.interval(6);
        EXPECT_TRUE(std::isfinite(last.x_quarter));
        EXPECT_TRUE(std::isfinite(last.x_mid));
        EXPECT_TRUE(std::isfinite(last.x_three_quarter));
        EXPECT_TRUE(std::isfinite(last.a));
        EXPECT_TRUE(std::isfinite(last.b));
    }
}

TEST(Mesh, QuarterRuleCoefficients) {
    const auto map = GridMap::logarithmic(2.0);
    const auto mesh = Mesh::build(map, 10, WeightRule::QuarterNode);
    for (int n = 0; n < 10; ++n) {
        const auto& k = mesh.interval(n);
        const double x14 = map.at((n + 0.25) / 10.0);
        const double x12 = map.at((n + 0.5) / 10.0);
        const double x34 = map.at((n + 0.75) / 10.0);
        EXPECT_NEAR(k.a, 2.0 * (x34 - x14), 1e-13);
        EXPECT_NEAR(k.b, (x12 - x14) / (x34 - x14), 1e-12);
    }
}

TEST(Mesh, NodalRuleCoefficients) {
    const auto map = GridMap::algebraic(1.0);
    const auto mesh = Mesh::build(map, 8, WeightRule::Nodal);
    for (int n = 0; n < 7; ++n) {
        const auto& k = mesh.interval(n);
        const double x0 = map.at(n / 8.0);
        const double x1 = map.at((n + 1) / 8.0);
        EXPECT_NEAR(k.b, (k.x_mid - x0) / (x1 - x0), 1e-12);
    }
    const auto& last = mesh.interval(7);
    EXPECT_NEAR(last.b, (last.x_mid - last.x_quarter) / (last.x_three_quarter - last.x_quarter), 1e-14);
}

TEST(Mesh, RefineDoubles) {
    const auto mesh = Mesh::build(GridMap::logarithmic(), 100);
    const auto fine = mesh.refined(2);
    EXPECT_EQ(fine.intervals(), 200);
    for (int n = 0; n < 100; ++n) EXPECT_EQ(fine.finite_node(2 * n), mesh.finite_node(n));
    EXPECT_EQ(fine.refined(2).intervals(), 400);
    EXPECT_EQ(Mesh::build(GridMap::algebraic(), 3).refined(2).intervals(), 6);
    EXPECT_THROW((void)mesh.refined(1), ConfigError);
}

TEST(Mesh, RefineKeepsMapAndRule) {
    const auto mesh = Mesh::build(GridMap::algebraic(0.5), 5, WeightRule::QuarterNode);
    const auto fine = mesh.refined(3);
    EXPECT_EQ(fine.map(), mesh.map());
    EXPECT_EQ(fine.weight_rule(), WeightRule::QuarterNode);
    EXPECT_EQ(fine.intervals(), 15);
}

// Randomized properties over (map, c, N, rule).
class MeshProperties : public ::testing::Test {
protected:
    std::mt19937_64 rng{20240611};
    std::uniform_int_distribution<int> pick_n{2, 10000};
    std::uniform_real_distribution<double> pick_log_c{std::log(0.05), std::log(50.0)};
    std::bernoulli_distribution coin{0.5};

    GridMap random_map() {
        const double c = std::exp(pick_log_c(rng));
        return coin(rng) ? GridMap::logarithmic(c) : GridMap::algebraic(c);
    }
};

TEST_F(MeshProperties, MonotoneNodesAndValidCoefficients) {
    for (int trial = 0; trial < 1000; ++trial) {
        const auto map = random_map();
        const int n_int = pick_n(rng);
        const auto rule = coin(rng) ? WeightRule::Nodal : WeightRule::QuarterNode;
        const auto mesh = Mesh::build(map, n_int, rule);
        const auto x = mesh.nodes();
        ASSERT_EQ(x.front(), 0.0);
        ASSERT_EQ(x.back(), kInfinityNode);
        for (std::size_t n = 0; n + 1 < x.size(); ++n) ASSERT_LT(x[n], x[n + 1]);
        for (const auto& k : mesh.coefficients()) {
            ASSERT_GT(k.a, 0.0);
            ASSERT_GT(k.b, 0.0);
            ASSERT_LT(k.b, 1.0);
            ASSERT_GT(k.c, 0.0);
            ASSERT_LT(k.c, 1.0);
            ASSERT_NEAR(k.b + k.c, 1.0, 1e-15);
            ASSERT_TRUE(std::isfinite(k.x_three_quarter));
        }
    }
}

TEST_F(MeshProperties, AlgebraicDominatesLogarithmic) {
    std::uniform_real_distribution<double> pick_xi(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double c = std::exp(pick_log_c(rng));
        double xi = pick_xi(rng);
        if (xi == 0.0) xi = 0.5;
        EXPECT_LT(GridMap::logarithmic(c).at(xi), GridMap::algebraic(c).at(xi)) << c << ' ' << xi;
    }
}

TEST_F(MeshProperties, RefinementNestsBitwise) {
    std::uniform_int_distribution<int> pick_factor(2, 4);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto map = random_map();
        const int n_int = std::uniform_int_distribution<int>(2, 2500)(rng);
        const int r = pick_factor(rng);
        const auto mesh = Mesh::build(map, n_int);
        const auto fine = mesh.refined(r);
        for (int n = 0; n < n_int; ++n) {
            const double a = mesh.finite_node(n);
            const double b = fine.finite_node(r * n);
            ASSERT_EQ(std::memcmp(&a, &b, sizeof a), 0) << n;
        }
    }
}

TEST_F(MeshProperties, LogarithmicLastNodeIsScaledLogN) {
    for (int trial = 0; trial < 200; ++trial) {
        const double c = std::exp(pick_log_c(rng));
        const int n_int = pick_n(rng);
        const auto mesh = Mesh::build(GridMap::logarithmic(c), n_int);
        EXPECT_NEAR(mesh.finite_node(n_int - 1), c * std::log(n_int), 1e-13 * c * std::log(n_int));
    }
}

}  // namespace
}  // namespace qubvp

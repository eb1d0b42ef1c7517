#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <xf/interp.hpp>

using namespace xf;

TEST(LagrangeBasis, Kronecker)
{
    const LagrangeBasis L({0.0, 1.0});
    EXPECT_EQ(L(1, 0.0), 0.0);
    EXPECT_EQ(L(0, 0.0), 1.0);
    EXPECT_EQ(L(1, 1.0), 1.0);
}

TEST(LagrangeBasis, HandQuadratic)
{
    // l for node 2 on {0, 1, 2}: x (x - 1) / 2
    EXPECT_NEAR(LagrangeBasis({0.0, 1.0, 2.0})(2, 0.5), -0.125, 1e-15);
    // l for node 1: x (2 - x)
    EXPECT_NEAR(LagrangeBasis({0.0, 1.0, 2.0})(1, 0.5), 0.75, 1e-15);
}

TEST(LagrangeBasis, PartitionOfUnity)
{
    const std::vector<double> x{0.3, 1.2, 2.0, 3.7, 5.1, 8.0};
    const LagrangeBasis L(x);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(0.0, 8.5);
    for (int t = 0; t < 20; ++t) {
        const double z = U(rng);
        double s = 0;
        for (std::size_t k = 0; k < x.size(); ++k) s += L(k, z);
        EXPECT_NEAR(s, 1.0, 1e-12);
    }
}

TEST(LagrangeBasis, CoincidentNodes)
{
    try {
        LagrangeBasis({1.0, 2.0, 1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::coincident_nodes);
    }
}

TEST(Grunwald, NodesZeroDataAndRange)
{
    const auto s = FamilySpec::laguerre1(1, 2.0, 5);
    const ZeroSet zs = find_zeros(s);
    const auto v = WeightSpec::v(s, exceptional_factor(zs));
    const LagrangeBasis L(zs.regular);
    std::vector<double> y{0.1, 0.7, 0.3, 0.9, 0.2};
    for (std::size_t j = 0; j < y.size(); ++j) EXPECT_EQ(grunwald(L, v, y, zs.regular[j]), y[j]);
    EXPECT_EQ(grunwald(L, v, std::vector<double>(5, 0.0), 3.3), 0.0);
    const std::vector<double> ones(5, 1.0);
    const double lo = zs.regular.front() * 1e-3, hi = zs.regular.back() * 3;
    for (int i = 0; i < 1000; ++i) {
        const double x = lo * std::pow(hi / lo, i / 999.0);
        const double g = grunwald(L, v, ones, x);
        EXPECT_GE(g, 0.0);
        EXPECT_LE(g, 1.0 + 1e-10);
        // monotone bound for data in [0, 1]
        EXPECT_LE(grunwald(L, v, y, x), 0.9 + 1e-10);
    }
}

TEST(StabilityScan, TheoremRegimeAndClassicalControl)
{
    for (int n : {3, 8, 15}) {
        const auto r = stability_scan(FamilySpec::laguerre1(1, 2.0, n));
        EXPECT_TRUE(r.pass) << n;
        EXPECT_TRUE(r.one_minus_G_positive) << n;
        EXPECT_EQ(r.total_degree, n * (2 * n - 2 + 2));
        EXPECT_GT(r.points, 1000u);
    }
    EXPECT_TRUE(stability_scan(FamilySpec::laguerre1(0, 2.0, 5)).pass);
}

TEST(StabilityScan, NodeValueIsOne)
{
    const ZeroSet zs = find_zeros(FamilySpec::laguerre1(2, 1.5, 6));
    const auto v = WeightSpec::v(zs.spec, exceptional_factor(zs));
    const LagrangeBasis L(zs.regular);
    for (double x : zs.regular) EXPECT_NEAR(grunwald(L, v, std::vector<double>(6, 1.0), x), 1.0, 1e-12);
}

TEST(HermiteForm, EqualsGrunwaldSum)
{
    for (int m : {1, 2}) {
        const auto s = FamilySpec::laguerre1(m, 2.0, 6);
        const auto ys = build_exceptional_series(s);
        const ZeroSet zs = find_zeros(ys);
        const DensePoly P = exceptional_factor(zs);
        const auto v = WeightSpec::v(s, P);
        const LagrangeBasis L(zs.regular);
        const std::vector<double> ones(zs.regular.size(), 1.0);
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> U(0.01, 1.5 * zs.regular.back());
        for (int t = 0; t < 50; ++t) {
            const double x = U(rng);
            const double g = grunwald(L, v, ones, x);
            EXPECT_NEAR(hermite_form(ys, L, P, x), g, 1e-8 * g);
        }
    }
}

TEST(InverseWeight, SecondAndFourthDerivatives)
{
    // mpmath differentiation of S^2 e^x / (P^2 x^3), tests/oracles/derive_oracles.py
    const auto s = FamilySpec::laguerre1(1, 2.0, 5);
    const auto v = WeightSpec::v(s, exceptional_factor(find_zeros(s)));
    const auto [d2, d4] = inverse_weight_derivatives(v, 1.0);
    EXPECT_NEAR(d2, 12.69085417490759, 1e-10);
    EXPECT_NEAR(d4, 320.86902367060811, 1e-8);
}

TEST(InverseWeight, PositiveAtSamplePointsForMOne)
{
    for (double a : {1.5, 2.0, 3.0})
        for (int n : {3, 8}) {
            const auto s = FamilySpec::laguerre1(1, a, n);
            const ZeroSet zs = find_zeros(s);
            const auto v = WeightSpec::v(s, exceptional_factor(zs));
            const double lo = zs.regular.front() / 10, hi = zs.regular.back();
            for (int i = 0; i < 10; ++i) {
                const auto [d2, d4] = inverse_weight_derivatives(v, lo * std::pow(hi / lo, i / 9.0));
                EXPECT_GT(d2, 0.0);
                EXPECT_GT(d4, 0.0);
            }
        }
}

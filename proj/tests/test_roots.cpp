#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include <xf/aberth.hpp>
#include <xf/classical.hpp>
#include <xf/roots.hpp>

using namespace xf;

TEST(FindZeros, HandExamples)
{
    const ZeroSet a = find_zeros(FamilySpec::laguerre1(1, 2.0, 0));
    EXPECT_TRUE(a.regular.empty());
    ASSERT_EQ(a.exceptional.size(), 1u);
    EXPECT_NEAR(a.exceptional[0].real(), -3.0, 1e-12);
    EXPECT_EQ(a.exceptional[0].imag(), 0.0);

    const ZeroSet c = find_zeros(FamilySpec::laguerre1(0, 1.0, 1));
    ASSERT_EQ(c.regular.size(), 1u);
    EXPECT_NEAR(c.regular[0], 2.0, 1e-13);
    EXPECT_TRUE(c.exceptional.empty());
}

// frozen from tests/oracles/derive_oracles.py (mpmath polyroots, 40 digits)
TEST(FindZeros, MatchesExactOracle)
{
    struct Case {
        FamilySpec s;
        std::vector<double> regular;
        std::vector<std::complex<double>> exceptional;
    };
    const std::vector<Case> cases{
        {FamilySpec::laguerre1(1, 1.0, 1), {1.7320508075688773}, {{-1.7320508075688773, 0}}},
        {FamilySpec::laguerre1(2, 1.5, 3),
         {1.0756873886313615, 3.571180970133733, 8.1791078789774719},
         {{-1.3695598732616387, 0}, {-4.9564163644809278, 0}}},
        {FamilySpec::laguerre1(3, 2.0, 4),
         {1.096978108341245, 3.1955978893861067, 6.6264915733609277, 12.139878954401226},
         {{-1.3169112924401664, 0}, {-3.9852519881003098, 0}, {-8.7567832449490288, 0}}},
        {FamilySpec::laguerre2(2, 3.0, 4),
         {1.6392853823164178, 4.0790833104354084, 7.8309960361637359, 13.67036717693136},
         {{-2.6098659529234612, 1.605056926271087}, {-2.6098659529234612, -1.605056926271087}}},
        {FamilySpec::jacobi(2, 3.0, 1.5, 4),
         {-0.77751983621456398, -0.38643456429746489, 0.097018781495156736, 0.5714604643349272},
         {{25.112893962444089, 0}, {-4.2174188077621446, 0}}},
    };
    for (const auto& c : cases) {
        const ZeroSet zs = find_zeros(c.s);
        ASSERT_EQ(zs.regular.size(), c.regular.size());
        for (std::size_t i = 0; i < c.regular.size(); ++i) EXPECT_NEAR(zs.regular[i], c.regular[i], 1e-11 * std::max(1.0, c.regular[i]));
        ASSERT_EQ(zs.exceptional.size(), c.exceptional.size());
        for (auto want : c.exceptional) {
            double best = INFINITY;
            for (auto got : zs.exceptional) best = std::min(best, std::abs(got - want));
            EXPECT_LT(best, 1e-10 * std::max(1.0, std::abs(want))) << want;
        }
    }
}

TEST(FindZeros, CountsAndSignsLaguerreI)
{
    for (int m : {1, 2, 3})
        for (int n : {0, 1, 6, 25})
            for (double a : {0.4, 1.5, 4.0}) {
                const ZeroSet zs = find_zeros(FamilySpec::laguerre1(m, a, n));
                ASSERT_EQ(zs.regular.size(), static_cast<std::size_t>(n));
                ASSERT_EQ(zs.exceptional.size(), static_cast<std::size_t>(m));
                for (double x : zs.regular) EXPECT_GT(x, 0.0);
                for (auto z : zs.exceptional) {
                    EXPECT_LT(z.real(), 0.0);
                    EXPECT_EQ(z.imag(), 0.0);
                }
            }
}

TEST(FindZeros, LaguerreIIRealNegativeCountFollowsParity)
{
    for (int m : {1, 2, 3, 4})
        for (int n : {2, 9}) {
            const ZeroSet zs = find_zeros(FamilySpec::laguerre2(m, m + 1.5, n));
            int negatives = 0;
            for (auto z : zs.exceptional) negatives += z.imag() == 0.0 && z.real() < 0.0;
            EXPECT_EQ(negatives, m % 2) << "m=" << m << " n=" << n;
        }
}

TEST(FindZeros, ComplexZerosComeInConjugatePairs)
{
    for (auto s : {FamilySpec::laguerre2(4, 5.5, 6), FamilySpec::jacobi(3, 3.5, 0.7, 10)}) {
        const ZeroSet zs = find_zeros(s);
        for (auto z : zs.exceptional) {
            if (z.imag() == 0.0) continue;
            const bool paired = std::any_of(zs.exceptional.begin(), zs.exceptional.end(),
                                            [&](auto w) { return w.real() == z.real() && w.imag() == -z.imag(); });
            EXPECT_TRUE(paired) << z;
        }
    }
}

TEST(FindZeros, JacobiRegularInsideExceptionalOutside)
{
    for (int n : {1, 8, 30}) {
        const ZeroSet zs = find_zeros(FamilySpec::jacobi(2, 3.0, 1.5, n));
        for (double x : zs.regular) {
            EXPECT_GT(x, -1.0);
            EXPECT_LT(x, 1.0);
        }
        for (auto z : zs.exceptional) EXPECT_FALSE(z.imag() == 0.0 && std::abs(z.real()) <= 1.0);
    }
}

TEST(FindZeros, InvalidSpecRaises)
{
    try {
        find_zeros(FamilySpec::jacobi(2, 3.0, 1.0, 4));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::invalid_spec);
    }
}

TEST(ZeroCertificates, ResidualAndReconstruction)
{
    for (auto s : {FamilySpec::laguerre1(3, 1.0, 40), FamilySpec::laguerre1(1, 2.5, 17), FamilySpec::laguerre2(3, 3.5, 30),
                   FamilySpec::jacobi(2, 3.0, 1.5, 40)}) {
        const auto ys = build_exceptional_series(s);
        const ZeroSet zs = find_zeros(ys);
        EXPECT_LT(zero_certificate(ys, zs), 1e-10);
        EXPECT_LT(reconstruction_error(ys, zs), 1e-8);
        EXPECT_LT(zs.deflation_tail, 1e-8);
    }
}

TEST(Interlacing, HandCaseAndVacuous)
{
    const auto r = check_interlacing(find_zeros(FamilySpec::laguerre1(1, 2.0, 3)));
    EXPECT_FALSE(r.checks.empty());
    EXPECT_TRUE(r.all_pass());
    EXPECT_TRUE(check_interlacing(find_zeros(FamilySpec::laguerre1(0, 2.0, 3))).checks.empty());
}

TEST(Interlacing, HoldsOnGrid)
{
    for (int m : {1, 2, 3})
        for (int n : {0, 1, 2, 5, 13, 40})
            for (double a : {1.0, 1.5, 2.5}) {
                const auto r = check_interlacing(find_zeros(FamilySpec::laguerre1(m, a, n)));
                for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << m << "," << n << "," << a << ": " << c.label;
            }
}

TEST(Interlacing, AtNZeroExceptionalZerosAreReflectedClassicalZeros)
{
    for (int m : {1, 2, 3}) {
        const ZeroSet zs = find_zeros(FamilySpec::laguerre1(m, 1.5, 0));
        const auto zeta = laguerre_zeros(m, 1.5);
        std::vector<double> z;
        for (auto v : zs.exceptional) z.push_back(-v.real());
        std::sort(z.begin(), z.end());
        for (int j = 0; j < m; ++j) EXPECT_NEAR(z[static_cast<std::size_t>(j)], zeta[static_cast<std::size_t>(j)], 1e-10);
    }
}

TEST(ScaledZeros, SmallestZeroApproachesBesselLimit)
{
    const ZeroSet zs = find_zeros(FamilySpec::laguerre1(1, 1.0, 200));
    const double j = bessel_first_zero(1.0);
    EXPECT_LT(std::abs(200 * zs.regular[0] - j * j / 4) / (j * j / 4), 0.05);
}

TEST(ExceptionalZeros, ApproachZerosOfSWithN)
{
    for (auto s : {FamilySpec::laguerre1(1, 1.0, 0), FamilySpec::laguerre1(3, 1.0, 0), FamilySpec::laguerre2(2, 3.0, 0),
                   FamilySpec::jacobi(2, 3.0, 1.5, 0)}) {
        double prev = INFINITY;
        for (int n : {20, 50, 100, 200}) {
            s.n = n;
            const double d = distance_to_s_zeros(find_zeros(s));
            EXPECT_LT(d, prev) << family_name(s.kind) << " n=" << n;
            prev = d;
        }
    }
}

TEST(ExceptionalZeros, LaguerreDistanceScalesLikeInverseRootN)
{
    // observed: sqrt(n) * distance levels off (1.01-1.02 for m=1, alpha=1)
    for (auto s : {FamilySpec::laguerre1(1, 1.0, 0), FamilySpec::laguerre1(2, 2.5, 0), FamilySpec::laguerre2(2, 3.0, 0)}) {
        s.n = 100;
        const double d100 = distance_to_s_zeros(find_zeros(s)) * 10.0;
        s.n = 200;
        const double d200 = distance_to_s_zeros(find_zeros(s)) * std::sqrt(200.0);
        EXPECT_NEAR(d200 / d100, 1.0, 0.03);
    }
}

TEST(Szego, BoundsLargestClassicalZero)
{
    for (int m : {1, 2, 5, 12})
        for (double a : {0.0, 1.0, 3.5}) EXPECT_LE(laguerre_zeros(m, a).back(), szego_bound(m, a));
}

TEST(Aberth, FindsKnownRoots)
{
    // (x - 1)(x + 2)(x^2 + 1)
    const std::vector<double> c{-2, 1, -1, 1, 1};
    const AberthResult r = aberth(c);
    ASSERT_TRUE(r.converged);
    for (std::complex<double> want : {std::complex<double>(1, 0), {-2, 0}, {0, 1}, {0, -1}}) {
        double best = INFINITY;
        for (auto got : r.roots) best = std::min(best, std::abs(std::complex<double>(got) - want));
        EXPECT_LT(best, 1e-12);
    }
}

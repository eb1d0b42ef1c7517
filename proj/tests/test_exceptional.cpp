#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include <xf/classical.hpp>
#include <xf/exceptional.hpp>
#include <xf/verify.hpp>

using namespace xf;

namespace {

void expect_coeffs(const DensePoly& p, const std::vector<double>& want, double rel)
{
    ASSERT_EQ(p.size(), want.size());
    double scale = 0;
    for (double w : want) scale = std::max(scale, std::abs(w));
    for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(p[k], want[k], rel * scale) << "k=" << k;
}

} // namespace

TEST(BuildS, HandExamples)
{
    expect_coeffs(build_S(FamilySpec::laguerre1(1, 2.0, 0)), {2.0, 1.0}, 1e-15);
    expect_coeffs(build_S(FamilySpec::laguerre2(1, 3.0, 0)), {-3.0, -1.0}, 1e-15);
    expect_coeffs(build_S(FamilySpec::jacobi(1, 2.0, 1.0, 0)), {-1.5, -0.5}, 1e-15);
}

TEST(BuildS, DegreeIsM)
{
    for (int m = 0; m <= 5; ++m) {
        EXPECT_EQ(build_S(FamilySpec::laguerre1(m, 1.5, 3)).degree(), m);
        EXPECT_EQ(build_S(FamilySpec::laguerre2(m, m + 0.5, 3)).degree(), m);
        EXPECT_EQ(build_S(FamilySpec::jacobi(m, m + 0.5, 0.7, 3)).degree(), m);
    }
}

TEST(OdeCoeffs, LaguerreIHandExpansion)
{
    const RationalODE ode = ode_coeffs(FamilySpec::laguerre1(1, 2.0, 0));
    expect_coeffs(ode.A, {0.0, 2.0, 1.0}, 1e-15);
    expect_coeffs(ode.B, {6.0, -1.0, -1.0}, 1e-15);
    expect_coeffs(ode.C, {-2.0, 1.0}, 1e-15);
}

TEST(OdeCoeffs, ClassicalReduction)
{
    const RationalODE l = ode_coeffs(FamilySpec::laguerre1(0, 1.5, 4));
    expect_coeffs(l.A, {0.0, 1.0}, 1e-15);
    expect_coeffs(l.B, {2.5, -1.0}, 1e-15);
    expect_coeffs(l.C, {4.0}, 1e-15);
    const RationalODE j = ode_coeffs(FamilySpec::jacobi(0, 0.5, 1.5, 3));
    EXPECT_EQ(j.C.degree(), 0);
    EXPECT_DOUBLE_EQ(j.C[0], 3 * (3 + 0.5 + 1.5 + 1));
}

TEST(OdeCoeffs, SingularEvaluation)
{
    const RationalODE ode = ode_coeffs(FamilySpec::laguerre1(1, 2.0, 3));
    for (double x : {0.0, -2.0}) {
        try {
            ode.M(x);
            FAIL() << "expected SingularEvaluation at " << x;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::singular_evaluation);
        }
    }
    EXPECT_NO_THROW(ode.N(1.0));
}

TEST(BuildExceptional, HandExampleDegreeOne)
{
    expect_coeffs(build_exceptional(FamilySpec::laguerre1(1, 2.0, 0)), {3.0, 1.0}, 1e-14);
}

// frozen from tests/oracles/derive_oracles.py (exact rational solve)
TEST(BuildExceptional, MatchesExactOracle)
{
    expect_coeffs(build_exceptional(FamilySpec::laguerre1(1, 1.0, 1)), {3.0, 0.0, -1.0}, 1e-13);
    expect_coeffs(build_exceptional(FamilySpec::laguerre1(2, 1.5, 3)),
                  {2275.0 / 128, -455.0 / 64, -195.0 / 16, 65.0 / 24, 13.0 / 24, -1.0 / 12}, 1e-12);
    expect_coeffs(build_exceptional(FamilySpec::laguerre1(3, 2.0, 4)),
                  {90.0, -30.0, -135.0 / 2, 27.0 / 2, 21.0 / 4, -3.0 / 4, -1.0 / 16, 1.0 / 144}, 1e-12);
    expect_coeffs(build_exceptional(FamilySpec::laguerre2(2, 3.0, 4)), {6720, -3360, -1008, 224, 104, -22, 1}, 1e-12);
    expect_coeffs(build_exceptional(FamilySpec::jacobi(2, 3.0, 1.5, 4)),
                  {-771.0 / 437, 30786.0 / 2185, 103959.0 / 2185, -5036.0 / 115, -13419.0 / 115, -102.0 / 5, 1.0},
                  1e-11);
}

TEST(BuildExceptional, SeriesRouteAgreesWithMonomialRoute)
{
    for (auto s : {FamilySpec::laguerre1(2, 1.5, 3), FamilySpec::laguerre1(3, 2.5, 10), FamilySpec::laguerre2(2, 3.0, 6),
                   FamilySpec::jacobi(2, 3.0, 1.5, 8)}) {
        const DensePoly a = build_exceptional(s);
        const DensePoly b = build_exceptional_series(s).to_monomial();
        ASSERT_EQ(a.degree(), b.degree());
        for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-9 * a.max_abs_coeff()) << k;
    }
}

TEST(BuildExceptional, LeadingCoefficientExact)
{
    for (int m : {1, 2, 3})
        for (int n : {0, 1, 7, 20, 40}) {
            const auto s = FamilySpec::laguerre1(m, 1.5, n);
            const long double want = ((n % 2) ? -1.0L : 1.0L) / (tgammal(m + 1.0L) * tgammal(n + 1.0L));
            EXPECT_EQ(build_exceptional(s).lead(), static_cast<double>(want)) << m << "," << n;
        }
}

TEST(BuildExceptional, DegreeAndNonzeroConstant)
{
    for (int m : {1, 2, 3})
        for (int n : {0, 3, 9}) {
            const DensePoly p = build_exceptional(FamilySpec::laguerre1(m, 2.5, n));
            EXPECT_EQ(p.degree(), m + n);
            EXPECT_GT(std::abs(p[0]), 1e-8 * p.max_abs_coeff());
        }
}

TEST(BuildExceptional, ClassicalReduction)
{
    for (int n : {1, 4, 9}) {
        const DensePoly p = build_exceptional(FamilySpec::laguerre1(0, 1.5, n));
        const DensePoly q = laguerre_coeffs(n, 1.5);
        for (std::size_t k = 0; k < q.size(); ++k) EXPECT_NEAR(p[k], q[k], 1e-9 * std::abs(q[k]));
        const DensePoly pj = build_exceptional(FamilySpec::jacobi(0, 0.5, 1.5, n));
        const DensePoly qj = jacobi_coeffs(n, 0.5, 1.5);
        for (std::size_t k = 0; k < qj.size(); ++k)
            EXPECT_NEAR(pj[k] * qj.lead(), qj[k], 1e-9 * qj.max_abs_coeff());
    }
}

TEST(BuildExceptional, ContinuousInAlpha)
{
    const auto s = FamilySpec::laguerre1(2, 1.7, 5);
    auto t = s;
    t.alpha += 1e-6;
    const DensePoly a = build_exceptional(s), b = build_exceptional(t);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LT(std::abs(a[k] - b[k]), 1e-4 * a.max_abs_coeff());
}

TEST(OdeResidual, BelowToleranceAcrossFamilies)
{
    for (int m : {1, 2, 3})
        for (int n : {0, 5, 17, 40})
            for (double a : {1.0, 2.5}) EXPECT_LT(max_ode_residual(build_exceptional_series(FamilySpec::laguerre1(m, a, n))), 1e-8);
    for (int n : {0, 5, 40}) {
        EXPECT_LT(max_ode_residual(build_exceptional_series(FamilySpec::laguerre2(2, 3.0, n))), 1e-8);
        EXPECT_LT(max_ode_residual(build_exceptional_series(FamilySpec::jacobi(2, 3.0, 1.5, n))), 1e-8);
    }
}

TEST(FamilySpec, InvalidRegimes)
{
    EXPECT_FALSE(check_spec(FamilySpec::laguerre1(1, -0.5, 2)).valid);
    EXPECT_FALSE(check_spec(FamilySpec::laguerre2(3, 1.5, 2)).valid);
    // alpha + 1 - m - beta = 1 lies in {0, 1}
    EXPECT_FALSE(check_spec(FamilySpec::jacobi(2, 3.0, 1.0, 2)).valid);
    const auto c = check_spec(FamilySpec::laguerre1(1, 0.5, 2));
    EXPECT_TRUE(c.valid);
    EXPECT_FALSE(c.theorem_regime);
}

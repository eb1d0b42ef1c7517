#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/QR>

#include "classical.hpp"
#include "dense_poly.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "ortho_series.hpp"

namespace xf {

/// The degree-m polynomial whose square divides the classical weight.
inline DensePoly build_S(const FamilySpec& s)
{
    if (s.m == 0) return DensePoly::constant(1.0);
    switch (s.kind) {
    case Family::laguerre1: return laguerre_coeffs(s.m, s.alpha - 1.0).reflected();
    case Family::laguerre2: return laguerre_coeffs(s.m, -s.alpha - 1.0);
    case Family::jacobi: return jacobi_coeffs(s.m, -s.alpha - 1.0, s.beta - 1.0);
    }
    return DensePoly::constant(1.0);
}

/// A y'' + B y' + C y = 0 with denominators cleared.
struct RationalODE {
    DensePoly A, B, C;

    double M(double x) const { return ratio(B, x); }
    double N(double x) const { return ratio(C, x); }

    double M_prime(double x) const
    {
        double a = A(x);
        check(a, x);
        return (poly_eval(B, x, 1) * a - B(x) * poly_eval(A, x, 1)) / (a * a);
    }

private:
    double ratio(const DensePoly& p, double x) const
    {
        double a = A(x);
        check(a, x);
        return p(x) / a;
    }

    void check(double a, double x) const
    {
        double scale = A.max_abs_coeff() * std::max(1.0, std::pow(std::abs(x), A.degree()));
        if (std::abs(a) <= 1e-12 * scale)
            throw Error(Errc::singular_evaluation, "ODE coefficient A vanishes at x=" + std::to_string(x));
    }
};

namespace detail {

/// Constant K multiplying S in C, and the extra polynomial factors Q1 (on y)
/// and Q2 (on y') so that C = K S + Q1 and B = B0 S + Q2, A = A0 S.
struct OdeParts {
    DensePoly A0, B0;
    double K;
    DensePoly Q1, Q2;
};

inline OdeParts ode_parts(const FamilySpec& s, const DensePoly& S)
{
    const DensePoly dS = S.derivative();
    const DensePoly x{0.0, 1.0};
    const double a = s.alpha, b = s.beta;
    OdeParts p;
    switch (s.kind) {
    case Family::laguerre1:
        p.A0 = x;
        p.B0 = DensePoly({a + 1.0, -1.0});
        p.K = s.m + s.n;
        p.Q1 = -2.0 * a * dS;
        p.Q2 = -2.0 * (x * dS);
        break;
    case Family::laguerre2:
        // C = (n-m) S + 2x S'. The variant with -2 alpha S' admits no
        // polynomial solution of degree m+n.
        p.A0 = x;
        p.B0 = DensePoly({a + 1.0, -1.0});
        p.K = s.n - s.m;
        p.Q1 = 2.0 * (x * dS);
        p.Q2 = -2.0 * (x * dS);
        break;
    case Family::jacobi: {
        const DensePoly omx2{1.0, 0.0, -1.0};
        p.A0 = omx2;
        p.B0 = DensePoly({b - a, -(a + b + 2.0)});
        p.K = s.m * (a - b - s.m + 1.0) + s.n * (s.n + a + b + 1.0);
        p.Q1 = -2.0 * b * (DensePoly({1.0, -1.0}) * dS);
        p.Q2 = -2.0 * (omx2 * dS);
        break;
    }
    }
    return p;
}

template <class R>
struct FixedTopSolution {
    std::vector<R> c;
    double rel_residual = 0.0;
    int structural_rank = 0;
};

template <class R>
using Mat = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;

/// Column k of the cleared ODE system has its last nonzero entry in row k+m.
/// Those entries form the diagonal of a triangular subsystem, so the
/// polynomial solution with fixed top coefficient is unique iff none of them
/// vanish.
template <class R>
int structural_rank(const Mat<R>& cols, int m)
{
    const Eigen::Index N = cols.cols() - 1;
    int r = 0;
    for (Eigen::Index k = 0; k < N; ++k) {
        R mx = cols.col(k).cwiseAbs().maxCoeff();
        if (k + m < cols.rows() && std::abs(cols(k + m, k)) > R(1e-12) * mx) ++r;
    }
    return r;
}

/// Solves sum_k c_k col_k = 0 with c_N = top and c_k = 0 for k < N - window,
/// by column-pivoted QR on the graded, row-equilibrated system.
template <class R>
FixedTopSolution<R> solve_fixed_top(const Mat<R>& cols, int m, R top, int window,
                                    const std::vector<R>* previous = nullptr)
{
    using Vec = Eigen::Matrix<R, Eigen::Dynamic, 1>;
    const Eigen::Index rows = cols.rows();
    const Eigen::Index N = cols.cols() - 1;
    const Eigen::Index w = std::min<Eigen::Index>(window, N);
    const Eigen::Index k0 = N - w;
    FixedTopSolution<R> out;
    out.c.assign(static_cast<std::size_t>(N) + 1, R(0));
    out.c.back() = top;
    out.structural_rank = structural_rank<R>(cols, m);

    if (w > 0) {
        // Expected magnitude of c_k from the triangular rows k+m.
        Vec g(N + 1);
        g(N) = std::abs(top);
        for (Eigen::Index k = N - 1; k >= k0; --k) {
            R piv = k + m < rows ? std::abs(cols(k + m, k)) : R(0);
            R num = 0;
            for (Eigen::Index j = k + 1; j <= N; ++j)
                if (k + m < rows) num = std::max(num, std::abs(cols(k + m, j)) * g(j));
            R est = piv > 0 ? num / piv : g(k + 1);
            g(k) = (est > 0 && std::isfinite(est)) ? est : g(k + 1);
        }
        // Regrade from a previous solve, where the band estimate overshoots
        // because of cancellation inside the rows.
        if (previous)
            for (Eigen::Index k = k0; k < N; ++k)
                g(k) = std::max(std::abs((*previous)[static_cast<std::size_t>(k)]), R(1e-10) * g(k));
        Mat<R> M = cols.middleCols(k0, w);
        for (Eigen::Index j = 0; j < w; ++j) M.col(j) *= g(k0 + j);
        Vec rhs = -top * cols.col(N);
        for (Eigen::Index i = 0; i < rows; ++i) {
            R mx = std::max(M.row(i).cwiseAbs().maxCoeff(), std::abs(rhs(i)));
            if (mx > 0) {
                R f = std::exp2(-std::round(std::log2(mx)));
                M.row(i) *= f;
                rhs(i) *= f;
            }
        }
        Eigen::ColPivHouseholderQR<Mat<R>> qr(M);
        qr.setThreshold(R(0));
        Vec z = qr.solve(rhs);
        // Iterative refinement with the residual accumulated in long double.
        for (int it = 0; it < 2; ++it) {
            Vec res(rows);
            for (Eigen::Index i = 0; i < rows; ++i) {
                long double acc = rhs(i);
                for (Eigen::Index j = 0; j < w; ++j) acc -= static_cast<long double>(M(i, j)) * z(j);
                res(i) = static_cast<R>(acc);
            }
            z += qr.solve(res);
        }
        for (Eigen::Index j = 0; j < w; ++j) out.c[static_cast<std::size_t>(k0 + j)] = z(j) * g(k0 + j);
    }

    Vec r = Vec::Zero(rows);
    R scale = 0;
    for (Eigen::Index j = 0; j <= N; ++j) {
        r += out.c[static_cast<std::size_t>(j)] * cols.col(j);
        scale += std::abs(out.c[static_cast<std::size_t>(j)]) * cols.col(j).norm();
    }
    out.rel_residual = scale == 0 ? 0.0 : static_cast<double>(r.norm() / scale);
    return out;
}

template <class R>
void accept(const FixedTopSolution<R>& sol, int unknowns)
{
    for (R v : sol.c)
        if (!std::isfinite(v)) throw Error(Errc::nullspace_defect, "solution not representable in double");
    if (sol.structural_rank < unknowns)
        throw Error(Errc::nullspace_defect, "coefficient matrix rank deficient: solution not unique");
    if (!(sol.rel_residual < 1e-9))
        throw Error(Errc::nullspace_defect, "relative residual " + std::to_string(sol.rel_residual));
}

/// log|leading coefficient| and its sign for the target normalization.
inline std::pair<double, double> target_lead(const FamilySpec& s)
{
    if (s.kind == Family::laguerre1)
        return {-std::lgamma(s.m + 1.0) - std::lgamma(s.n + 1.0), (s.n % 2 == 0) ? 1.0 : -1.0};
    return {0.0, 1.0};
}

} // namespace detail

inline RationalODE ode_coeffs(const FamilySpec& s)
{
    const DensePoly S = build_S(s);
    auto p = detail::ode_parts(s, S);
    return {p.A0 * S, p.B0 * S + p.Q2, p.K * S + p.Q1};
}

/// Leading coefficient fixed by the family normalization:
/// (-1)^n/(m! n!) for Laguerre-I, 1 otherwise.
inline double exceptional_lead(const FamilySpec& s)
{
    if (s.kind != Family::laguerre1) return 1.0;
    // long double keeps m! n! exact up to 20! and rounds once into double
    long double f = 1.0L;
    for (int i = 2; i <= s.m; ++i) f *= i;
    for (int i = 2; i <= s.n; ++i) f *= i;
    return static_cast<double>(((s.n % 2 == 0) ? 1.0L : -1.0L) / f);
}

struct MonomialBuild {
    DensePoly poly;
    double rel_residual = 0.0;
};

/// Monomial-basis construction: the ODE is expanded coefficient-wise and the
/// homogeneous system is solved with the leading coefficient fixed.
inline MonomialBuild build_exceptional_checked(const FamilySpec& s)
{
    const RationalODE ode = ode_coeffs(s);
    const int N = s.degree();
    std::vector<DensePoly> colp;
    int rows = 1;
    for (int k = 0; k <= N; ++k) {
        DensePoly xk = DensePoly::monomial(k);
        DensePoly col = ode.A * xk.derivative(2) + ode.B * xk.derivative(1) + ode.C * xk;
        rows = std::max(rows, static_cast<int>(col.size()));
        colp.push_back(std::move(col));
    }
    Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(rows, N + 1);
    for (int k = 0; k <= N; ++k)
        for (std::size_t i = 0; i < colp[static_cast<std::size_t>(k)].size(); ++i)
            cols(static_cast<Eigen::Index>(i), k) = colp[static_cast<std::size_t>(k)][i];

    auto sol = detail::solve_fixed_top<double>(cols, s.m, 1.0, N);
    for (int pass = 0; pass < 3 && sol.rel_residual > 1e-14; ++pass) {
        auto next = detail::solve_fixed_top<double>(cols, s.m, 1.0, N, &sol.c);
        if (!(next.rel_residual < sol.rel_residual)) break;
        sol = std::move(next);
    }
    detail::accept(sol, N);
    const double lead = exceptional_lead(s);
    if (lead == 0.0 || !std::isfinite(lead))
        throw Error(Errc::nullspace_defect, "leading coefficient not representable in double");
    std::vector<double> c(sol.c.size());
    for (std::size_t k = 0; k + 1 < c.size(); ++k) c[k] = sol.c[k] * lead;
    c.back() = lead;
    for (double v : c)
        if (!std::isfinite(v)) throw Error(Errc::nullspace_defect, "coefficients overflow");
    return {DensePoly(std::move(c)), sol.rel_residual};
}

inline DensePoly build_exceptional(const FamilySpec& s) { return build_exceptional_checked(s).poly; }

/// The exceptional polynomial as exp(log_scale) * sum_k c_k phi_k in the
/// classical basis of the family (Laguerre alpha, or Jacobi alpha, beta).
/// Built and evaluated in long double: for m >= 3 the top coefficients
/// alternate, and outside the orthogonality interval the sum cancels enough
/// to eat the extra digits.
struct ExceptionalSeries {
    using Series = BasicOrthoSeries<long double>;

    FamilySpec spec;
    Series y;
    Series dy;
    Series d2y;
    double log_scale = 0.0;
    double rel_residual = 0.0;

    /// order-th derivative at x, in the unit scale (multiply by exp(log_scale)
    /// for the family normalization).
    long double eval_ld(long double x, int order = 0) const { return pick(order)(x); }

    std::complex<long double> eval_ld(std::complex<long double> z, int order = 0) const { return pick(order)(z); }

    double eval(double x, int order = 0) const
    {
        return static_cast<double>(pick(order)(static_cast<long double>(x)));
    }

    std::complex<double> eval(std::complex<double> z, int order = 0) const
    {
        auto v = pick(order)(std::complex<long double>(z.real(), z.imag()));
        return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    }

    template <class T>
    T operator()(T x) const
    {
        return eval(x, 0);
    }

    /// Monomial coefficients in the family normalization.
    DensePoly to_monomial() const { return y.to_monomial(std::exp(log_scale)); }

private:
    const Series& pick(int order) const { return order == 0 ? y : (order == 1 ? dy : d2y); }
};

inline OrthoBasis family_basis(const FamilySpec& s)
{
    return s.kind == Family::jacobi ? OrthoBasis::jacobi(s.alpha, s.beta) : OrthoBasis::laguerre(s.alpha);
}

/// Series construction in an arbitrary basis of the family's kind. Only the
/// family basis gives a solution with short support; other bases are kept for
/// cross-checks.
inline ExceptionalSeries build_exceptional_series(const FamilySpec& s, const OrthoBasis& basis)
{
    using R = long double;
    using Series = BasicOrthoSeries<R>;
    const DensePoly S = build_S(s);
    const auto parts = detail::ode_parts(s, S);
    const int N = s.degree();
    // A0 phi'' + B0 phi' = eigen * phi + (B0 - B0_basis) phi'
    const DensePoly B0_basis = basis.kind == OrthoBasis::Kind::laguerre
        ? DensePoly({basis.a + 1.0, -1.0})
        : DensePoly({basis.b - basis.a, -(basis.a + basis.b + 2.0)});
    const DensePoly Q2 = parts.Q2 + (parts.B0 - B0_basis) * S;

    std::vector<Series> colv;
    int rows = 1;
    for (int k = 0; k <= N; ++k) {
        Series e = Series::unit(basis, k);
        const R lam = basis.kind == OrthoBasis::Kind::laguerre
            ? R(-k)
            : -R(k) * (R(k) + R(basis.a) + R(basis.b) + 1);
        Series low = e.times(S).scaled(lam + R(parts.K)) + e.times(parts.Q1);
        Series col = low.raised() + e.derivative().times(Q2);
        rows = std::max(rows, col.degree() + 1);
        colv.push_back(std::move(col));
    }
    detail::Mat<R> cols = detail::Mat<R>::Zero(rows, N + 1);
    for (int k = 0; k <= N; ++k)
        for (std::size_t i = 0; i < colv[static_cast<std::size_t>(k)].c.size(); ++i)
            cols(static_cast<Eigen::Index>(i), k) = colv[static_cast<std::size_t>(k)].c[i];

    // Normalize: leading monomial coefficient of phi_N is prod A_k.
    double log_lead = 0.0, sign_lead = 1.0;
    for (int k = 0; k < N; ++k) {
        double A = basis.rec(k).A;
        log_lead += std::log(std::abs(A));
        if (A < 0) sign_lead = -sign_lead;
    }
    auto [log_t, sign_t] = detail::target_lead(s);
    // Widening past the support only adds noise, so keep the best window and
    // stop a few steps after the residual stops improving.
    detail::FixedTopSolution<R> sol;
    int best_w = -1;
    for (int w = 0; w <= N; ++w) {
        auto trial = detail::solve_fixed_top<R>(cols, s.m, R(sign_t * sign_lead), w);
        if (best_w < 0 || trial.rel_residual < sol.rel_residual) {
            sol = std::move(trial);
            best_w = w;
        }
        if (sol.rel_residual < 1e-18) break;
        if (sol.rel_residual < 1e-9 && w >= best_w + 3) break;
    }
    detail::accept(sol, N);

    ExceptionalSeries out;
    out.spec = s;
    out.y = Series(basis, sol.c);
    out.dy = out.y.derivative();
    out.d2y = out.dy.derivative();
    out.log_scale = log_t - log_lead;
    out.rel_residual = sol.rel_residual;
    return out;
}

inline ExceptionalSeries build_exceptional_series(const FamilySpec& s)
{
    return build_exceptional_series(s, family_basis(s));
}

struct OdeResidual {
    double literal;   // |A y'' + B y' + C y| / (1 + |A y''|), family normalization
    double relative;  // |A y'' + B y' + C y| / (|A y''| + |B y'| + |C y|)
};

inline OdeResidual ode_residual(const RationalODE& ode, const ExceptionalSeries& ys, double x)
{
    const double t2 = ode.A(x) * ys.eval(x, 2);
    const double t1 = ode.B(x) * ys.eval(x, 1);
    const double t0 = ode.C(x) * ys.eval(x, 0);
    const double r = std::abs(t2 + t1 + t0);
    OdeResidual out{};
    const double den = std::abs(t2) + std::abs(t1) + std::abs(t0);
    out.relative = den == 0.0 ? 0.0 : r / den;
    if (r == 0.0) {
        out.literal = 0.0;
    } else {
        double lr = ys.log_scale + std::log(r);
        double la = std::abs(t2) > 0 ? ys.log_scale + std::log(std::abs(t2)) : -INFINITY;
        if (la > 700.0)
            out.literal = std::exp(lr - la);
        else
            out.literal = std::exp(lr) / (1.0 + std::exp(la));
    }
    return out;
}

/// 50 sample points covering the exceptional and regular zeros.
inline std::vector<double> residual_sample_points(const FamilySpec& s, int count = 50)
{
    double lo, hi;
    if (s.kind == Family::jacobi) {
        lo = -1.5;
        hi = 1.5;
    } else {
        lo = -(4.0 * s.m + std::abs(s.alpha) + 2.0);
        hi = 4.0 * s.degree() + 2.0 * std::abs(s.alpha) + 10.0;
    }
    std::vector<double> x(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) x[static_cast<std::size_t>(j)] = lo + (hi - lo) * (j + 0.5) / count;
    return x;
}

} // namespace xf

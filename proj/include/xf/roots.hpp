#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "aberth.hpp"
#include "classical.hpp"
#include "errors.hpp"
#include "exceptional.hpp"
#include "family.hpp"

namespace xf {

struct ZeroSet {
    FamilySpec spec;
    std::vector<double> regular;                    // ascending, inside the orthogonality interval
    std::vector<std::complex<double>> exceptional;  // outside its closure
    std::vector<std::complex<double>> s_zeros;      // zeros of S
    double deflation_tail = 0.0;  // size of the deflated quotient above degree m, relative
    int aberth_iterations = 0;
};

/// Orthogonality interval (lo, hi); hi is +inf for Laguerre.
inline std::pair<double, double> orthogonality_interval(const FamilySpec& s)
{
    if (s.kind == Family::jacobi) return {-1.0, 1.0};
    return {0.0, std::numeric_limits<double>::infinity()};
}

namespace detail {

inline int sgn(long double v) { return (v > 0) - (v < 0); }

/// Safeguarded Newton inside a sign-change bracket [a, b].
inline double refine_bracket(const ExceptionalSeries& ys, long double a, long double b)
{
    long double fa = ys.eval_ld(a);
    long double x = 0.5L * (a + b);
    for (int it = 0; it < 200; ++it) {
        long double f = ys.eval_ld(x);
        if (f == 0) return static_cast<double>(x);
        if (sgn(f) == sgn(fa)) {
            a = x;
            fa = f;
        } else {
            b = x;
        }
        long double d = ys.eval_ld(x, 1);
        long double xn = x - f / d;
        // fall back to bisection if Newton leaves the bracket
        if (!(xn > a && xn < b) || !std::isfinite(xn)) xn = 0.5L * (a + b);
        const long double step = std::abs(xn - x);
        x = xn;
        if (step <= 1e-17L * std::max<long double>(1, std::abs(x)) || b - a <= 1e-17L * std::max<long double>(1, std::abs(x)))
            break;
    }
    return static_cast<double>(x);
}

inline std::vector<double> scan_grid(const FamilySpec& s)
{
    const OrthoBasis basis = family_basis(s);
    std::vector<double> g;
    for (int k : {s.n - 1, s.n, s.n + 1, s.degree()}) {
        if (k < 1) continue;
        auto z = classical_zeros(basis, k);
        g.insert(g.end(), z.begin(), z.end());
    }
    double lo, hi;
    if (s.kind == Family::jacobi) {
        lo = -1.0;
        hi = 1.0;
    } else {
        lo = 0.0;
        double top = g.empty() ? 1.0 : *std::max_element(g.begin(), g.end());
        hi = 1.1 * top + 4.0 * s.m + std::abs(s.alpha) + 2.0;
    }
    g.push_back(lo);
    g.push_back(hi);
    std::erase_if(g, [&](double v) { return !(v >= lo && v <= hi); });
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

} // namespace detail

/// Zeros of the exceptional polynomial inside the orthogonality interval.
inline std::vector<double> regular_zeros(const ExceptionalSeries& ys)
{
    const FamilySpec& s = ys.spec;
    if (s.n == 0) return {};
    std::vector<double> grid = detail::scan_grid(s);

    std::vector<std::pair<double, double>> brackets;
    std::vector<double> exact;
    for (int round = 0; round <= 5; ++round) {
        brackets.clear();
        exact.clear();
        std::vector<long double> f(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) f[i] = ys.eval_ld(grid[i]);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            bool interior = i > 0 && i + 1 < grid.size();
            if (f[i] == 0 && interior) exact.push_back(grid[i]);
            if (i + 1 < grid.size() && detail::sgn(f[i]) * detail::sgn(f[i + 1]) < 0)
                brackets.emplace_back(grid[i], grid[i + 1]);
        }
        if (static_cast<int>(brackets.size() + exact.size()) >= s.n) break;
        std::vector<double> finer;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            for (int q = 0; q < 4; ++q) finer.push_back(grid[i] + (grid[i + 1] - grid[i]) * q / 4.0);
        finer.push_back(grid.back());
        grid = std::move(finer);
    }

    std::vector<double> out = exact;
    for (auto [a, b] : brackets) out.push_back(detail::refine_bracket(ys, a, b));
    std::sort(out.begin(), out.end());
    if (static_cast<int>(out.size()) != s.n)
        throw Error(Errc::count_mismatch, "found " + std::to_string(out.size()) + " regular zeros, expected " +
                                              std::to_string(s.n));
    return out;
}

namespace detail {

inline void pair_conjugates(std::vector<std::complex<double>>& z)
{
    for (auto& v : z)
        if (std::abs(v.imag()) <= 1e-9 * std::max(1.0, std::abs(v))) v = {v.real(), 0.0};
    std::vector<bool> used(z.size(), false);
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (used[i] || z[i].imag() <= 0.0) continue;
        std::size_t best = z.size();
        double bd = INFINITY;
        for (std::size_t j = 0; j < z.size(); ++j) {
            if (j == i || used[j] || z[j].imag() >= 0.0) continue;
            double d = std::abs(z[j] - std::conj(z[i]));
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        if (best == z.size()) throw Error(Errc::count_mismatch, "complex zero without conjugate partner");
        std::complex<double> avg = 0.5 * (z[i] + std::conj(z[best]));
        z[i] = avg;
        z[best] = std::conj(avg);
        used[i] = used[best] = true;
    }
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i].imag() < 0.0 && !used[i]) throw Error(Errc::count_mismatch, "complex zero without conjugate partner");
}

} // namespace detail

/// Exceptional zeros from the quotient P = y / prod (x - x_j). The quotient is
/// sampled on a circle around the zeros of S and its coefficients recovered by
/// a discrete Fourier transform; coefficients beyond degree m are the division
/// remainder and must vanish. Roots of P by Aberth, then polished on y itself
/// with the other zeros deflated implicitly.
inline std::vector<std::complex<double>> exceptional_zeros(const ExceptionalSeries& ys,
                                                           const std::vector<double>& regular,
                                                           const std::vector<std::complex<double>>& s_zeros,
                                                           double* tail_out = nullptr, int* iters_out = nullptr)
{
    using cld = std::complex<long double>;
    const int m = ys.spec.m;
    if (m == 0) return {};

    long double center = 0;
    for (auto z : s_zeros) center += z.real();
    center /= static_cast<long double>(s_zeros.size());
    long double spread = 0;
    for (auto z : s_zeros) spread = std::max<long double>(spread, std::abs(cld(z.real(), z.imag()) - center));
    const long double radius = 1.5L * spread + (ys.spec.kind == Family::jacobi ? 0.25L : 1.0L);

    const int K = std::max(32, 4 * (m + 1));
    std::vector<cld> logq(static_cast<std::size_t>(K));
    long double top = -INFINITY;
    for (int k = 0; k < K; ++k) {
        const long double th = 2 * std::numbers::pi_v<long double> * (k + 0.5L) / K;
        const cld t = center + radius * cld(std::cos(th), std::sin(th));
        cld lq = std::log(ys.eval_ld(t));
        for (double x : regular) lq -= std::log(t - cld(x));
        logq[static_cast<std::size_t>(k)] = lq;
        top = std::max(top, lq.real());
    }
    std::vector<long double> a(static_cast<std::size_t>(K));
    for (int j = 0; j < K; ++j) {
        cld acc = 0;
        for (int k = 0; k < K; ++k) {
            const long double th = 2 * std::numbers::pi_v<long double> * (k + 0.5L) / K;
            acc += std::exp(logq[static_cast<std::size_t>(k)] - top) * std::polar<long double>(1, -j * th);
        }
        a[static_cast<std::size_t>(j)] = acc.real() / K;
    }
    long double head = 0, tail = 0;
    for (int j = 0; j < K; ++j)
        (j <= m ? head : tail) = std::max(j <= m ? head : tail, std::abs(a[static_cast<std::size_t>(j)]));
    const double rel_tail = head > 0 ? static_cast<double>(tail / head) : INFINITY;
    if (tail_out) *tail_out = rel_tail;
    if (!(rel_tail <= 1e-8))
        throw Error(Errc::deflation_instability, "division remainder " + std::to_string(rel_tail) + " of the quotient");

    std::vector<double> pc(static_cast<std::size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) pc[static_cast<std::size_t>(j)] = static_cast<double>(a[static_cast<std::size_t>(j)]);
    auto ab = aberth(pc);
    if (!ab.converged) throw Error(Errc::convergence_failure, "Aberth iteration on the deflated factor");
    if (iters_out) *iters_out = ab.iterations;

    std::vector<cld> z;
    for (auto u : ab.roots) z.push_back(center + radius * cld(u.real(), u.imag()));
    for (int it = 0; it < 30; ++it) {
        long double worst = 0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            cld y = ys.eval_ld(z[k]);
            if (y == cld(0)) continue;
            cld g = ys.eval_ld(z[k], 1) / y;
            for (double x : regular) g -= cld(1) / (z[k] - cld(x));
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k) g -= cld(1) / (z[k] - z[j]);
            cld step = cld(1) / g;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
            z[k] -= step;
            worst = std::max(worst, std::abs(step) / std::max<long double>(1, std::abs(z[k])));
        }
        if (worst < 1e-17L) break;
    }
    std::vector<std::complex<double>> out;
    for (auto v : z) out.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    detail::pair_conjugates(out);
    std::sort(out.begin(), out.end(), [](auto p, auto q) {
        return p.real() != q.real() ? p.real() > q.real() : p.imag() > q.imag();
    });
    return out;
}

inline std::vector<std::complex<double>> s_zeros(const FamilySpec& s)
{
    if (s.m == 0) return {};
    auto ab = aberth(build_S(s).coeffs());
    if (!ab.converged) throw Error(Errc::convergence_failure, "Aberth iteration on S");
    detail::pair_conjugates(ab.roots);
    return ab.roots;
}

/// Checks the zero-count statements and the classification margin.
inline void validate_zero_set(const ZeroSet& zs)
{
    const FamilySpec& s = zs.spec;
    auto [lo, hi] = orthogonality_interval(s);
    const double margin = 1e-9;
    if (static_cast<int>(zs.regular.size()) != s.n) throw Error(Errc::count_mismatch, "regular zero count");
    if (static_cast<int>(zs.exceptional.size()) != s.m) throw Error(Errc::count_mismatch, "exceptional zero count");
    for (double x : zs.regular)
        if (!(x > lo && x < hi)) throw Error(Errc::count_mismatch, "regular zero outside the interval");
    int real_negative = 0;
    for (auto z : zs.exceptional) {
        double dist;
        if (z.imag() != 0.0) {
            dist = std::abs(z.imag());
            if (z.real() < lo) dist = std::abs(z - std::complex<double>(lo, 0));
            if (z.real() > hi) dist = std::abs(z - std::complex<double>(hi, 0));
        } else {
            dist = z.real() < lo ? lo - z.real() : (z.real() > hi ? z.real() - hi : -1.0);
        }
        if (!(dist > margin)) throw Error(Errc::count_mismatch, "exceptional zero inside or at the closed interval");
        if (z.imag() == 0.0 && z.real() < 0.0) ++real_negative;
    }
    if (s.kind == Family::laguerre1 && real_negative != s.m)
        throw Error(Errc::count_mismatch, "Laguerre-I exceptional zeros must all be real and negative");
    if (s.kind == Family::laguerre2 && real_negative != s.m % 2)
        throw Error(Errc::count_mismatch, "Laguerre-II needs m mod 2 negative exceptional zeros");

    std::vector<std::complex<double>> all(zs.exceptional);
    for (double x : zs.regular) all.emplace_back(x, 0.0);
    double scale = 1.0;
    for (auto z : all) scale = std::max(scale, std::abs(z));
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (std::abs(all[i] - all[j]) <= 1e-10 * scale) throw Error(Errc::count_mismatch, "zeros not simple");
}

inline ZeroSet find_zeros(const ExceptionalSeries& ys)
{
    ZeroSet zs;
    zs.spec = ys.spec;
    zs.regular = regular_zeros(ys);
    zs.s_zeros = s_zeros(ys.spec);
    zs.exceptional = exceptional_zeros(ys, zs.regular, zs.s_zeros, &zs.deflation_tail, &zs.aberth_iterations);
    validate_zero_set(zs);
    return zs;
}

inline ZeroSet find_zeros(const FamilySpec& s)
{
    require_valid(s);
    return find_zeros(build_exceptional_series(s));
}

/// Regular zeros followed by the exceptional ones, as complex numbers.
inline std::vector<std::complex<double>> all_zeros(const ZeroSet& zs)
{
    std::vector<std::complex<double>> out;
    for (auto z : zs.exceptional) out.push_back(z);
    for (double x : zs.regular) out.emplace_back(x, 0.0);
    return out;
}

/// Largest |z_i - (nearest zero of S)| over the exceptional zeros.
inline double distance_to_s_zeros(const ZeroSet& zs)
{
    double worst = 0.0;
    for (auto z : zs.exceptional) {
        double best = INFINITY;
        for (auto y : zs.s_zeros) best = std::min(best, std::abs(z - y));
        worst = std::max(worst, best);
    }
    return worst;
}

/// The degree-m factor P = c * prod (x - z_i): c = 1/m! for Laguerre-I, monic
/// otherwise.
inline DensePoly exceptional_factor(const ZeroSet& zs)
{
    std::vector<std::complex<long double>> c{1.0L};
    for (auto z : zs.exceptional) {
        std::vector<std::complex<long double>> d(c.size() + 1, 0.0L);
        for (std::size_t k = 0; k < c.size(); ++k) {
            d[k + 1] += c[k];
            d[k] -= c[k] * std::complex<long double>(z.real(), z.imag());
        }
        c = std::move(d);
    }
    long double lead = 1;
    if (zs.spec.kind == Family::laguerre1)
        for (int i = 2; i <= zs.spec.m; ++i) lead /= i;
    std::vector<double> r(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) r[k] = static_cast<double>(lead * c[k].real());
    return DensePoly(std::move(r));
}

/// max over zeros r of |p(r)| / (max|coeff| * max(1,|r|)^deg), with p the
/// monomial form of the unit-scaled polynomial.
inline double zero_certificate(const ExceptionalSeries& ys, const ZeroSet& zs)
{
    const DensePoly p = ys.y.to_monomial(1.0);
    const double cmax = p.max_abs_coeff();
    double worst = 0.0;
    for (auto z : all_zeros(zs)) {
        std::complex<long double> x(z.real(), z.imag()), acc = 0;
        for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + std::complex<long double>(p[k]);
        double bound = cmax * std::pow(std::max(1.0, std::abs(z)), p.degree());
        worst = std::max(worst, static_cast<double>(std::abs(acc)) / bound);
    }
    return worst;
}

/// Relative max-coefficient error of lead * prod (x - zeros) against the
/// monomial coefficients.
inline double reconstruction_error(const ExceptionalSeries& ys, const ZeroSet& zs)
{
    const DensePoly p = ys.y.to_monomial(1.0);
    std::vector<std::complex<long double>> c{static_cast<long double>(p.lead())};
    for (auto z : all_zeros(zs)) {
        std::vector<std::complex<long double>> d(c.size() + 1, 0.0L);
        for (std::size_t k = 0; k < c.size(); ++k) {
            d[k + 1] += c[k];
            d[k] -= c[k] * std::complex<long double>(z.real(), z.imag());
        }
        c = std::move(d);
    }
    double err = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) err = std::max(err, static_cast<double>(std::abs(c[k] - (long double)p[k])));
    return err / p.max_abs_coeff();
}

struct InequalityCheck {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
    bool boundary = false;  // compared non-strictly, see n = 0
};

struct InterlacingReport {
    std::vector<InequalityCheck> checks;
    bool all_pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
    }
};

/// Interlacing of Laguerre-I zeros with classical Laguerre zeros zeta_{k,j}
/// of parameter alpha. Exceptional zeros are taken in decreasing order, z_1
/// closest to 0. The upper bound for z_j, j >= 2, is -zeta_{m-1,j-1}.
inline InterlacingReport check_interlacing(const ZeroSet& zs)
{
    InterlacingReport r;
    const FamilySpec& s = zs.spec;
    if (s.kind != Family::laguerre1 || s.m == 0) return r;
    const double a = s.alpha;
    auto zeta = [&](int k) { return laguerre_zeros(k, a); };
    auto less = [&](std::string label, double lhs, double rhs, bool boundary = false) {
        InequalityCheck c{std::move(label), lhs, rhs, lhs < rhs, boundary};
        if (boundary) c.pass = lhs <= rhs + 1e-9 * std::max(std::abs(lhs), std::abs(rhs));
        r.checks.push_back(std::move(c));
    };

    const int n = s.n, m = s.m;
    if (n >= 1) {
        auto zn = zeta(n);
        auto zn1 = zeta(n - 1);
        less("x_1 < zeta_{n,1}", zs.regular[0], zn[0]);
        for (int j = 2; j <= n; ++j) {
            const auto J = static_cast<std::size_t>(j);
            less("zeta_{n-1," + std::to_string(j - 1) + "} < x_" + std::to_string(j), zn1[J - 2], zs.regular[J - 1]);
            less("x_" + std::to_string(j) + " < zeta_{n," + std::to_string(j) + "}", zs.regular[J - 1], zn[J - 1]);
        }
    }
    auto zm = zeta(m);
    auto zm1 = zeta(m - 1);
    const bool edge = n == 0;  // here z_j = -zeta_{m,j} exactly
    std::vector<double> z;
    for (auto v : zs.exceptional) z.push_back(v.real());
    std::sort(z.begin(), z.end(), std::greater<>());
    less("-zeta_{m,1} < z_1", -zm[0], z[0], edge);
    less("z_1 < 0", z[0], 0.0);
    for (int j = 2; j <= m; ++j) {
        const auto J = static_cast<std::size_t>(j);
        less("-zeta_{m," + std::to_string(j) + "} < z_" + std::to_string(j), -zm[J - 1], z[J - 1], edge);
        less("z_" + std::to_string(j) + " < -zeta_{m-1," + std::to_string(j - 1) + "}", z[J - 1], -zm1[J - 2]);
    }
    return r;
}

/// Upper bound for the largest zero of L_m^{(alpha)}.
inline double szego_bound(int m, double alpha)
{
    const double t = 2.0 * m + alpha + 1.0;
    return t + std::sqrt(t * t + 0.25 - alpha * alpha);
}

} // namespace xf

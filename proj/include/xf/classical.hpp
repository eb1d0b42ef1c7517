#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dense_poly.hpp"
#include "errors.hpp"

namespace xf {

/// Generalized binomial C(top, k) as a falling factorial over k!.
inline double gbinom(double top, int k)
{
    if (k < 0) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (top - i) / static_cast<double>(i + 1);
    return r;
}

/// L_m^{(a)} for any real a, from the explicit sum.
inline DensePoly laguerre_coeffs(int m, double a)
{
    std::vector<double> c(static_cast<std::size_t>(m) + 1);
    double kfact = 1.0;
    for (int k = 0; k <= m; ++k) {
        if (k > 0) kfact *= k;
        double s = (k % 2 == 0) ? 1.0 : -1.0;
        c[static_cast<std::size_t>(k)] = s * gbinom(m + a, m - k) / kfact;
    }
    return DensePoly(std::move(c));
}

/// P_m^{(a,b)} for any real a, b, expanded into the monomial basis.
inline DensePoly jacobi_coeffs(int m, double a, double b)
{
    const DensePoly xm1{-1.0, 1.0};
    const DensePoly xp1{1.0, 1.0};
    std::vector<DensePoly> pm(static_cast<std::size_t>(m) + 1), pp(static_cast<std::size_t>(m) + 1);
    pm[0] = pp[0] = DensePoly::constant(1.0);
    for (int k = 1; k <= m; ++k) {
        pm[static_cast<std::size_t>(k)] = pm[static_cast<std::size_t>(k) - 1] * xm1;
        pp[static_cast<std::size_t>(k)] = pp[static_cast<std::size_t>(k) - 1] * xp1;
    }
    DensePoly sum;
    for (int k = 0; k <= m; ++k) {
        double w = gbinom(m + a, k) * gbinom(m + b, m - k);
        sum = sum + w * (pm[static_cast<std::size_t>(m - k)] * pp[static_cast<std::size_t>(k)]);
    }
    sum *= std::ldexp(1.0, -m);
    if (m == 0) return sum;
    std::vector<double> c = sum.coeffs();
    c.resize(static_cast<std::size_t>(m) + 1, 0.0);
    double maxc = 0.0;
    for (double v : c) maxc = std::max(maxc, std::abs(v));
    if (std::abs(c.back()) < 1e-13 * maxc)
        throw Error(Errc::degree_collapse, "P_m^{(a,b)} loses its leading term");
    return DensePoly(std::move(c));
}

/// Classical orthogonal basis in its standard normalization, described by
/// phi_{k+1} = (A_k x + B_k) phi_k - C_k phi_{k-1}, phi_0 = 1.
struct OrthoBasis {
    enum class Kind { laguerre, jacobi };

    Kind kind = Kind::laguerre;
    double a = 0.0;
    double b = 0.0;

    static OrthoBasis laguerre(double a) { return {Kind::laguerre, a, 0.0}; }
    static OrthoBasis jacobi(double a, double b) { return {Kind::jacobi, a, b}; }

    template <class R>
    struct RecT {
        R A, B, C;
    };
    using Rec = RecT<double>;

    /// Recurrence coefficients computed in precision R.
    template <class R>
    RecT<R> rec_as(int k) const
    {
        const R kk = k, ra = a, rb = b;
        if (kind == Kind::laguerre)
            return {R(-1) / (kk + 1), (2 * kk + 1 + ra) / (kk + 1), (kk + ra) / (kk + 1)};
        if (k == 0) return {(ra + rb + 2) / 2, (ra - rb) / 2, R(0)};
        const R s = 2 * kk + ra + rb;
        const R den = 2 * (kk + 1) * (kk + ra + rb + 1) * s;
        return {(s + 1) * (s + 2) * s / den, (s + 1) * (ra * ra - rb * rb) / den,
                2 * (kk + ra) * (kk + rb) * (s + 2) / den};
    }

    Rec rec(int k) const { return rec_as<double>(k); }

    /// Basis in which derivatives of this basis are expressed.
    OrthoBasis raised() const
    {
        return kind == Kind::laguerre ? laguerre(a + 1.0) : jacobi(a + 1.0, b + 1.0);
    }

    /// phi_k'' A0 + phi_k' B0 = eigen(k) phi_k for the classical operator.
    double eigen(int k) const
    {
        return kind == Kind::laguerre ? -static_cast<double>(k) : -k * (k + a + b + 1.0);
    }

    /// Monic recurrence p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1}.
    std::pair<double, double> monic(int k) const
    {
        Rec r = rec(k);
        double alpha = -r.B / r.A;
        double beta = k == 0 ? 0.0 : r.C / (r.A * rec(k - 1).A);
        return {alpha, beta};
    }

    bool operator==(const OrthoBasis&) const = default;
};

/// Value and derivative of phi_n at x via the recurrence.
inline std::pair<double, double> basis_eval(const OrthoBasis& basis, int n, double x)
{
    double p0 = 1.0, d0 = 0.0;
    if (n == 0) return {p0, d0};
    auto r = basis.rec(0);
    double p1 = r.A * x + r.B, d1 = r.A;
    for (int k = 1; k < n; ++k) {
        r = basis.rec(k);
        double p2 = (r.A * x + r.B) * p1 - r.C * p0;
        double d2 = (r.A * x + r.B) * d1 + r.A * p1 - r.C * d0;
        p0 = p1;
        d0 = d1;
        p1 = p2;
        d1 = d2;
    }
    return {p1, d1};
}

/// Zeros of phi_n (ascending), Golub-Welsch followed by Newton polishing.
inline std::vector<double> classical_zeros(const OrthoBasis& basis, int n)
{
    if (n <= 0) return {};
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) {
        auto [al, be] = basis.monic(k);
        diag(k) = al;
        if (k > 0) off(k - 1) = std::sqrt(be);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    std::vector<double> z(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(z.begin(), z.end());
    for (double& x : z) {
        for (int it = 0; it < 3; ++it) {
            auto [p, d] = basis_eval(basis, n, x);
            if (d == 0.0 || !std::isfinite(p / d)) break;
            double step = p / d;
            if (std::abs(step) > 1e-6 * (1.0 + std::abs(x))) break;
            x -= step;
        }
    }
    return z;
}

inline std::vector<double> laguerre_zeros(int n, double a) { return classical_zeros(OrthoBasis::laguerre(a), n); }

inline std::vector<double> jacobi_zeros(int n, double a, double b)
{
    return classical_zeros(OrthoBasis::jacobi(a, b), n);
}

/// J_a(z) from the ascending power series.
inline double bessel_j(double a, double z)
{
    const double h = 0.5 * z;
    double term = std::pow(h, a) / std::tgamma(a + 1.0);
    double sum = term;
    for (int k = 0; k < 500; ++k) {
        term *= -h * h / ((k + 1.0) * (k + 1.0 + a));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) return sum;
    }
    throw Error(Errc::convergence_failure, "Bessel series did not converge in 500 terms");
}

/// First positive zero of J_a, a > -1.
inline double bessel_first_zero(double a)
{
    if (!(a > -1.0)) throw Error(Errc::invalid_spec, "bessel_first_zero needs a > -1");
    // j_1 > a for a >= 0, so the scan can start at a.
    double lo = std::max(1e-6, a);
    double flo = bessel_j(a, lo);
    const double step = 0.05;
    double hi = lo;
    double fhi = flo;
    bool found = false;
    while (hi < 50.0) {
        hi = std::min(lo + step, 50.0);
        fhi = bessel_j(a, hi);
        if ((flo < 0) != (fhi < 0) || fhi == 0.0) {
            found = true;
            break;
        }
        lo = hi;
        flo = fhi;
    }
    if (!found) throw Error(Errc::no_sign_change, "no sign change of J_a in (0, 50)");
    if (fhi == 0.0) return hi;
    for (int it = 0; it < 200 && hi - lo > 2e-16 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = bessel_j(a, mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace xf

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "classical.hpp"
#include "dense_poly.hpp"

namespace xf {

/// Finite expansion sum_k c_k phi_k(x) in a classical orthogonal basis, with
/// coefficients and recurrence arithmetic in precision T.
template <class T>
struct BasicOrthoSeries {
    OrthoBasis basis;
    std::vector<T> c;

    BasicOrthoSeries() : c{T(0)} {}
    BasicOrthoSeries(OrthoBasis b, std::vector<T> coeffs) : basis(b), c(std::move(coeffs))
    {
        if (c.empty()) c.push_back(T(0));
    }

    static BasicOrthoSeries unit(OrthoBasis b, int k)
    {
        std::vector<T> c(static_cast<std::size_t>(k) + 1, T(0));
        c.back() = T(1);
        return {b, std::move(c)};
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }

    /// Clenshaw summation; X may be real or complex.
    template <class X>
    X operator()(X x) const
    {
        X b1 = X(0), b2 = X(0);
        for (int k = degree(); k >= 0; --k) {
            auto r = basis.rec_as<T>(k);
            T cnext = basis.rec_as<T>(k + 1).C;
            X b0 = X(c[static_cast<std::size_t>(k)]) + (X(r.A) * x + X(r.B)) * b1 - X(cnext) * b2;
            b2 = b1;
            b1 = b0;
        }
        return b1;
    }

    /// Exact derivative, expressed in basis.raised().
    BasicOrthoSeries derivative() const
    {
        OrthoBasis rb = basis.raised();
        if (degree() == 0) return {rb, {T(0)}};
        std::vector<T> d(c.size() - 1);
        for (std::size_t j = 0; j < d.size(); ++j) {
            T f = basis.kind == OrthoBasis::Kind::laguerre ? T(-1) : (T(j) + T(basis.a) + T(basis.b) + 2) / 2;
            d[j] = f * c[j + 1];
        }
        return {rb, std::move(d)};
    }

    /// The same function re-expanded in basis.raised().
    BasicOrthoSeries raised() const
    {
        if (basis.kind == OrthoBasis::Kind::laguerre) {
            // L_k^{(a)} = L_k^{(a+1)} - L_{k-1}^{(a+1)}
            std::vector<T> d(c.size(), T(0));
            for (std::size_t k = 0; k < c.size(); ++k) {
                d[k] += c[k];
                if (k > 0) d[k - 1] -= c[k];
            }
            return {basis.raised(), std::move(d)};
        }
        const T a = basis.a, b = basis.b;
        // (a,b) -> (a,b+1)
        std::vector<T> d(c.size(), T(0));
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k == 0) {
                d[0] += c[0];
                continue;
            }
            const T kk = T(k);
            const T den = 2 * kk + a + b + 1;
            d[k] += c[k] * (kk + a + b + 1) / den;
            d[k - 1] += c[k] * (kk + a) / den;
        }
        // (a,b+1) -> (a+1,b+1)
        const T b1 = b + 1;
        std::vector<T> e(c.size(), T(0));
        for (std::size_t k = 0; k < d.size(); ++k) {
            if (k == 0) {
                e[0] += d[0];
                continue;
            }
            const T kk = T(k);
            const T den = 2 * kk + a + b1 + 1;
            e[k] += d[k] * (kk + a + b1 + 1) / den;
            e[k - 1] -= d[k] * (kk + b1) / den;
        }
        return {basis.raised(), std::move(e)};
    }

    BasicOrthoSeries times_x() const
    {
        std::vector<T> d(c.size() + 1, T(0));
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == T(0)) continue;
            auto r = basis.rec_as<T>(static_cast<int>(k));
            d[k + 1] += c[k] / r.A;
            d[k] -= c[k] * r.B / r.A;
            if (k > 0) d[k - 1] += c[k] * r.C / r.A;
        }
        return {basis, std::move(d)};
    }

    BasicOrthoSeries times(const DensePoly& p) const
    {
        const auto& pc = p.coeffs();
        BasicOrthoSeries acc = scaled(T(pc.back()));
        for (std::size_t i = pc.size() - 1; i-- > 0;) acc = acc.times_x() + scaled(T(pc[i]));
        return acc;
    }

    BasicOrthoSeries scaled(T s) const
    {
        BasicOrthoSeries r = *this;
        for (T& v : r.c) v *= s;
        return r;
    }

    friend BasicOrthoSeries operator+(const BasicOrthoSeries& x, const BasicOrthoSeries& y)
    {
        std::vector<T> d(std::max(x.c.size(), y.c.size()), T(0));
        for (std::size_t k = 0; k < x.c.size(); ++k) d[k] += x.c[k];
        for (std::size_t k = 0; k < y.c.size(); ++k) d[k] += y.c[k];
        return {x.basis, std::move(d)};
    }

    /// Monomial coefficients of s * sum_k c_k phi_k.
    DensePoly to_monomial(double s = 1.0) const
    {
        std::vector<double> acc(c.size(), 0.0);
        DensePoly prev = DensePoly::constant(0.0);
        DensePoly cur = DensePoly::constant(1.0);
        for (int k = 0; k <= degree(); ++k) {
            double ck = s * static_cast<double>(c[static_cast<std::size_t>(k)]);
            for (std::size_t j = 0; j < cur.size(); ++j) acc[j] += ck * cur[j];
            auto r = basis.rec(k);
            DensePoly next = DensePoly({r.B, r.A}) * cur - r.C * prev;
            prev = std::move(cur);
            cur = std::move(next);
        }
        return DensePoly(std::move(acc));
    }
};

using OrthoSeries = BasicOrthoSeries<double>;

} // namespace xf

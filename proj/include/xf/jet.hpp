#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace xf {

/// Truncated Taylor series: c[k] = f^(k)(x0) / k!.
template <std::size_t N>
struct Jet {
    std::array<double, N + 1> c{};

    static Jet variable(double x0)
    {
        Jet j;
        j.c[0] = x0;
        if constexpr (N >= 1) j.c[1] = 1.0;
        return j;
    }

    static Jet constant(double v)
    {
        Jet j;
        j.c[0] = v;
        return j;
    }

    /// k-th derivative at the expansion point.
    double derivative(std::size_t k) const
    {
        double f = 1.0;
        for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
        return c[k] * f;
    }

    friend Jet operator+(Jet a, const Jet& b)
    {
        for (std::size_t k = 0; k <= N; ++k) a.c[k] += b.c[k];
        return a;
    }

    friend Jet operator-(Jet a, const Jet& b)
    {
        for (std::size_t k = 0; k <= N; ++k) a.c[k] -= b.c[k];
        return a;
    }

    friend Jet operator*(const Jet& a, const Jet& b)
    {
        Jet r;
        for (std::size_t i = 0; i <= N; ++i)
            for (std::size_t j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }

    friend Jet operator*(double s, Jet a)
    {
        for (auto& v : a.c) v *= s;
        return a;
    }

    friend Jet operator/(const Jet& a, const Jet& b)
    {
        Jet r;
        for (std::size_t k = 0; k <= N; ++k) {
            double s = a.c[k];
            for (std::size_t j = 1; j <= k; ++j) s -= b.c[j] * r.c[k - j];
            r.c[k] = s / b.c[0];
        }
        return r;
    }

    friend Jet exp(const Jet& a)
    {
        // r' = a' r
        Jet r;
        r.c[0] = std::exp(a.c[0]);
        for (std::size_t k = 1; k <= N; ++k) {
            double s = 0.0;
            for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a.c[j] * r.c[k - j];
            r.c[k] = s / static_cast<double>(k);
        }
        return r;
    }

    friend Jet log(const Jet& a)
    {
        // a r' = a'
        Jet r;
        r.c[0] = std::log(a.c[0]);
        for (std::size_t k = 1; k <= N; ++k) {
            double s = static_cast<double>(k) * a.c[k];
            for (std::size_t j = 1; j < k; ++j) s -= static_cast<double>(j) * r.c[j] * a.c[k - j];
            r.c[k] = s / (static_cast<double>(k) * a.c[0]);
        }
        return r;
    }

    friend Jet pow(const Jet& a, double e) { return exp(e * log(a)); }
};

} // namespace xf

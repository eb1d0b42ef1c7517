#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace xf {

struct AberthResult {
    std::vector<std::complex<double>> roots;
    int iterations = 0;
    bool converged = false;
};

/// Aberth-Ehrlich simultaneous iteration for the roots of a polynomial with
/// real coefficients c (ascending, nonzero leading term). Starts on a circle
/// of radius 1 + max|c_k/c_n| around the centroid of the roots.
inline AberthResult aberth(const std::vector<double>& c, int max_iter = 200, double tol = 1e-15)
{
    using cld = std::complex<long double>;
    AberthResult out;
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1) {
        out.converged = true;
        return out;
    }
    const long double lead = c.back();
    const long double centroid = -static_cast<long double>(c[static_cast<std::size_t>(n) - 1]) / (n * lead);
    long double ratio = 0;
    for (int k = 0; k < n; ++k) ratio = std::max(ratio, std::abs(c[static_cast<std::size_t>(k)] / lead));
    const long double radius = 1 + ratio;

    std::vector<cld> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        // offset angle keeps the start off the real axis
        long double th = 2 * std::numbers::pi_v<long double> * (k + 0.25L) / n;
        z[static_cast<std::size_t>(k)] = cld(centroid, 0) + radius * cld(std::cos(th), std::sin(th));
    }

    auto horner = [&](cld x, cld& d) {
        cld p = c.back();
        d = 0;
        for (int k = n - 1; k >= 0; --k) {
            d = d * x + p;
            p = p * x + cld(c[static_cast<std::size_t>(k)]);
        }
        return p;
    };

    for (int it = 0; it < max_iter; ++it) {
        out.iterations = it + 1;
        long double worst = 0;
        for (int k = 0; k < n; ++k) {
            cld d;
            cld p = horner(z[static_cast<std::size_t>(k)], d);
            if (p == cld(0)) continue;
            cld ratio_k = p / d;
            cld s = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) s += cld(1) / (z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)]);
            cld step = ratio_k / (cld(1) - ratio_k * s);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
            z[static_cast<std::size_t>(k)] -= step;
            worst = std::max(worst, std::abs(step) / std::max<long double>(1, std::abs(z[static_cast<std::size_t>(k)])));
        }
        if (worst < tol) {
            out.converged = true;
            break;
        }
    }
    for (const auto& v : z) out.roots.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    return out;
}

} // namespace xf

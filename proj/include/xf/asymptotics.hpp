#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "energy.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "roots.hpp"
#include "summation.hpp"
#include "weight.hpp"

namespace xf {

/// (2/(n(n-1))) sum_{i<j} k_n(u_i, u_j) with
/// k_n(x, y) = -log(c/n) - log|x - y| - (log v(x) + log v(y)) / (2(n-1)).
inline double transfinite_d(const std::vector<double>& u, const WeightSpec& v, double c = 1.0)
{
    const std::size_t n = u.size();
    if (n < 2) throw Error(Errc::invalid_spec, "transfinite_d needs at least 2 nodes");
    detail::check_distinct(u);
    const double nn = static_cast<double>(n);
    std::vector<double> lv(n);
    for (std::size_t i = 0; i < n; ++i) lv[i] = weight_logs(v, u[i]).value;
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            acc += -std::log(std::abs(u[i] - u[j])) - (lv[i] + lv[j]) / (2.0 * (nn - 1.0));
    return -std::log(c / nn) + 2.0 / (nn * (nn - 1.0)) * acc.value();
}

/// transfinite_d under the unit weight.
inline double transfinite_d_unweighted(const std::vector<double>& u, double c = 1.0)
{
    const std::size_t n = u.size();
    if (n < 2) throw Error(Errc::invalid_spec, "transfinite_d needs at least 2 nodes");
    detail::check_distinct(u);
    const double nn = static_cast<double>(n);
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) acc += -std::log(std::abs(u[i] - u[j]));
    return -std::log(c / nn) + 2.0 / (nn * (nn - 1.0)) * acc.value();
}

struct DiameterGap {
    int n = 0;
    std::string reason;
};

struct DiameterSeries {
    int m = 0;
    double alpha = 0.0;
    double c = 1.0;
    std::vector<int> n_values;
    std::vector<double> d;
    std::vector<double> deltas;  // d_n - d_{n-1}; NaN where n-1 is absent
    std::vector<double> rate;    // |delta| n^2 / log^2 n; NaN with delta
    double rate_stat = 0.0;      // sup of rate
    std::vector<double> max_P2_over_S2;  // on a log grid over (0, 2 x_n)
    std::vector<DiameterGap> gaps;
};

/// d_n at the regular zeros of L^I_{m,m+n} for each n in n_values, under v.
inline DiameterSeries d_sequence(int m, double alpha, const std::vector<int>& n_values, double c = 1.0)
{
    DiameterSeries ds;
    ds.m = m;
    ds.alpha = alpha;
    ds.c = c;
    const std::size_t K = n_values.size();
    std::vector<double> d(K, std::numeric_limits<double>::quiet_NaN()), ratio(K, 0.0);
    std::vector<std::string> err(K);
    parallel_for(K, [&](std::size_t k) {
        try {
            const FamilySpec s = FamilySpec::laguerre1(m, alpha, n_values[k]);
            const ZeroSet zs = find_zeros(s);
            const WeightSpec v = WeightSpec::v(s, exceptional_factor(zs));
            d[k] = transfinite_d(zs.regular, v, c);
            if (m > 0) {
                const double lo = zs.regular.front() * 1e-3, hi = 2.0 * zs.regular.back();
                double best = 0.0;
                for (int i = 0; i <= 400; ++i) {
                    const double x = lo * std::pow(hi / lo, i / 400.0);
                    const double q = v.P(x) / v.S(x);
                    best = std::max(best, q * q);
                }
                ratio[k] = best;
            } else {
                ratio[k] = 1.0;
            }
        } catch (const Error& e) {
            err[k] = e.what();
        }
    });
    for (std::size_t k = 0; k < K; ++k) {
        if (!err[k].empty()) {
            ds.gaps.push_back({n_values[k], err[k]});
            continue;
        }
        const int n = n_values[k];
        const double delta = (!ds.n_values.empty() && ds.n_values.back() == n - 1)
                                 ? d[k] - ds.d.back()
                                 : std::numeric_limits<double>::quiet_NaN();
        const double L = std::log(static_cast<double>(n));
        const double rate = std::abs(delta) * n * static_cast<double>(n) / (L * L);
        ds.n_values.push_back(n);
        ds.d.push_back(d[k]);
        ds.deltas.push_back(delta);
        ds.rate.push_back(rate);
        ds.max_P2_over_S2.push_back(ratio[k]);
        if (std::isfinite(rate)) ds.rate_stat = std::max(ds.rate_stat, rate);
    }
    return ds;
}

inline std::vector<int> n_range(int from, int to)
{
    std::vector<int> r;
    for (int n = from; n <= to; ++n) r.push_back(n);
    return r;
}

struct ZeroSumCheck {
    double lhs = 0.0;  // sum of the regular zeros
    double rhs = 0.0;
    double abs_err = 0.0;
    bool in_regime = true;  // rhs > 0
    // (n - m)(n + m + alpha) is minus the subleading coefficient ratio, so it
    // is met by the sum over all m + n zeros, exceptional ones included.
    double lhs_all = 0.0;
    double abs_err_all = 0.0;
};

/// Sum of regular zeros against (n - m)(n + m + alpha).
inline ZeroSumCheck zero_sum_check(const ZeroSet& zs)
{
    const FamilySpec& s = zs.spec;
    if (s.kind != Family::laguerre1) throw Error(Errc::invalid_spec, "zero_sum_check is for Laguerre-I");
    ZeroSumCheck r;
    CompensatedSum acc;
    for (double x : zs.regular) acc += x;
    r.lhs = acc.value();
    r.rhs = (s.n - s.m) * (s.n + s.m + s.alpha);
    r.abs_err = std::abs(r.lhs - r.rhs);
    r.in_regime = r.rhs > 0.0;
    for (const auto& z : zs.exceptional) acc += z.real();
    r.lhs_all = acc.value();
    r.abs_err_all = std::abs(r.lhs_all - r.rhs);
    return r;
}

inline ZeroSumCheck zero_sum_check(const FamilySpec& s) { return zero_sum_check(find_zeros(s)); }

struct TrendFit {
    double slope = 0.0;
    double slope_se = 0.0;
    double intercept = 0.0;
    std::size_t points = 0;
};

/// Ordinary least-squares line y = a + b x, with the standard error of b.
inline TrendFit least_squares_trend(const std::vector<double>& x, const std::vector<double>& y)
{
    TrendFit f;
    const std::size_t N = x.size();
    f.points = N;
    if (N < 3) throw Error(Errc::invalid_spec, "trend fit needs at least 3 points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < N; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= N;
    my /= N;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < N; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const double e = y[i] - f.intercept - f.slope * x[i];
        sse += e * e;
    }
    f.slope_se = std::sqrt(sse / (N - 2) / sxx);
    return f;
}

/// Trend of the rate statistic over its last `tail` finite values.
inline TrendFit rate_trend(const DiameterSeries& ds, std::size_t tail = 50)
{
    std::vector<double> x, y;
    for (std::size_t k = 0; k < ds.n_values.size(); ++k)
        if (std::isfinite(ds.rate[k])) {
            x.push_back(ds.n_values[k]);
            y.push_back(ds.rate[k]);
        }
    if (x.size() > tail) {
        x.erase(x.begin(), x.end() - static_cast<std::ptrdiff_t>(tail));
        y.erase(y.begin(), y.end() - static_cast<std::ptrdiff_t>(tail));
    }
    return least_squares_trend(x, y);
}

/// Medians of |delta| over consecutive windows of the given width.
inline std::vector<double> rolling_median_abs_delta(const DiameterSeries& ds, std::size_t width)
{
    std::vector<double> a;
    for (double v : ds.deltas)
        if (std::isfinite(v)) a.push_back(std::abs(v));
    std::vector<double> med;
    for (std::size_t s = 0; s + width <= a.size(); s += width) {
        std::vector<double> w(a.begin() + static_cast<std::ptrdiff_t>(s),
                              a.begin() + static_cast<std::ptrdiff_t>(s + width));
        std::nth_element(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(width / 2), w.end());
        med.push_back(w[width / 2]);
    }
    return med;
}

} // namespace xf

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "exceptional.hpp"
#include "jet.hpp"
#include "roots.hpp"
#include "summation.hpp"
#include "weight.hpp"

namespace xf {

/// Lagrange fundamental polynomials on distinct nodes, with the barycentric
/// weights kept as log-magnitude and sign.
class LagrangeBasis {
public:
    explicit LagrangeBasis(std::vector<double> nodes) : x_(std::move(nodes))
    {
        const std::size_t n = x_.size();
        double scale = 1.0;
        for (double v : x_) scale = std::max(scale, std::abs(v));
        log_lambda_.assign(n, 0.0);
        sign_.assign(n, 1);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                const double d = x_[k] - x_[j];
                if (std::abs(d) < 1e-14 * scale) throw Error(Errc::coincident_nodes, "coincident interpolation nodes");
                log_lambda_[k] -= std::log(std::abs(d));
                if (d < 0) sign_[k] = -sign_[k];
            }
    }

    std::size_t size() const { return x_.size(); }
    const std::vector<double>& nodes() const { return x_; }

    /// Index of a node equal to x, or size().
    std::size_t node_index(double x) const
    {
        for (std::size_t k = 0; k < x_.size(); ++k)
            if (x == x_[k]) return k;
        return x_.size();
    }

    /// log|l_k(x)| and its sign; x must not be a node.
    std::pair<double, int> log_abs(std::size_t k, double x) const
    {
        double lw = 0.0;
        int s = sign_[k];
        for (std::size_t j = 0; j < x_.size(); ++j) {
            if (j == k) continue;
            const double d = x - x_[j];
            lw += std::log(std::abs(d));
            if (d < 0) s = -s;
        }
        return {lw + log_lambda_[k], s};
    }

    double operator()(std::size_t k, double x) const
    {
        const std::size_t hit = node_index(x);
        if (hit != x_.size()) return hit == k ? 1.0 : 0.0;
        auto [l, s] = log_abs(k, x);
        return s * std::exp(l);
    }

private:
    std::vector<double> x_;
    std::vector<double> log_lambda_;
    std::vector<int> sign_;
};

inline LagrangeBasis lagrange_basis(std::vector<double> nodes) { return LagrangeBasis(std::move(nodes)); }

/// v(x) sum_k l_k(x)^2 y_k / v(x_k), each term formed in the log domain.
inline double grunwald(const LagrangeBasis& L, const WeightSpec& v, const std::vector<double>& y, double x)
{
    const std::size_t hit = L.node_index(x);
    if (hit != L.size()) return y[hit];
    const double lvx = weight_logs(v, x).value;
    CompensatedSum acc;
    for (std::size_t k = 0; k < L.size(); ++k) {
        if (y[k] == 0.0) continue;
        auto [ll, s] = L.log_abs(k, x);
        (void)s;
        acc += y[k] * std::exp(lvx - weight_logs(v, L.nodes()[k]).value + 2.0 * ll);
    }
    return acc.value();
}

inline double grunwald(const std::vector<double>& nodes, const WeightSpec& v, const std::vector<double>& y, double x)
{
    return grunwald(LagrangeBasis(nodes), v, y, x);
}

/// The Hermite-interpolation form of the stability argument, with the
/// ratio L''/L' at the nodes taken from the full exceptional polynomial and
/// the fundamentals l_{m,k} = (P(x)/P(x_k)) l_k(x) of the full zero set:
///   w(x) sum_k [1 - (L''/L')(x_k)(x - x_k)] l_{m,k}^2 / w(x_k)
///          + w(x) sum_k (x - x_k) l_{m,k}^2 (1/w)'(x_k),   w = hat weight.
inline double hermite_form(const ExceptionalSeries& ys, const LagrangeBasis& L, const DensePoly& P, double x)
{
    const WeightSpec w = WeightSpec::hat(ys.spec, 1.0);
    const std::size_t hit = L.node_index(x);
    if (hit != L.size()) return 1.0;
    const double lwx = weight_logs(w, x).value;
    const double Px = P(x);
    CompensatedSum acc;
    for (std::size_t k = 0; k < L.size(); ++k) {
        const double xk = L.nodes()[k];
        const LogWeight lwk = weight_logs(w, xk);
        const double ratio = static_cast<double>(ys.eval_ld(xk, 2) / ys.eval_ld(xk, 1));
        auto [ll, s] = L.log_abs(k, x);
        (void)s;
        const double lmk2 = std::exp(2.0 * ll) * (Px / P(xk)) * (Px / P(xk));
        const double e = std::exp(lwx - lwk.value);
        // (1/w)'(x_k) w(x) = -(log w)'(x_k) w(x)/w(x_k)
        acc += e * lmk2 * (1.0 - ratio * (x - xk));
        acc += e * lmk2 * (x - xk) * (-lwk.d1);
    }
    return acc.value();
}

struct StabilityReport {
    FamilySpec spec;
    double min_G = 0.0, max_G = 0.0;
    double argmin = 0.0, argmax = 0.0;
    double min_one_minus_G = 0.0;  // over points that are not nodes
    double argmin_one_minus_G = 0.0;
    bool pass = false;             // 0 <= G <= 1 + 1e-10 everywhere
    bool one_minus_G_positive = false;
    std::size_t points = 0;
    long long total_degree = 0;    // n (2n - 2 + 2m)
};

/// Scan grid: count log-spaced points on (x_1 1e-4, x_n (1 + 10/n)), four tail
/// points, the nodes, and 3 points on each side of every node.
inline std::vector<double> stability_grid(const std::vector<double>& nodes, int count)
{
    std::vector<double> g;
    const int n = static_cast<int>(nodes.size());
    const double lo = nodes.front() * 1e-4;
    const double hi = nodes.back() * (1.0 + 10.0 / n);
    for (int i = 0; i < count; ++i) g.push_back(lo * std::pow(hi / lo, i / (count - 1.0)));
    for (double f : {1.5, 2.0, 4.0, 8.0}) g.push_back(hi * f);
    for (int k = 0; k < n; ++k) {
        const auto K = static_cast<std::size_t>(k);
        double gap = INFINITY;
        if (k > 0) gap = std::min(gap, nodes[K] - nodes[K - 1]);
        if (k + 1 < n) gap = std::min(gap, nodes[K + 1] - nodes[K]);
        if (!std::isfinite(gap)) gap = nodes[K];
        g.push_back(nodes[K]);
        for (int j = 1; j <= 3; ++j) {
            g.push_back(nodes[K] - gap * j / 8.0);
            g.push_back(nodes[K] + gap * j / 8.0);
        }
    }
    std::erase_if(g, [](double v) { return !(v > 0.0); });
    std::sort(g.begin(), g.end());
    return g;
}

inline StabilityReport stability_scan(const ZeroSet& zs, int grid = 1000)
{
    StabilityReport r;
    r.spec = zs.spec;
    const auto& x = zs.regular;
    if (x.empty()) throw Error(Errc::invalid_spec, "stability scan needs n >= 1");
    const WeightSpec v = WeightSpec::v(zs.spec, exceptional_factor(zs));
    const LagrangeBasis L(x);
    const std::vector<double> ones(x.size(), 1.0);
    r.min_G = INFINITY;
    r.max_G = -INFINITY;
    r.min_one_minus_G = INFINITY;
    for (double t : stability_grid(x, grid)) {
        const double G = grunwald(L, v, ones, t);
        ++r.points;
        if (G < r.min_G) {
            r.min_G = G;
            r.argmin = t;
        }
        if (G > r.max_G) {
            r.max_G = G;
            r.argmax = t;
        }
        if (L.node_index(t) == L.size() && 1.0 - G < r.min_one_minus_G) {
            r.min_one_minus_G = 1.0 - G;
            r.argmin_one_minus_G = t;
        }
    }
    r.pass = r.min_G >= 0.0 && r.max_G <= 1.0 + 1e-10;
    r.one_minus_G_positive = r.min_one_minus_G > 0.0;
    const long long n = zs.spec.n, m = zs.spec.m;
    r.total_degree = n * (2 * n - 2 + 2 * m);
    return r;
}

inline StabilityReport stability_scan(const FamilySpec& s, int grid = 1000)
{
    return stability_scan(find_zeros(s), grid);
}

/// (1/v)'' and (1/v)'''' at x for 1/v = S^2 e^x / (P^2 x^(alpha+1)) (Laguerre).
inline std::pair<double, double> inverse_weight_derivatives(const WeightSpec& v, double x)
{
    using J = Jet<4>;
    auto horner = [](const DensePoly& p, const J& t) {
        J acc = J::constant(p.lead());
        for (std::size_t i = p.size() - 1; i-- > 0;) acc = acc * t + J::constant(p[i]);
        return acc;
    };
    const J X = J::variable(x);
    const J S = v.family.m > 0 ? horner(v.S, X) : J::constant(1.0);
    const J P = v.variant == WeightSpec::Variant::v ? horner(v.P, X) : J::constant(1.0);
    const J r = (S * S) * exp(X) / ((P * P) * pow(X, v.family.alpha + v.shift));
    return {r.derivative(2), r.derivative(4)};
}

} // namespace xf

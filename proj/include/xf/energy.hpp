#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "errors.hpp"
#include "exceptional.hpp"
#include "summation.hpp"
#include "weight.hpp"

namespace xf {

enum class Classification { saddle, local_max, indefinite, none };

inline const char* classification_name(Classification c)
{
    switch (c) {
    case Classification::saddle: return "saddle";
    case Classification::local_max: return "local-max";
    case Classification::indefinite: return "indefinite";
    case Classification::none: return "none";
    }
    return "?";
}

struct EnergyReport {
    double logT = 0.0;
    std::vector<double> gradient;
    Eigen::MatrixXd hessian;
    std::vector<int> diag_signs;
    bool diagonally_dominant = false;
    std::vector<int> non_dominant_rows;
    double max_gradient = 0.0;
    double stationary_tol = 0.0;
    bool stationary = false;
    Classification classification = Classification::none;
};

namespace detail {

inline void check_distinct(const std::vector<double>& u)
{
    double scale = 1.0;
    for (double x : u) scale = std::max(scale, std::abs(x));
    std::vector<double> s(u);
    std::sort(s.begin(), s.end());
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] - s[i - 1] < 1e-14 * scale)
            throw Error(Errc::coincident_nodes, "nodes closer than 1e-14 relative");
}

} // namespace detail

/// sum_j log w(u_j) + 2 sum_{i<j} log|u_i - u_j|.
inline double log_energy(const std::vector<double>& u, const WeightSpec& w)
{
    detail::check_distinct(u);
    CompensatedSum acc;
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += weight_logs(w, u[i]).value;
        for (std::size_t j = i + 1; j < u.size(); ++j) acc += 2.0 * std::log(std::abs(u[i] - u[j]));
    }
    return acc.value();
}

/// C_k = 2 sum_{j != k} 1/(u_k - u_j) + (log w)'(u_k), the gradient of log T.
inline std::vector<double> fejer_constants(const std::vector<double>& u, const WeightSpec& w)
{
    detail::check_distinct(u);
    std::vector<double> c(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        CompensatedSum acc;
        acc += weight_logs(w, u[k]).d1;
        for (std::size_t j = 0; j < u.size(); ++j)
            if (j != k) acc += 2.0 / (u[k] - u[j]);
        c[k] = acc.value();
    }
    return c;
}

/// Gradient, Hessian and classification of log T at u.
inline EnergyReport energy_hessian(const std::vector<double>& u, const WeightSpec& w)
{
    detail::check_distinct(u);
    const std::size_t n = u.size();
    EnergyReport r;
    r.logT = log_energy(u, w);
    r.hessian = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    r.gradient.resize(n);
    double max_dlog = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const LogWeight lw = weight_logs(w, u[i]);
        max_dlog = std::max(max_dlog, std::abs(lw.d1));
        CompensatedSum g, h;
        g += lw.d1;
        h += lw.d2;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = u[i] - u[j];
            g += 2.0 / d;
            h += -2.0 / (d * d);
            r.hessian(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 2.0 / (d * d);
        }
        r.gradient[i] = g.value();
        r.hessian(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = h.value();
    }
    for (double g : r.gradient) r.max_gradient = std::max(r.max_gradient, std::abs(g));
    r.stationary_tol = 1e-7 * (1.0 + max_dlog);
    r.stationary = r.max_gradient < r.stationary_tol;

    r.diagonally_dominant = true;
    bool any_pos = false, any_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
        const auto I = static_cast<Eigen::Index>(i);
        const double d = r.hessian(I, I);
        r.diag_signs.push_back((d > 0) - (d < 0));
        any_pos |= d > 0;
        any_neg |= d < 0;
        const double off = r.hessian.row(I).cwiseAbs().sum() - std::abs(d);
        if (!(std::abs(d) > off)) {
            r.diagonally_dominant = false;
            r.non_dominant_rows.push_back(static_cast<int>(i));
        }
    }
    if (!r.stationary)
        r.classification = Classification::none;
    else if (any_pos && any_neg)
        r.classification = Classification::saddle;
    else if (any_neg && !any_pos && r.diagonally_dominant)
        r.classification = Classification::local_max;
    else
        r.classification = Classification::indefinite;
    return r;
}

/// Phi = N - M^2/4 - M'/2 for the family's ODE.
inline double phi(const RationalODE& ode, double x)
{
    try {
        const double M = ode.M(x);
        return ode.N(x) - 0.25 * M * M - 0.5 * ode.M_prime(x);
    } catch (const Error& e) {
        throw Error(Errc::pole_evaluation, e.what());
    }
}

inline double phi(const FamilySpec& s, double x) { return phi(ode_coeffs(s), x); }

inline double jacobi_rho(const FamilySpec& s)
{
    const double a = s.alpha, b = s.beta;
    return 4.0 * s.n * (s.n + a + b + 1.0) - 8.0 * s.m * (s.m + b - a);
}

/// The printed closed form for -(2/3) Phi of the Jacobi family at x, with
/// sp = S'/S(x).
inline double jacobi_phi_printed(const FamilySpec& s, double x, double sp)
{
    const double a = s.alpha, b = s.beta, rho = jacobi_rho(s);
    const double g = (-(a - b) * (a - b) - 1.0 + (1.0 + 2.0 * a) * (1.0 + 2.0 * b) + rho) * x * x +
                     2.0 * (b * b - a * a) * x -
                     ((a + b) * (a + b) + 3.0 + (1.0 + 2.0 * a) * (1.0 + 2.0 * b) + rho);
    const double omx2 = 1.0 - x * x;
    const double t = 2.0 * sp * omx2 + a + b + (a - b) * x;
    return (2.0 * t * t + g) / (6.0 * omx2 * omx2);
}

/// Corrected closed form for -(2/3) Phi of the Jacobi family; agrees with
/// Phi from the ODE to rounding.
inline double jacobi_phi_corrected(const FamilySpec& s, double x, double sp)
{
    const double a = s.alpha, b = s.beta, rho = jacobi_rho(s), m = s.m;
    const double g = (rho - a * a + 6.0 * a * b - 2.0 * a - b * b + 6.0 * b + 8.0 * m - 2.0) * x * x +
                     (-2.0 * a * a - 4.0 * a + 2.0 * b * b - 4.0 * b) * x -
                     (rho + a * a + 6.0 * a * b + 2.0 * a + b * b + 2.0 * b + 8.0 * m + 4.0);
    const double omx2 = 1.0 - x * x;
    const double t = 2.0 * sp * omx2 + a + b + (a - b + 1.0) * x;
    return (2.0 * t * t + g) / (6.0 * omx2 * omx2);
}

} // namespace xf

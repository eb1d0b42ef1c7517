#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "energy.hpp"
#include "exceptional.hpp"
#include "fekete.hpp"
#include "interp.hpp"
#include "roots.hpp"
#include "weight.hpp"

namespace xf {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    int trials = 20;
    std::uint64_t seed = 0;
    int grid = 1000;
};

struct VerifyReport {
    FamilySpec spec;
    std::vector<Check> checks;
    bool all_pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

namespace detail {

inline std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

} // namespace detail

/// Max literal ODE residual over the sample points.
inline double max_ode_residual(const ExceptionalSeries& ys)
{
    const RationalODE ode = ode_coeffs(ys.spec);
    double worst = 0.0;
    for (double x : residual_sample_points(ys.spec)) worst = std::max(worst, ode_residual(ode, ys, x).literal);
    return worst;
}

/// Full zero set as reals; throws if an exceptional zero is not real.
inline std::vector<double> real_zero_set(const ZeroSet& zs)
{
    std::vector<double> u;
    for (auto z : zs.exceptional) {
        if (z.imag() != 0.0) throw Error(Errc::invalid_spec, "exceptional zeros are not all real");
        u.push_back(z.real());
    }
    u.insert(u.end(), zs.regular.begin(), zs.regular.end());
    return u;
}

struct SaddleCheck {
    double max_gradient = 0.0;
    bool sign_pattern = false;
    bool dominant = false;
    std::vector<int> non_dominant_rows;
    double phi_rel = 0.0;  // Hessian diagonal vs -(2/3) Phi
};

/// Hessian at the full zero set under the hat weight with shift 1.
inline SaddleCheck saddle_check(const ZeroSet& zs)
{
    SaddleCheck r;
    const FamilySpec& s = zs.spec;
    const std::vector<double> u = real_zero_set(zs);
    const EnergyReport e = energy_hessian(u, WeightSpec::hat(s, 1.0));
    r.max_gradient = e.max_gradient;
    r.sign_pattern = true;
    for (int i = 0; i < s.m + s.n; ++i) r.sign_pattern &= e.diag_signs[static_cast<std::size_t>(i)] == (i < s.m ? 1 : -1);
    r.dominant = e.diagonally_dominant;
    r.non_dominant_rows = e.non_dominant_rows;
    const RationalODE ode = ode_coeffs(s);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double h = e.hessian(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
        const double p = -2.0 / 3.0 * phi(ode, u[i]);
        r.phi_rel = std::max(r.phi_rel, std::abs(h - p) / std::abs(p));
    }
    return r;
}

struct FeketeCheck {
    double max_gradient = 0.0;
    bool all_diag_negative = false;
    int clusters = 0;
    int non_converged = 0;
    int domain_escapes = 0;
    double deviation = INFINITY;  // single cluster vs regular zeros
};

/// Regular zeros under v: stationarity, diagonal signs, and the uniqueness probe.
inline FeketeCheck fekete_check(const ZeroSet& zs, int trials, std::uint64_t seed)
{
    FeketeCheck r;
    const FamilySpec& s = zs.spec;
    const WeightSpec v = WeightSpec::v(s, exceptional_factor(zs));
    const EnergyReport e = energy_hessian(zs.regular, v);
    r.max_gradient = e.max_gradient;
    r.all_diag_negative = std::all_of(e.diag_signs.begin(), e.diag_signs.end(), [](int g) { return g < 0; });
    const UniquenessReport u = uniqueness_probe(v, optimization_domain(s), truncation_domain(s), s.n, trials, seed);
    r.clusters = static_cast<int>(u.clusters.size());
    r.non_converged = u.non_converged;
    r.domain_escapes = u.domain_escapes;
    if (u.clusters.size() == 1) {
        r.deviation = 0.0;
        for (std::size_t i = 0; i < zs.regular.size(); ++i)
            r.deviation = std::max(r.deviation, std::abs(u.clusters[0][i] - zs.regular[i]));
    }
    return r;
}

/// Smallest n in [1, n_max] where every Hessian diagonal at the regular zeros
/// under v is negative, or -1.
inline int smallest_all_negative_n(FamilySpec s, int n_max)
{
    for (int n = 1; n <= n_max; ++n) {
        s.n = n;
        const ZeroSet zs = find_zeros(s);
        const EnergyReport e = energy_hessian(zs.regular, WeightSpec::v(s, exceptional_factor(zs)));
        if (std::all_of(e.diag_signs.begin(), e.diag_signs.end(), [](int g) { return g < 0; })) return n;
    }
    return -1;
}

struct JacobiFormCheck {
    double printed_rel = 0.0;
    double corrected_rel = 0.0;
};

/// The closed forms of -(2/3) Phi against Phi from the ODE, at the regular zeros.
inline JacobiFormCheck jacobi_form_check(const ZeroSet& zs)
{
    JacobiFormCheck r;
    const FamilySpec& s = zs.spec;
    const RationalODE ode = ode_coeffs(s);
    const DensePoly S = build_S(s);
    for (double x : zs.regular) {
        const double sp = poly_eval(S, x, 1) / S(x);
        const double d = -2.0 / 3.0 * phi(ode, x);
        r.printed_rel = std::max(r.printed_rel, std::abs(jacobi_phi_printed(s, x, sp) - d) / std::abs(d));
        r.corrected_rel = std::max(r.corrected_rel, std::abs(jacobi_phi_corrected(s, x, sp) - d) / std::abs(d));
    }
    return r;
}

/// Every check that applies to one spec. Thresholds are the acceptance ones.
inline VerifyReport verify_spec(const FamilySpec& s, const VerifyOptions& opt = {})
{
    using detail::fmt;
    VerifyReport rep;
    rep.spec = s;
    auto add = [&](std::string name, bool pass, std::string detail) {
        rep.checks.push_back({std::move(name), pass, std::move(detail)});
    };
    require_valid(s);
    const bool li = s.kind == Family::laguerre1;

    const ExceptionalSeries ys = build_exceptional_series(s);
    const double res = max_ode_residual(ys);
    add("ode_residual", res < 1e-8, "max " + fmt(res) + " < 1e-8");
    if (li) {
        const double lead = build_exceptional(s).lead();
        add("leading_coefficient", lead == exceptional_lead(s), "lead " + fmt(lead));
    }

    const ZeroSet zs = find_zeros(ys);
    add("zero_counts", true,
        std::to_string(zs.regular.size()) + " regular, " + std::to_string(zs.exceptional.size()) + " exceptional");
    if (li) {
        const InterlacingReport il = check_interlacing(zs);
        int bad = 0;
        for (const auto& c : il.checks) bad += !c.pass;
        add("interlacing", il.all_pass(), std::to_string(il.checks.size()) + " inequalities, " + std::to_string(bad) + " fail");
    }

    if (li && s.n >= 1) {
        const SaddleCheck sc = saddle_check(zs);
        add("saddle_gradient", sc.max_gradient < 1e-7, "max " + fmt(sc.max_gradient) + " < 1e-7");
        add("saddle_sign_pattern", sc.sign_pattern, "+ on exceptional, - on regular");
        add("saddle_dominance", sc.dominant, std::to_string(sc.non_dominant_rows.size()) + " non-dominant rows");
        add("phi_diagonal", sc.phi_rel < 1e-6, "rel " + fmt(sc.phi_rel) + " < 1e-6");
    }

    if (s.n >= 1) {
        const FeketeCheck fc = fekete_check(zs, opt.trials, opt.seed);
        add("fekete_gradient", fc.max_gradient < 1e-7, "max " + fmt(fc.max_gradient) + " < 1e-7");
        if (!li) add("fekete_diagonals_negative", fc.all_diag_negative, "all Hessian diagonals under v");
        add("fekete_unique", fc.clusters == 1 && fc.deviation < 1e-6,
            std::to_string(fc.clusters) + " clusters, deviation " + fmt(fc.deviation));
    }

    if (li && s.n >= 1) {
        const StabilityReport st = stability_scan(zs, opt.grid);
        add("stability", st.pass, "G in [" + fmt(st.min_G) + ", " + fmt(st.max_G) + "]");
        add("stability_margin", st.one_minus_G_positive, "min(1-G) off nodes " + fmt(st.min_one_minus_G));
        const ZeroSumCheck z = zero_sum_check(zs);
        if (z.in_regime) add("zero_sum", z.abs_err < 1e-6 * z.rhs, "|sum x - rhs| " + fmt(z.abs_err) + ", rhs " + fmt(z.rhs));
    }

    if (s.kind == Family::jacobi && s.n >= 1) {
        const JacobiFormCheck j = jacobi_form_check(zs);
        add("jacobi_closed_form", j.printed_rel < 1e-6, "rel " + fmt(j.printed_rel) + " < 1e-6");
    }
    return rep;
}

} // namespace xf

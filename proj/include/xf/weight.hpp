#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "dense_poly.hpp"
#include "errors.hpp"
#include "exceptional.hpp"
#include "family.hpp"

namespace xf {

/// For Laguerre-II the v weight is printed with x^alpha although its
/// superscript and the ODE both give x^(alpha+1). The default follows the ODE.
enum class WeightExponent { alpha_plus_one, as_written };

struct WeightSpec {
    enum class Variant { base, hat, v };

    FamilySpec family;
    Variant variant = Variant::base;
    double shift = 0.0;  // added to the Laguerre power, or to both Jacobi powers
    DensePoly P;         // only for the v variant
    WeightExponent exponent = WeightExponent::alpha_plus_one;
    DensePoly S;  // cached build_S(family) for hat and v

    /// x^alpha e^-x or (1-x)^alpha (1+x)^beta.
    static WeightSpec base(const FamilySpec& s, double shift = 0.0)
    {
        WeightSpec w;
        w.family = s;
        w.shift = shift;
        return w;
    }

    /// The base weight with powers raised by shift, divided by S^2.
    static WeightSpec hat(const FamilySpec& s, double shift = 1.0)
    {
        WeightSpec w = base(s, shift);
        w.variant = Variant::hat;
        w.S = build_S(s);
        return w;
    }

    /// hat(shift 1) times P^2.
    static WeightSpec v(const FamilySpec& s, DensePoly P, WeightExponent e = WeightExponent::alpha_plus_one)
    {
        WeightSpec w = hat(s, (s.kind == Family::laguerre2 && e == WeightExponent::as_written) ? 0.0 : 1.0);
        w.variant = Variant::v;
        w.P = std::move(P);
        w.exponent = e;
        return w;
    }

    bool uses_as_written_exponent() const
    {
        return variant == Variant::v && family.kind == Family::laguerre2 && exponent == WeightExponent::as_written;
    }
};

inline const char* variant_name(WeightSpec::Variant v)
{
    switch (v) {
    case WeightSpec::Variant::base: return "base";
    case WeightSpec::Variant::hat: return "hat";
    case WeightSpec::Variant::v: return "v";
    }
    return "?";
}

/// log w and its first two derivatives.
struct LogWeight {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

namespace detail {

inline bool is_integer(double v) { return std::abs(v - std::round(v)) == 0.0; }

/// e * log|x - c| with its derivatives; a nonpositive base is allowed only
/// when |.| is taken or the exponent is an integer.
inline void add_power(LogWeight& lw, double x, double c, double e, double sign, bool allow_abs)
{
    if (e == 0.0) return;
    const double t = sign * (x - c);
    if (t == 0.0) throw Error(Errc::pole_evaluation, "weight evaluated at the endpoint " + std::to_string(c));
    if (t < 0.0 && !allow_abs && !is_integer(e))
        throw Error(Errc::pole_evaluation, "non-integer power of a negative base at x=" + std::to_string(x));
    lw.value += e * std::log(std::abs(t));
    lw.d1 += e / (x - c);
    lw.d2 -= e / ((x - c) * (x - c));
}

/// 2 k log|Q(x)| for Q = S (k = -1) or P (k = +1).
inline void add_squared_poly(LogWeight& lw, const DensePoly& Q, double x, double k, const char* name)
{
    const double q = Q(x);
    const double scale = Q.max_abs_coeff() * std::max(1.0, std::pow(std::abs(x), Q.degree()));
    if (std::abs(q) <= 1e-300 || std::abs(q) <= 1e-15 * scale)
        throw Error(Errc::pole_evaluation, std::string("weight evaluated at a zero of ") + name);
    const double r1 = poly_eval(Q, x, 1) / q;
    const double r2 = poly_eval(Q, x, 2) / q;
    lw.value += 2.0 * k * std::log(std::abs(q));
    lw.d1 += 2.0 * k * r1;
    lw.d2 += 2.0 * k * (r2 - r1 * r1);
}

} // namespace detail

/// log w, (log w)', (log w)'' at x, from the closed forms.
inline LogWeight weight_logs(const WeightSpec& w, double x)
{
    const FamilySpec& s = w.family;
    LogWeight lw;
    const bool abs_ok = w.variant == WeightSpec::Variant::hat;
    if (s.kind == Family::jacobi) {
        detail::add_power(lw, x, 1.0, s.alpha + w.shift, -1.0, abs_ok);
        detail::add_power(lw, x, -1.0, s.beta + w.shift, 1.0, abs_ok);
    } else {
        detail::add_power(lw, x, 0.0, s.alpha + w.shift, 1.0, abs_ok);
        lw.value -= x;
        lw.d1 -= 1.0;
    }
    if (w.variant != WeightSpec::Variant::base && s.m > 0) detail::add_squared_poly(lw, w.S, x, -1.0, "S");
    if (w.variant == WeightSpec::Variant::v) detail::add_squared_poly(lw, w.P, x, 1.0, "P");
    return lw;
}

} // namespace xf

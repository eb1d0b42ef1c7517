#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"

namespace xf {

enum class Family { laguerre1, laguerre2, jacobi };

inline const char* family_name(Family f)
{
    switch (f) {
    case Family::laguerre1: return "laguerre1";
    case Family::laguerre2: return "laguerre2";
    case Family::jacobi: return "jacobi";
    }
    return "?";
}

inline Family parse_family(const std::string& s)
{
    if (s == "laguerre1") return Family::laguerre1;
    if (s == "laguerre2") return Family::laguerre2;
    if (s == "jacobi") return Family::jacobi;
    throw Error(Errc::invalid_spec, "unknown family '" + s + "'");
}

/// Which exceptional polynomial: family, codimension m, parameters, and the
/// regular-degree index n (total degree m+n).
struct FamilySpec {
    Family kind = Family::laguerre1;
    int m = 1;
    double alpha = 1.0;
    double beta = 0.0;
    int n = 0;

    int degree() const { return m + n; }
    bool is_laguerre() const { return kind != Family::jacobi; }

    static FamilySpec laguerre1(int m, double alpha, int n) { return {Family::laguerre1, m, alpha, 0.0, n}; }
    static FamilySpec laguerre2(int m, double alpha, int n) { return {Family::laguerre2, m, alpha, 0.0, n}; }
    static FamilySpec jacobi(int m, double alpha, double beta, int n) { return {Family::jacobi, m, alpha, beta, n}; }
};

struct SpecCheck {
    bool valid = true;           // zero-structure lemmas apply
    bool theorem_regime = true;  // electrostatic theorems apply
    std::vector<std::string> notes;
};

inline bool jacobi_excluded(int m, double alpha, double beta)
{
    const double t = alpha + 1.0 - m - beta;
    for (int k = 0; k < m; ++k)
        if (std::abs(t - k) < 1e-12) return true;
    return false;
}

inline SpecCheck check_spec(const FamilySpec& s)
{
    SpecCheck r;
    auto bad = [&](const std::string& why) {
        r.valid = false;
        r.theorem_regime = false;
        r.notes.push_back(why);
    };
    if (s.m < 0 || s.n < 0) {
        bad("m and n must be nonnegative");
        return r;
    }
    if (!std::isfinite(s.alpha) || !std::isfinite(s.beta)) {
        bad("parameters must be finite");
        return r;
    }
    switch (s.kind) {
    case Family::laguerre1:
        if (s.m == 0) {
            if (!(s.alpha > -1.0)) bad("classical Laguerre needs alpha > -1");
        } else if (!(s.alpha > 0.0)) {
            bad("Laguerre-I needs alpha > 0");
        }
        if (r.valid && s.alpha < 1.0) {
            r.theorem_regime = false;
            r.notes.push_back("alpha < 1: outside the saddle/Fekete theorem regime");
        }
        break;
    case Family::laguerre2:
        if (!(s.alpha > s.m - 1.0) || !(s.alpha > -1.0)) bad("Laguerre-II needs alpha > m-1");
        if (r.valid && s.m > 0) r.notes.push_back("monic normalization");
        break;
    case Family::jacobi:
        if (s.m == 0) {
            if (!(s.alpha > -1.0 && s.beta > -1.0)) bad("classical Jacobi needs alpha, beta > -1");
            break;
        }
        if (jacobi_excluded(s.m, s.alpha, s.beta)) {
            bad("alpha+1-m-beta lies in {0,...,m-1}: S loses degree");
            break;
        }
        {
            const double t = s.alpha + 1.0 - s.m;
            bool cond_a = s.beta > -1.0 && s.beta < 0.0 && t > -1.0 && t < 0.0;
            bool cond_b = s.beta > 0.0 && t > 0.0;
            if (!cond_a && !cond_b) bad("neither condition (A) nor (B) holds");
            if (r.valid && !(s.alpha > s.m - 1.0 && s.beta > 0.0)) {
                r.theorem_regime = false;
                r.notes.push_back("Fekete theorem needs alpha > m-1 and beta > 0");
            }
            if (r.valid) r.notes.push_back("monic normalization");
        }
        break;
    }
    return r;
}

inline void require_valid(const FamilySpec& s)
{
    auto c = check_spec(s);
    if (!c.valid) {
        std::string msg;
        for (const auto& n : c.notes) msg += (msg.empty() ? "" : "; ") + n;
        throw Error(Errc::invalid_spec, msg);
    }
}

} // namespace xf

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Cholesky>

#include "energy.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "weight.hpp"

namespace xf {

struct Interval {
    double lo;
    double hi;
};

struct TraceEntry {
    int iteration = 0;
    double logT = 0.0;
    double max_gradient = 0.0;
    double step = 0.0;  // accepted step scale after halving
    bool newton = true; // false where the gradient fallback was used
};

struct FeketeResult {
    std::vector<double> nodes;
    std::vector<TraceEntry> trace;
    bool converged = false;
    int iterations = 0;
};

/// Carries the partial result of a failed ascent.
class FeketeError : public Error {
public:
    FeketeError(Errc c, const std::string& msg, FeketeResult r) : Error(c, msg), result_(std::move(r)) {}
    const FeketeResult& result() const { return result_; }

private:
    FeketeResult result_;
};

struct FeketeOptions {
    double gradient_tol = 1e-9;
    int max_iterations = 500;
};

namespace detail {

inline bool feasible(const std::vector<double>& u, const Interval& d)
{
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] > d.lo && u[i] < d.hi)) return false;
        if (i > 0 && !(u[i] > u[i - 1])) return false;
    }
    return true;
}

} // namespace detail

/// Damped Newton ascent of log T over ordered nodes in the open domain.
inline FeketeResult maximize_log_T(const WeightSpec& w, const Interval& domain, const std::vector<double>& init,
                                   const FeketeOptions& opt = {})
{
    FeketeResult res;
    res.nodes = init;
    if (!detail::feasible(res.nodes, domain))
        throw Error(Errc::domain_escape, "initial nodes must be strictly ordered inside the domain");
    const auto n = static_cast<Eigen::Index>(init.size());

    EnergyReport rep = energy_hessian(res.nodes, w);
    res.trace.push_back({0, rep.logT, rep.max_gradient, 0.0, true});
    for (int it = 1; it <= opt.max_iterations; ++it) {
        if (rep.max_gradient < opt.gradient_tol) {
            res.converged = true;
            break;
        }
        res.iterations = it;
        Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(rep.gradient.data(), n);
        Eigen::MatrixXd negH = -rep.hessian;
        Eigen::LLT<Eigen::MatrixXd> llt(negH);
        Eigen::VectorXd d;
        bool newton = llt.info() == Eigen::Success;
        if (newton) d = llt.solve(g);
        if (!newton || !d.allFinite() || g.dot(d) <= 0.0) {
            // not a local max model here: preconditioned gradient step
            newton = false;
            d.resize(n);
            for (Eigen::Index i = 0; i < n; ++i) d(i) = g(i) / std::max(std::abs(rep.hessian(i, i)), 1e-12);
        }

        bool accepted = false, any_feasible = false;
        double t = 1.0;
        EnergyReport next;
        for (int half = 0; half < 60; ++half, t *= 0.5) {
            std::vector<double> trial(res.nodes);
            for (Eigen::Index i = 0; i < n; ++i) trial[static_cast<std::size_t>(i)] += t * d(i);
            if (!detail::feasible(trial, domain)) continue;
            try {
                next = energy_hessian(trial, w);
            } catch (const Error&) {
                continue;
            }
            any_feasible = true;
            // rounding makes log T flat near the optimum; a tie counts if the
            // gradient still shrinks
            const double tie = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(rep.logT));
            if (next.logT > rep.logT || (next.logT >= rep.logT - tie && next.max_gradient < rep.max_gradient)) {
                res.nodes = std::move(trial);
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (!any_feasible)
                throw FeketeError(Errc::domain_escape, "step halving cannot restore feasibility", res);
            throw FeketeError(Errc::non_convergence, "no ascent step found", res);
        }
        rep = std::move(next);
        res.trace.push_back({it, rep.logT, rep.max_gradient, t, newton});
    }
    if (!res.converged && rep.max_gradient < opt.gradient_tol) res.converged = true;
    if (!res.converged)
        throw FeketeError(Errc::non_convergence, "gradient above tolerance after max iterations", res);
    return res;
}

/// Start region for random initial nodes.
inline Interval truncation_domain(const FamilySpec& s)
{
    if (s.kind == Family::jacobi) return {-1.0 + 1e-3, 1.0 - 1e-3};
    return {0.0, 4.0 * s.n + 2.0 * s.alpha + 4.0 * s.m};
}

inline Interval optimization_domain(const FamilySpec& s)
{
    if (s.kind == Family::jacobi) return {-1.0, 1.0};
    return {0.0, std::numeric_limits<double>::infinity()};
}

struct UniquenessReport {
    int trials = 0;
    int non_converged = 0;
    int domain_escapes = 0;
    std::vector<std::vector<double>> clusters;  // representative limit per cluster
    std::vector<int> cluster_sizes;
};

/// Ascent from random ordered starts; limits closer than tol (max absolute
/// node deviation) share a cluster. Trial k draws from seed_seq{seed, k}.
inline UniquenessReport uniqueness_probe(const WeightSpec& w, const Interval& domain, const Interval& start, int n,
                                         int trials, std::uint64_t seed = 0, double tol = 1e-5)
{
    UniquenessReport rep;
    rep.trials = trials;
    std::vector<std::vector<double>> limits(static_cast<std::size_t>(trials));
    std::vector<int> status(static_cast<std::size_t>(trials), 0);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t k) {
        std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(k)};
        std::mt19937_64 rng(ss);
        std::uniform_real_distribution<double> U(start.lo, start.hi);
        std::vector<double> init;
        do {
            init.clear();
            for (int i = 0; i < n; ++i) init.push_back(U(rng));
            std::sort(init.begin(), init.end());
        } while (std::adjacent_find(init.begin(), init.end()) != init.end() || !detail::feasible(init, domain));
        try {
            limits[k] = maximize_log_T(w, domain, init).nodes;
        } catch (const FeketeError& e) {
            status[k] = e.code() == Errc::domain_escape ? 2 : 1;
        } catch (const Error&) {
            status[k] = 1;
        }
    });
    for (std::size_t k = 0; k < limits.size(); ++k) {
        if (status[k] == 1) ++rep.non_converged;
        if (status[k] == 2) ++rep.domain_escapes;
        if (status[k] != 0) continue;
        bool placed = false;
        for (std::size_t c = 0; c < rep.clusters.size() && !placed; ++c) {
            double dev = 0.0;
            for (std::size_t i = 0; i < limits[k].size(); ++i)
                dev = std::max(dev, std::abs(limits[k][i] - rep.clusters[c][i]));
            if (dev < tol) {
                ++rep.cluster_sizes[c];
                placed = true;
            }
        }
        if (!placed) {
            rep.clusters.push_back(limits[k]);
            rep.cluster_sizes.push_back(1);
        }
    }
    return rep;
}

struct H11Search {
    FamilySpec spec;
    int trials = 0;
    bool found = false;
    double best_h11 = -std::numeric_limits<double>::infinity();
    std::vector<double> best_nodes;
    double max_log_weight_d2 = -std::numeric_limits<double>::infinity();  // sup of (log w)'' on the scan grid
    double argmax_log_weight_d2 = 0.0;
};

/// Random search for ordered nodes with H_11 > 0 under w. u_1 is drawn
/// log-uniformly on (1e-6, 10) and the others uniformly above it in the
/// start region, which favours a large (log w)''(u_1) against the repulsion.
inline H11Search h11_search(const WeightSpec& w, const Interval& start, int n, int trials, std::uint64_t seed = 0)
{
    H11Search r;
    r.spec = w.family;
    r.trials = trials;
    for (int i = 0; i <= 2000; ++i) {
        const double x = 1e-6 * std::pow(start.hi / 1e-6, i / 2000.0);
        try {
            const double d2 = weight_logs(w, x).d2;
            if (d2 > r.max_log_weight_d2) {
                r.max_log_weight_d2 = d2;
                r.argmax_log_weight_d2 = x;
            }
        } catch (const Error&) {
        }
    }
    std::vector<double> h(static_cast<std::size_t>(trials), -std::numeric_limits<double>::infinity());
    std::vector<std::vector<double>> nodes(static_cast<std::size_t>(trials));
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t k) {
        std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(k)};
        std::mt19937_64 rng(ss);
        std::uniform_real_distribution<double> E(std::log(1e-6), std::log(10.0));
        std::vector<double> u{std::exp(E(rng))};
        std::uniform_real_distribution<double> U(u[0], std::max(start.hi, 2.0 * u[0]));
        for (int i = 1; i < n; ++i) u.push_back(U(rng));
        std::sort(u.begin(), u.end());
        try {
            const EnergyReport e = energy_hessian(u, w);
            h[k] = e.hessian(0, 0);
            nodes[k] = std::move(u);
        } catch (const Error&) {
        }
    });
    for (std::size_t k = 0; k < h.size(); ++k)
        if (h[k] > r.best_h11) {
            r.best_h11 = h[k];
            r.best_nodes = nodes[k];
        }
    r.found = r.best_h11 > 0.0;
    return r;
}

} // namespace xf

// Build one Laguerre-I exceptional polynomial, find its zeros, and look at
// them as an electrostatic equilibrium.

#include <cstdio>

#include <xf.hpp>

int main()
{
    const auto s = xf::FamilySpec::laguerre1(/*m=*/2, /*alpha=*/2.0, /*n=*/6);

    const auto ys = xf::build_exceptional_series(s);
    std::printf("degree %d, max ODE residual %.2e\n", s.degree(), xf::max_ode_residual(ys));

    const auto zs = xf::find_zeros(ys);
    std::printf("regular zeros:");
    for (double x : zs.regular) std::printf(" %.6f", x);
    std::printf("\nexceptional zeros:");
    for (auto z : zs.exceptional) std::printf(" %.6f", z.real());
    std::printf("\ninterlacing holds: %s\n", xf::check_interlacing(zs).all_pass() ? "yes" : "no");

    // all zeros together are a saddle of log T under the hat weight
    const auto full = xf::energy_hessian(xf::real_zero_set(zs), xf::WeightSpec::hat(s));
    std::printf("full set: |grad| %.1e, %s\n", full.max_gradient, xf::classification_name(full.classification));

    // the regular zeros alone maximize log T under v
    const auto v = xf::WeightSpec::v(s, xf::exceptional_factor(zs));
    const auto probe = xf::uniqueness_probe(v, xf::optimization_domain(s), xf::truncation_domain(s), s.n, 8);
    std::printf("regular set: %zu cluster(s) from 8 random starts\n", probe.clusters.size());

    const auto st = xf::stability_scan(zs);
    std::printf("Gruenwald operator: G in [%.2e, %.6f], stable: %s\n", st.min_G, st.max_G, st.pass ? "yes" : "no");
    return 0;
}

// xf: command-line driver. Reports are JSON on stdout (keys sorted), series
// are CSV; errors go to stderr as JSON with exit 1 (bad input) or 2
// (numerical failure).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <xf.hpp>

using json = nlohmann::json;

namespace {

struct Selectors {
    std::string family = "laguerre1";
    int m = 1;
    double alpha = 1.0;
    double beta = 0.0;
    int n = 0;

    xf::FamilySpec spec() const { return {xf::parse_family(family), m, alpha, beta, n}; }
};

void add_selectors(CLI::App* cmd, Selectors& s)
{
    cmd->add_option("--family", s.family, "laguerre1 | laguerre2 | jacobi")->capture_default_str();
    cmd->add_option("--m", s.m, "codimension")->required();
    cmd->add_option("--alpha", s.alpha, "alpha")->required();
    cmd->add_option("--beta", s.beta, "beta (jacobi)")->capture_default_str();
    cmd->add_option("--n", s.n, "number of regular zeros")->required();
}

json spec_json(const xf::FamilySpec& s)
{
    json j{{"family", xf::family_name(s.kind)}, {"m", s.m}, {"alpha", s.alpha}, {"n", s.n}};
    if (s.kind == xf::Family::jacobi) j["beta"] = s.beta;
    return j;
}

json complex_list(const std::vector<std::complex<double>>& z)
{
    json a = json::array();
    for (auto v : z) a.push_back({v.real(), v.imag()});
    return a;
}

void emit(json j, const xf::FamilySpec* s)
{
    if (s) j["spec"] = spec_json(*s);
    j["version"] = xf::version;
    std::cout << j.dump(2) << '\n';
}

std::vector<double> read_nodes(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw xf::Error(xf::Errc::invalid_spec, "cannot open nodes file '" + path + "'");
    std::vector<double> u;
    for (double v; in >> v;) u.push_back(v);
    if (!in.eof()) throw xf::Error(xf::Errc::invalid_spec, "nodes file '" + path + "' has a non-numeric entry");
    if (u.empty()) throw xf::Error(xf::Errc::invalid_spec, "nodes file '" + path + "' is empty");
    return u;
}

xf::WeightExponent parse_exponent(const std::string& e)
{
    if (e == "alpha+1") return xf::WeightExponent::alpha_plus_one;
    if (e == "as-written") return xf::WeightExponent::as_written;
    throw xf::Error(xf::Errc::invalid_spec, "unknown exponent '" + e + "'");
}

json weight_json(const xf::WeightSpec& w)
{
    return {{"variant", xf::variant_name(w.variant)},
            {"shift", w.shift},
            {"exponent", w.uses_as_written_exponent() ? "as-written" : "alpha+1"}};
}

int cmd_poly(const Selectors& sel)
{
    const auto s = sel.spec();
    xf::require_valid(s);
    const auto mb = xf::build_exceptional_checked(s);
    const auto ys = xf::build_exceptional_series(s);
    emit({{"coeffs", mb.poly.coeffs()},
          {"degree", mb.poly.degree()},
          {"lead", mb.poly.lead()},
          {"least_squares_residual", mb.rel_residual},
          {"ode_residual", xf::max_ode_residual(ys)}},
         &s);
    return 0;
}

int cmd_zeros(const Selectors& sel)
{
    const auto s = sel.spec();
    xf::require_valid(s);
    const auto ys = xf::build_exceptional_series(s);
    const auto zs = xf::find_zeros(ys);
    json checks = json::array();
    const auto il = xf::check_interlacing(zs);
    for (const auto& c : il.checks)
        checks.push_back({{"label", c.label}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}, {"boundary", c.boundary}});
    emit({{"regular", zs.regular},
          {"exceptional", complex_list(zs.exceptional)},
          {"s_zeros", complex_list(zs.s_zeros)},
          {"deflation_tail", zs.deflation_tail},
          {"certificate", xf::zero_certificate(ys, zs)},
          {"interlacing", {{"all_pass", il.all_pass()}, {"checks", checks}}}},
         &s);
    return 0;
}

int cmd_energy(const Selectors& sel, const std::string& weight, const std::string& at, const std::string& exponent)
{
    const auto s = sel.spec();
    xf::require_valid(s);
    if (weight != "hat" && weight != "v") throw xf::Error(xf::Errc::invalid_spec, "--weight must be hat or v");
    const auto zs = xf::find_zeros(s);
    const xf::WeightSpec w = weight == "hat" ? xf::WeightSpec::hat(s, 1.0)
                                             : xf::WeightSpec::v(s, xf::exceptional_factor(zs), parse_exponent(exponent));
    std::vector<double> u;
    if (at == "zeros")
        u = weight == "hat" ? xf::real_zero_set(zs) : zs.regular;
    else
        u = read_nodes(at);
    const auto r = xf::energy_hessian(u, w);
    json H = json::array();
    for (Eigen::Index i = 0; i < r.hessian.rows(); ++i) {
        std::vector<double> row(static_cast<std::size_t>(r.hessian.cols()));
        for (Eigen::Index j = 0; j < r.hessian.cols(); ++j) row[static_cast<std::size_t>(j)] = r.hessian(i, j);
        H.push_back(row);
    }
    emit({{"nodes", u},
          {"weight", weight_json(w)},
          {"logT", r.logT},
          {"gradient", r.gradient},
          {"hessian", H},
          {"diag_signs", r.diag_signs},
          {"diagonally_dominant", r.diagonally_dominant},
          {"non_dominant_rows", r.non_dominant_rows},
          {"max_gradient", r.max_gradient},
          {"stationary_tol", r.stationary_tol},
          {"stationary", r.stationary},
          {"classification", xf::classification_name(r.classification)}},
         &s);
    return 0;
}

int cmd_fekete(const Selectors& sel, int trials, std::uint64_t seed, const std::string& exponent)
{
    const auto s = sel.spec();
    xf::require_valid(s);
    if (s.n < 1) throw xf::Error(xf::Errc::invalid_spec, "fekete needs n >= 1");
    if (trials < 1) throw xf::Error(xf::Errc::invalid_spec, "--trials must be positive");
    const auto zs = xf::find_zeros(s);
    const auto w = xf::WeightSpec::v(s, xf::exceptional_factor(zs), parse_exponent(exponent));
    const auto at = xf::energy_hessian(zs.regular, w);
    const auto u = xf::uniqueness_probe(w, xf::optimization_domain(s), xf::truncation_domain(s), s.n, trials, seed);
    json dev = nullptr;
    if (u.clusters.size() == 1) {
        double d = 0.0;
        for (std::size_t i = 0; i < zs.regular.size(); ++i) d = std::max(d, std::abs(u.clusters[0][i] - zs.regular[i]));
        dev = d;
    }
    json out{{"weight", weight_json(w)},
             {"seed", seed},
             {"trials", trials},
             {"regular_zeros", zs.regular},
             {"gradient_at_zeros", at.max_gradient},
             {"diag_signs_at_zeros", at.diag_signs},
             {"clusters", u.clusters},
             {"cluster_sizes", u.cluster_sizes},
             {"non_converged", u.non_converged},
             {"domain_escapes", u.domain_escapes},
             {"deviation_from_zeros", dev}};
    if (s.kind == xf::Family::laguerre1 && s.alpha > 0.0 && s.alpha < 1.0) {
        const auto h = xf::h11_search(w, xf::truncation_domain(s), s.n, 20 * trials, seed);
        out["h11_search"] = {{"found", h.found},
                             {"best_h11", h.best_h11},
                             {"best_nodes", h.best_nodes},
                             {"max_log_weight_d2", h.max_log_weight_d2},
                             {"argmax_log_weight_d2", h.argmax_log_weight_d2}};
    }
    emit(out, &s);
    return 0;
}

int cmd_interp(const Selectors& sel, int grid)
{
    const auto s = sel.spec();
    xf::require_valid(s);
    if (grid < 2) throw xf::Error(xf::Errc::invalid_spec, "--grid must be at least 2");
    const auto zs = xf::find_zeros(s);
    const auto r = xf::stability_scan(zs, grid);
    json out{{"min_G", r.min_G},
             {"max_G", r.max_G},
             {"argmin", r.argmin},
             {"argmax", r.argmax},
             {"min_one_minus_G", r.min_one_minus_G},
             {"argmin_one_minus_G", r.argmin_one_minus_G},
             {"pass", r.pass},
             {"one_minus_G_positive", r.one_minus_G_positive},
             {"points", r.points},
             {"total_degree", r.total_degree}};
    if (s.kind == xf::Family::laguerre1 && s.m == 1) {
        const auto v = xf::WeightSpec::v(s, xf::exceptional_factor(zs));
        json d = json::array();
        const double lo = zs.regular.front() / 10.0, hi = zs.regular.back();
        for (int i = 0; i < 10; ++i) {
            const double x = lo * std::pow(hi / lo, i / 9.0);
            auto [d2, d4] = xf::inverse_weight_derivatives(v, x);
            d.push_back({{"x", x}, {"d2", d2}, {"d4", d4}});
        }
        out["inverse_weight_derivatives"] = d;
    }
    emit(out, &s);
    return 0;
}

int cmd_diameter(int m, double alpha, int from, int to, double c, const std::string& summary)
{
    if (from < 2 || to < from) throw xf::Error(xf::Errc::invalid_spec, "need 2 <= n-from <= n-to");
    if (!(c > 0.0)) throw xf::Error(xf::Errc::invalid_spec, "--c must be positive");
    xf::require_valid(xf::FamilySpec::laguerre1(m, alpha, from));
    // one extra n below the range so the first delta is defined
    const int first = from > 2 ? from - 1 : from;
    const auto ds = xf::d_sequence(m, alpha, xf::n_range(first, to), c);
    std::printf("n,d,delta,rate_stat\n");
    for (std::size_t k = 0; k < ds.n_values.size(); ++k) {
        if (ds.n_values[k] < from) continue;
        std::printf("%d,%.17g,%.17g,%.17g\n", ds.n_values[k], ds.d[k], ds.deltas[k], ds.rate[k]);
    }
    if (!summary.empty()) {
        json gaps = json::array();
        for (const auto& g : ds.gaps) gaps.push_back({{"n", g.n}, {"reason", g.reason}});
        double pmax = 0.0;
        for (double v : ds.max_P2_over_S2) pmax = std::max(pmax, v);
        json out{{"spec", {{"family", "laguerre1"}, {"m", m}, {"alpha", alpha}, {"n_from", from}, {"n_to", to}}},
                 {"c", c},
                 {"rate_stat", ds.rate_stat},
                 {"gaps", gaps},
                 {"max_P2_over_S2", pmax},
                 {"version", xf::version}};
        std::size_t finite = 0;
        for (double r : ds.rate) finite += std::isfinite(r);
        if (finite >= 3) {
            const auto t = xf::rate_trend(ds);
            out["trend"] = {{"slope", t.slope}, {"slope_se", t.slope_se}, {"points", t.points}};
        }
        std::ofstream f(summary);
        if (!f) throw xf::Error(xf::Errc::invalid_spec, "cannot write '" + summary + "'");
        f << out.dump(2) << '\n';
    }
    return 0;
}

int cmd_verify(const Selectors& sel, const xf::VerifyOptions& opt)
{
    const auto s = sel.spec();
    const auto rep = xf::verify_spec(s, opt);
    json checks = json::array();
    for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    emit({{"checks", checks}, {"all_pass", rep.all_pass()}}, &s);
    return rep.all_pass() ? 0 : 1;
}

int fail(const std::string& kind, const std::string& msg, int code)
{
    std::cerr << json{{"error", kind}, {"message", msg}, {"exit_code", code}}.dump() << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exceptional orthogonal polynomials: construction, zeros, energy, stability"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(xf::version));

    Selectors sel;
    std::string weight = "hat", at = "zeros", exponent = "alpha+1", summary;
    int trials = 20, grid = 1000, from = 10, to = 30;
    std::uint64_t seed = 0;
    double c = 1.0;

    auto* poly = app.add_subcommand("poly", "monomial coefficients");
    add_selectors(poly, sel);
    auto* zeros = app.add_subcommand("zeros", "regular and exceptional zeros with interlacing");
    add_selectors(zeros, sel);
    auto* energy = app.add_subcommand("energy", "log T gradient and Hessian");
    add_selectors(energy, sel);
    energy->add_option("--weight", weight, "hat | v")->capture_default_str();
    energy->add_option("--at", at, "'zeros' or a file of nodes")->capture_default_str();
    energy->add_option("--nodes", at, "file of whitespace-separated nodes");
    energy->add_option("--exponent", exponent, "Laguerre-II v power: alpha+1 | as-written")->capture_default_str();
    auto* fekete = app.add_subcommand("fekete", "optimizer uniqueness probe");
    add_selectors(fekete, sel);
    fekete->add_option("--trials", trials)->capture_default_str();
    fekete->add_option("--seed", seed)->capture_default_str();
    fekete->add_option("--exponent", exponent, "Laguerre-II v power: alpha+1 | as-written")->capture_default_str();
    auto* interp = app.add_subcommand("interp", "weighted Gruenwald stability scan");
    add_selectors(interp, sel);
    interp->add_option("--grid", grid)->capture_default_str();
    auto* diameter = app.add_subcommand("diameter", "transfinite-diameter sequence as CSV");
    diameter->add_option("--m", sel.m)->required();
    diameter->add_option("--alpha", sel.alpha)->required();
    diameter->add_option("--n-from", from)->capture_default_str();
    diameter->add_option("--n-to", to)->capture_default_str();
    diameter->add_option("--c", c)->capture_default_str();
    diameter->add_option("--summary", summary, "write the JSON summary here");
    auto* verify = app.add_subcommand("verify", "all applicable checks for one spec");
    add_selectors(verify, sel);
    verify->add_option("--trials", trials)->capture_default_str();
    verify->add_option("--seed", seed)->capture_default_str();
    verify->add_option("--grid", grid)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("UsageError", e.what(), 1);
    }

    try {
        if (*poly) return cmd_poly(sel);
        if (*zeros) return cmd_zeros(sel);
        if (*energy) return cmd_energy(sel, weight, at, exponent);
        if (*fekete) return cmd_fekete(sel, trials, seed, exponent);
        if (*interp) return cmd_interp(sel, grid);
        if (*diameter) return cmd_diameter(sel.m, sel.alpha, from, to, c, summary);
        if (*verify) return cmd_verify(sel, {trials, seed, grid});
    } catch (const xf::Error& e) {
        return fail(xf::errc_name(e.code()), e.what(), e.code() == xf::Errc::invalid_spec ? 1 : 2);
    } catch (const std::exception& e) {
        return fail("InternalError", e.what(), 2);
    }
    return 1;
}

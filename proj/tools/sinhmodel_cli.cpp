#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sinhmodel/acceptance.hpp"
#include "sinhmodel/boundary_functions.hpp"
#include "sinhmodel/equilibrium.hpp"
#include "sinhmodel/expansion.hpp"
#include "sinhmodel/gaussian_exact.hpp"
#include "sinhmodel/reference_oracle.hpp"

using json = nlohmann::json;
using namespace sinhmodel;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    double omega1 = 1.0, omega2 = 1.0, beta = 1.0, alpha = 0.1;
    double N = 0.0;
    std::string potential;  // path to a JSON file, or inline JSON
    std::string out;
    std::uint64_t seed = 12345;
    double rel_tol = 1e-10;
    int order = 3;
};

json read_potential_json(const std::string& spec) {
    if (spec.empty()) return json{{"kind", "quadratic"}, {"g", 1.0}, {"t", 0.0}};
    try {
        if (!spec.empty() && spec.front() == '{') return json::parse(spec);
        std::ifstream in(spec);
        if (!in) throw ValidationError("cannot open potential file " + spec);
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("potential JSON: ") + e.what());
    }
}

Potential make_potential(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "quadratic") return Potential::quadratic(j.value("g", 1.0), j.value("t", 0.0));
    if (kind == "polynomial") {
        if (!j.contains("coeffs") || !j["coeffs"].is_array())
            throw ValidationError("polynomial potential needs a coeffs array");
        return Potential::polynomial(j["coeffs"].get<std::vector<double>>());
    }
    throw ValidationError("potential kind must be \"quadratic\" or \"polynomial\"");
}

ModelParams make_params(const Config& c) { return ModelParams(c.omega1, c.omega2, c.beta, c.alpha); }

json config_json(const Config& c, const std::string& command, const json& extra = json::object()) {
    json j{{"command", command},
           {"omega1", c.omega1},
           {"omega2", c.omega2},
           {"beta", c.beta},
           {"alpha", c.alpha},
           {"potential", read_potential_json(c.potential)},
           {"seed", c.seed},
           {"rel_tol", c.rel_tol},
           {"order", c.order}};
    if (c.N > 0.0) j["N"] = c.N;
    for (auto& [k, v] : extra.items()) j[k] = v;
    return j;
}

void emit(const Config& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw ValidationError("cannot write " + c.out);
    f << text << "\n";
}

void emit_json(const Config& c, const json& j) { emit(c, j.dump(2)); }

double require_N(const Config& c) {
    if (!(c.N >= 1.0)) throw ValidationError("--N is required and must be >= 1");
    return c.N;
}

json support_json(const Support& s) {
    return {{"a", s.a},
            {"b", s.b},
            {"a_N", s.a_N},
            {"b_N", s.b_N},
            {"a_N1", s.a_N1},
            {"b_N1", s.b_N1},
            {"a_N1_alternative", s.a_N1_alternative},
            {"b_N1_alternative", s.b_N1_alternative},
            {"order", s.order},
            {"N", s.N},
            {"iterations", s.iterations},
            {"residual", s.residual}};
}

json report_json(const ExpansionReport& r) {
    json terms = json::array();
    for (const auto& t : r.terms)
        terms.push_back({{"label", t.label},
                         {"exponent", t.exponent},
                         {"coefficient", t.coefficient},
                         {"log_power", t.log_power},
                         {"value", t.value}});
    return {{"terms", terms},
            {"total", r.total()},
            {"truncation_order", r.truncation_order},
            {"error_order", r.error_order_label},
            {"N", r.N}};
}

int cmd_constants(const Config& c) {
    const ModelParams p = make_params(c);
    const BoundaryFunctions bf(p);
    json u = json::object(), dp = json::object(), dsl = json::object();
    for (int l = 1; l <= 6; ++l) u["u_" + std::to_string(l)] = bf.u(l);
    for (int k = 0; k <= 4; ++k) dp["i^" + std::to_string(k) + " daleth_" + std::to_string(k)] = bf.daleth_p_rotated(k);
    for (int n = 0; n <= 2; ++n)
        for (int s = 0; s <= n; ++s) {
            const auto r = bf.daleth_sl_routes(s, n - s);
            dsl[std::to_string(s) + "," + std::to_string(n - s)] = {{"moment", r.moment}, {"explicit", r.explicit_}};
        }
    const auto al = bf.aleph0();
    json res{{"u", u},
             {"daleth_p", dp},
             {"daleth_sl", dsl},
             {"daleth_00", bf.daleth_sl(0, 0)},
             {"gimel_0", bf.gimel(0)},
             {"aleph_0", {{"value", al.value},
                          {"term1", al.term1},
                          {"term2", al.term2},
                          {"alternative_form", al.alternative_form}}},
             {"varsigma", p.varsigma()},
             {"kappa0", p.kappa0()},
             {"log_constant", p.log_constant()}};
    emit_json(c, {{"config", config_json(c, "constants")}, {"result", res}});
    return 0;
}

int cmd_endpoints(const Config& c) {
    const ModelParams p = make_params(c);
    const Potential V = make_potential(read_potential_json(c.potential));
    auto [a, b] = endpoints_infinite(V, p);
    json res{{"a", a}, {"b", b}};
    if (c.N > 0.0) {
        const BoundaryFunctions bf(p);
        res["finite_N"] = support_json(endpoints_N(V, p, bf, require_N(c), c.order));
    }
    emit_json(c, {{"config", config_json(c, "endpoints")}, {"result", res}});
    return 0;
}

int cmd_expand(const Config& c) {
    const ModelParams p = make_params(c);
    const double N = require_N(c);
    const Potential V = make_potential(read_potential_json(c.potential));
    const BoundaryFunctions bf(p);
    const auto m = main_expansion(V, p, bf, N, c.order);
    json res = report_json(m.report);
    res["support"] = support_json(m.support);
    res["g_N"] = m.g_N;
    res["t_N"] = m.t_N;
    res["matched"] = m.matched;
    if (m.logZ_gaussian) res["logZ_gaussian"] = *m.logZ_gaussian;
    if (m.logZ_absolute) res["logZ_absolute"] = *m.logZ_absolute;
    const Potential W = Potential::quadratic(m.g_N, m.t_N);
    const double n2a = std::pow(N, 2.0 + p.alpha);
    res["diagnostics"] = {
        {"leading_free_energy_difference", n2a * (free_energy_leading(V, p) - free_energy_leading(W, p))},
        {"capricornus_0_interpolation_term", m.matched ? 0.0 : -n2a * capricornus0_interpolation(V, W, bf, m.support)}};
    emit_json(c, {{"config", config_json(c, "expand")}, {"result", res}});
    return 0;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ValidationError("bad list entry '" + item + "'");
        }
    }
    return out;
}

int cmd_gaussian(const Config& c, double g, double t, const std::string& sweep) {
    const ModelParams p = make_params(c);
    std::vector<double> Ns = sweep.empty() ? std::vector<double>{require_N(c)} : parse_list(sweep);
    json rows = json::array();
    for (double N : Ns) {
        const GaussianSpec spec{g, t, p, N};
        json row{{"N", N}, {"tau", spec.tau()}};
        row["asymptotic"] = report_json(gaussian_logZ_asymptotic(spec));
        if (p.beta == 1.0 && N == std::floor(N) && N <= 1e7) {
            row["exact"] = gaussian_logZ_exact(spec);
            row["residual"] = gaussian_asymptotic_residual(spec, true);
            row["residual_without_pole_term"] = gaussian_asymptotic_residual(spec, false);
        }
        rows.push_back(row);
    }
    emit_json(c, {{"config", config_json(c, "gaussian", {{"g", g}, {"t", t}, {"residual_sweep", sweep}})},
                  {"result", rows}});
    return 0;
}

int cmd_density(const Config& c, int grid) {
    if (grid < 2) throw ValidationError("--grid must be >= 2");
    const ModelParams p = make_params(c);
    const Potential V = make_potential(read_potential_json(c.potential));
    const BoundaryFunctions bf(p);
    const bool finite = c.N > 0.0;
    const EquilibriumDensity rho =
        finite ? density_N(V, p, bf, endpoints_N(V, p, bf, require_N(c), c.order)) : equilibrium_density_infinite(V, p);
    const double lo = finite ? rho.support.a_N : rho.support.a, hi = finite ? rho.support.b_N : rho.support.b;
    std::vector<double> xs(grid), ys(grid);
    for (int i = 0; i < grid; ++i) {
        xs[i] = lo + (hi - lo) * i / (grid - 1);
        ys[i] = rho(xs[i]);
    }
    if (c.out.size() > 4 && c.out.substr(c.out.size() - 4) == ".csv") {
        std::ostringstream os;
        os.precision(17);
        os << "xi,rho\n";
        for (int i = 0; i < grid; ++i) os << xs[i] << "," << ys[i] << "\n";
        std::string text = os.str();
        text.pop_back();
        emit(c, text);
        return 0;
    }
    emit_json(c, {{"config", config_json(c, "density", {{"grid", grid}})},
                  {"result", {{"support", support_json(rho.support)}, {"mass", rho.mass()}, {"xi", xs}, {"rho", ys}}}});
    return 0;
}

int cmd_oracle(const Config& c, const std::string& method, const std::string& reference, long samples, int chains,
               int t_nodes) {
    const ModelParams p = make_params(c);
    const double Nd = require_N(c);
    if (Nd != std::floor(Nd)) throw ValidationError("--N must be an integer for the oracle");
    const int N = static_cast<int>(Nd);
    const Potential V = make_potential(read_potential_json(c.potential));
    json res;
    if (method == "quad") {
        QuadOracleOptions opt;
        opt.rel_tol = c.rel_tol;
        const auto r = logZ_quadrature(V, p, N, opt);
        res = {{"logZ", r.logZ},
               {"error_estimate", r.error_estimate},
               {"box", {r.box_lo, r.box_hi}},
               {"evaluations", r.evaluations}};
    } else if (method == "mc") {
        Potential W = Potential::quadratic(1.0, 0.0);
        if (!reference.empty()) {
            W = make_potential(read_potential_json(reference));
        } else {
            const BoundaryFunctions bf(p);
            const auto sup = endpoints_N(V, p, bf, Nd, c.order);
            W = W_GN(sup.a_N, sup.b_N, Nd, p);
        }
        MCOptions opt;
        opt.seed = c.seed;
        opt.samples = samples;
        opt.chains = chains;
        opt.t_nodes = t_nodes;
        const auto r = logZ_ratio_mc(V, W, p, N, opt);
        res = {{"log_ratio", r.logZ},
               {"stderr", r.error_estimate},
               {"reference_coeffs", W.coeffs()},
               {"t_nodes", r.t_nodes},
               {"node_values", r.node_values},
               {"node_stderr", r.node_stderr},
               {"acceptance", r.acceptance},
               {"samples", r.samples}};
    } else {
        throw ValidationError("--method must be quad or mc");
    }
    emit_json(c, {{"config", config_json(c, "oracle",
                                         {{"method", method}, {"samples", samples}, {"chains", chains},
                                          {"t_nodes", t_nodes}})},
                  {"result", res}});
    return 0;
}

int cmd_selftest(const std::vector<int>& which) {
    std::vector<int> ids = which;
    if (ids.empty())
        for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
    int failed = 0;
    for (int id : ids) {
        if (id < 1 || id > kCriterionCount) throw ValidationError("criterion ids lie in 1..12");
        const auto r = run_criterion(id);
        std::printf("%s\n", format_result_line(r).c_str());
        std::fflush(stdout);
        failed += !r.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(ids.size()) - failed, ids.size());
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sinh-model partition function toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Config cfg;
    app.add_option("--omega1", cfg.omega1, "omega_1 > 0");
    app.add_option("--omega2", cfg.omega2, "omega_2 > 0");
    app.add_option("--beta", cfg.beta, "beta > 0");
    app.add_option("--alpha", cfg.alpha, "alpha in (0,1)");
    app.add_option("--N", cfg.N, "number of particles");
    app.add_option("--potential", cfg.potential, "potential JSON file (or inline JSON)");
    app.add_option("--out", cfg.out, "output path (stdout when omitted)");
    app.add_option("--seed", cfg.seed, "Monte Carlo seed");
    app.add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");
    app.add_option("--order", cfg.order, "endpoint system order k (1..6)");

    auto* constants = app.add_subcommand("constants", "spectral constants");
    auto* expand = app.add_subcommand("expand", "main expansion of ln(Z_N[V]/Z_N[W_GN])");
    auto* gaussian = app.add_subcommand("gaussian", "exact and asymptotic Gaussian ln Z_N");
    double g = 1.0, t = 0.0;
    std::string sweep;
    gaussian->add_option("--g", g, "Gaussian curvature g > 0");
    gaussian->add_option("--t", t, "linear coefficient");
    gaussian->add_option("--residual-sweep", sweep, "comma-separated N values");
    auto* density = app.add_subcommand("density", "equilibrium density on a grid (CSV when --out ends in .csv)");
    int grid = 201;
    density->add_option("--grid", grid, "number of grid points");
    auto* endpoints = app.add_subcommand("endpoints", "support endpoints");
    auto* oracle = app.add_subcommand("oracle", "brute-force reference values");
    std::string method = "quad", reference;
    long samples = 20000;
    int chains = 4, t_nodes = 8;
    oracle->add_option("--method", method, "quad (N <= 4) or mc (N <= 16)");
    oracle->add_option("--reference", reference, "mc reference potential (default: matched Gaussian)");
    oracle->add_option("--samples", samples, "mc sweeps per chain and node");
    oracle->add_option("--chains", chains, "mc chains per node");
    oracle->add_option("--t-nodes", t_nodes, "mc Gauss-Legendre nodes");
    auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
    std::vector<int> which;
    selftest->add_option("--criterion", which, "subset of criteria, e.g. 3,4")
        ->delimiter(',')
        ->check(CLI::Range(1, kCriterionCount));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*constants) return cmd_constants(cfg);
        if (*expand) return cmd_expand(cfg);
        if (*gaussian) return cmd_gaussian(cfg, g, t, sweep);
        if (*density) return cmd_density(cfg, grid);
        if (*endpoints) return cmd_endpoints(cfg);
        if (*oracle) return cmd_oracle(cfg, method, reference, samples, chains, t_nodes);
        if (*selftest) return cmd_selftest(which);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitValidation;
}

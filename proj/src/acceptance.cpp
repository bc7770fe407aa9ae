#include "sinhmodel/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sinhmodel/boundary_functions.hpp"
#include "sinhmodel/equilibrium.hpp"
#include "sinhmodel/expansion.hpp"
#include "sinhmodel/gaussian_exact.hpp"
#include "sinhmodel/reference_oracle.hpp"
#include "sinhmodel/wiener_hopf.hpp"

namespace sinhmodel {

using std::numbers::pi;

namespace {

using cplx = std::complex<double>;
using Clock = std::chrono::steady_clock;

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

ModelParams unit_params(double alpha) { return ModelParams(1.0, 1.0, 1.0, alpha); }

double rel_err(cplx x, cplx ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// V = xi^2/2 + 0.3 e^{xi/2}: convex, not symmetric and not a polynomial, so no truncation order is exact.
Potential exp_tilted_potential() {
    return Potential::custom(64, [](int k, double x) {
        const double e = 0.3 * std::pow(0.5, k) * std::exp(0.5 * x);
        if (k == 0) return 0.5 * x * x + e;
        if (k == 1) return x + e;
        if (k == 2) return 1.0 + e;
        return e;
    });
}

CriterionResult c1_gaussian_exactness() {
    CriterionResult r;
    r.title = "Gaussian exact product vs nested quadrature";
    const auto t0 = Clock::now();
    const ModelParams p = unit_params(0.2);
    const Potential V = Potential::quadratic(1.0, 0.3);
    double worst = 0.0;
    for (int N : {2, 3}) {
        const double exact = gaussian_logZ_exact(GaussianSpec{1.0, 0.3, p, double(N)});
        const auto q = logZ_quadrature(V, p, N);
        const double d = std::fabs(exact - q.logZ);
        worst = std::max(worst, d);
        r.details.push_back(fmt("N=%d exact %.15g quadrature %.15g |diff| %.3e (%ld evaluations)", N, exact, q.logZ,
                                d, q.evaluations));
    }
    r.seconds = seconds_since(t0);
    r.pass = worst < 1e-6 && r.seconds < 60.0;
    r.summary = fmt("max |diff| %.3e (gate 1e-6, runtime gate 60 s)", worst);
    return r;
}

CriterionResult c2_gaussian_asymptotics() {
    CriterionResult r;
    r.title = "Gaussian asymptotic residual decreasing";
    const auto t0 = Clock::now();
    const ModelParams p = unit_params(0.1);
    std::vector<double> res;
    for (double N : {1e3, 1e4, 1e5, 1e6}) {
        const GaussianSpec spec{1.0, 0.0, p, N};
        const double with = std::fabs(gaussian_asymptotic_residual(spec, true));
        const double without = std::fabs(gaussian_asymptotic_residual(spec, false));
        res.push_back(with);
        r.details.push_back(fmt("N=%.0e residual %.6e (listed terms only, without the N^alpha pole term: %.6e)", N,
                                with, without));
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < res.size(); ++i) decreasing = decreasing && res[i] < res[i - 1];
    r.seconds = seconds_since(t0);
    r.pass = decreasing && res.back() < res.front() / 3.0 && r.seconds < 10.0;
    r.summary = fmt("residuals %.3e %.3e %.3e %.3e, ratio first/last %.1f", res[0], res[1], res[2], res[3],
                    res[0] / res[3]);
    return r;
}

CriterionResult c3_wiener_hopf() {
    CriterionResult r;
    r.title = "Wiener-Hopf factorisation identities";
    const auto t0 = Clock::now();
    double worst_all = 0.0;
    for (auto [w1, w2] : {std::pair{1.0, 1.0}, std::pair{0.7, 1.3}}) {
        const WienerHopf wh(ModelParams(w1, w2, 1.0, 0.1));
        const double ymax = 0.8 * 2.0 * pi * std::min(w1, w2);
        double e_fact = 0.0, e_refl = 0.0;
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                const cplx lam(-12.0 + 24.0 * (i + 0.5) / 10.0, -ymax + 2.0 * ymax * (j + 0.5) / 10.0);
                const cplx down = wh.R_down(lam);
                e_fact = std::max(e_fact, rel_err(wh.R_up(lam) * down, wh.R(lam)));
                // reflection against the independent Gamma-function evaluation of R_down
                e_refl = std::max(e_refl, rel_err(wh.R_up(-lam) * lam, 1.0 / wh.invR_down_gamma(lam)));
            }
        }
        const double s = w1 + w2;
        const double e0 = rel_err(wh.R_down(0.0), cplx(0.0, -std::sqrt(s)));
        r.details.push_back(fmt("w=(%.1f,%.1f): R=R_up R_down %.2e, R_up(-l) l=R_down %.2e, R_down(0)=-i sqrt(s) %.2e", w1,
                                w2, e_fact, e_refl, e0));
        worst_all = std::max({worst_all, e_fact, e_refl, e0});
    }
    r.seconds = seconds_since(t0);
    r.pass = worst_all < 1e-10 && r.seconds < 1.0;
    r.summary = fmt("max rel err %.3e over 100 strip points per parameter set (gate 1e-10)", worst_all);
    return r;
}

CriterionResult c4_spectral() {
    CriterionResult r;
    r.title = "spectral coefficients u_l and J moments";
    const auto t0 = Clock::now();
    const ModelParams p = unit_params(0.1);
    const BoundaryFunctions bf(p);
    const double u1_ref = 1.0 / (2.0 * pi * p.beta * p.s());
    const double e1 = std::fabs(bf.u(1) - u1_ref);
    const double u2 = std::fabs(bf.u(2)), u4 = std::fabs(bf.u(4));
    double e_mom = 0.0;
    for (int l = 1; l <= 3; ++l) {
        const double m = bf.J_moment(l), ref = 2.0 * pi * p.beta * factorial(l) * bf.u(l);
        const double e = std::fabs(ref) > 1e-12 ? std::fabs(m - ref) / std::fabs(ref) : std::fabs(m - ref);
        e_mom = std::max(e_mom, e);
        r.details.push_back(fmt("l=%d int y^l J = %.15g, 2 pi beta l! u_l = %.15g", l, m, ref));
    }
    r.details.push_back(fmt("u_1 = %.17g, 1/(2 pi beta s) = %.17g", bf.u(1), u1_ref));
    r.seconds = seconds_since(t0);
    r.pass = e1 < 1e-10 && u2 < 1e-10 && u4 < 1e-10 && e_mom < 1e-7;
    r.summary = fmt("|u_1 err| %.2e, |u_2| %.2e, |u_4| %.2e, moment err %.2e", e1, u2, u4, e_mom);
    return r;
}

CriterionResult c5_daleth() {
    CriterionResult r;
    r.title = "daleth constants";
    const auto t0 = Clock::now();
    const ModelParams p = unit_params(0.1);
    const BoundaryFunctions bf(p);
    const double d00 = bf.daleth_sl(0, 0);
    const double d00_ref = -std::log(2.0) / (2.0 * pi * pi * p.beta);
    const double e00 = std::fabs(d00 - d00_ref);
    r.details.push_back(fmt("daleth_00 computed %.12g, target -ln2/(2 pi^2 beta) %.12g, ratio %.6f", d00, d00_ref,
                            d00 / d00_ref));
    r.details.push_back(fmt("u_1 L = %.12g (log constant times u_1)", bf.u(1) * p.log_constant()));
    double e_sl = 0.0;
    for (int n = 0; n <= 2; ++n)
        for (int s = 0; s <= n; ++s) {
            const auto routes = bf.daleth_sl_routes(s, n - s);
            e_sl = std::max(e_sl, std::fabs(routes.moment - routes.explicit_));
            r.details.push_back(fmt("daleth_{%d,%d}: moment %.12g explicit %.12g", s, n - s, routes.moment,
                                    routes.explicit_));
        }
    double e_p = 0.0;
    for (int q = 0; q <= 2; ++q) {
        const auto routes = bf.daleth_p_routes(q, 0.5 * p.varsigma());
        e_p = std::max({e_p, std::abs(routes.upper - routes.lower), std::abs(routes.upper - routes.residue)});
        r.details.push_back(fmt("daleth_%d: upper (%.12g, %.12g) lower (%.12g, %.12g)", q, routes.upper.real(),
                                routes.upper.imag(), routes.lower.real(), routes.lower.imag()));
    }
    r.seconds = seconds_since(t0);
    r.pass = e00 < 1e-6 && e_sl < 1e-5 && e_p < 1e-8;
    r.summary = fmt("daleth_00 err %.3e (gate 1e-6), s+l<=2 route gap %.2e (gate 1e-5), daleth_p route gap %.2e "
                    "(gate 1e-8)",
                    e00, e_sl, e_p);
    if (!r.pass && e_sl < 1e-5 && e_p < 1e-8)
        r.details.push_back("only the daleth_00 target fails: both independent routes give u_1 L, half the target");
    return r;
}

CriterionResult c6_a0() {
    CriterionResult r;
    r.title = "edge profile a_0";
    const auto t0 = Clock::now();
    const ModelParams p = unit_params(0.1);
    const BoundaryFunctions bf(p);
    double sup = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = 0.01 * std::pow(1000.0, i / 200.0);
        sup = std::max(sup, std::fabs(bf.a0_series(x) - bf.a0_integral(x)));
    }
    double minval = INFINITY;
    for (int i = 1; i <= 500; ++i) minval = std::min(minval, bf.a0_series(50.0 * i / 500.0));
    for (int i = 0; i <= 40; ++i) minval = std::min(minval, bf.a0_series(1e-4 * std::pow(1e3, i / 40.0)));
    // a_0(x)/sqrt(x) = c + O(x); Richardson over x = 1e-4, 1e-3
    const double f4 = bf.a0_series(1e-4) / std::sqrt(1e-4), f3 = bf.a0_series(1e-3) / std::sqrt(1e-3);
    const double slope = (10.0 * f4 - f3) / 9.0;
    const double slope_ref = 1.0 / (pi * p.beta * std::sqrt(pi * p.s()));
    const double slope_rel = std::fabs(slope / slope_ref - 1.0);
    // |a_0 - u_1| <= C e^{-varsigma x/2}: fit the decay rate on [5, 9], above the rounding floor, and check that
    // the rate is at least varsigma/2; C is the worst ratio to the envelope on [5, 50].
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (int i = 0; i <= 16; ++i, ++n) {
        const double x = 5.0 + 0.25 * i, y = std::log(std::fabs(bf.a0_series(x) - bf.u(1)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double rate = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    double env_C = 0.0;
    for (int i = 0; i <= 90; ++i) {
        const double x = 5.0 + 0.5 * i, d = std::fabs(bf.a0_series(x) - bf.u(1));
        if (d > 1e-15) env_C = std::max(env_C, d / std::exp(-p.varsigma() * x / 2.0));
    }
    r.details.push_back(fmt("small-x slope %.10g vs %.10g", slope, slope_ref));
    r.details.push_back(fmt("decay rate of |a_0 - u_1| %.6f (kappa0 = %.6f, varsigma/2 = %.6f), fitted C = %.3e", rate,
                            p.kappa0(), p.varsigma() / 2.0, env_C));
    r.seconds = seconds_since(t0);
    r.pass = sup < 1e-8 && minval > 0.0 && slope_rel < 0.01 && rate >= p.varsigma() / 2.0;
    r.summary = fmt("series vs integral sup %.2e, min on (0,50] %.3e, slope rel err %.2e, decay rate %.4f >= %.4f", sup,
                    minval, slope_rel, rate, p.varsigma() / 2.0);
    return r;
}

CriterionResult c7_J() {
    CriterionResult r;
    r.title = "J closed form vs contour";
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (auto [w1, w2] : {std::pair{1.0, 1.0}, std::pair{0.7, 1.3}}) {
        const BoundaryFunctions bf(ModelParams(w1, w2, 1.0, 0.1));
        for (double x : {0.1, 1.0, 5.0}) {
            const double a = bf.J(x), b = bf.J_contour(x);
            worst = std::max(worst, std::fabs(a - b));
            r.details.push_back(fmt("w=(%.1f,%.1f) x=%.1f closed %.15g contour %.15g", w1, w2, x, a, b));
        }
    }
    r.seconds = seconds_since(t0);
    r.pass = worst < 1e-8;
    r.summary = fmt("max |diff| %.3e (gate 1e-8)", worst);
    return r;
}

CriterionResult c8_equilibrium() {
    CriterionResult r;
    r.title = "equilibrium measure, free energy, polynomial-growth model";
    const auto t0 = Clock::now();
    const ModelParams p = unit_params(0.2);
    double mass_err = 0.0, fe_err = 0.0;
    const std::vector<std::pair<const char*, Potential>> pots = {
        {"xi^2", Potential::quadratic(1.0, 0.0)},
        {"xi^2+0.3xi", Potential::quadratic(1.0, 0.3)},
        {"xi^2+0.05xi^4", Potential::polynomial({0.0, 0.0, 1.0, 0.0, 0.05})},
        {"xi^2/2+0.3e^{xi/2}", exp_tilted_potential()}};
    for (const auto& [name, V] : pots) {
        const auto rho = equilibrium_density_infinite(V, p);
        const double m = rho.mass();
        const double fl = free_energy_leading(V, p), fq = free_energy_double_quadrature(V, p);
        mass_err = std::max(mass_err, std::fabs(m - 1.0));
        fe_err = std::max(fe_err, std::fabs(fl - fq));
        r.details.push_back(fmt("%s: [a,b]=[%.10g, %.10g] mass-1 %.2e, free energy closed %.15g quadrature %.15g",
                                name, rho.support.a, rho.support.b, m - 1.0, fl, fq));
    }
    double baby_mass = 0.0, baby_oracle = 0.0;
    for (double q : {1.5, 2.0, 3.0}) {
        const auto b = baby_model(q, 1.0, p);
        baby_mass = std::max(baby_mass, std::fabs(b.mass - 1.0));
        baby_oracle = std::max(baby_oracle, std::fabs(b.oracle - b.oracle_loose));
        r.details.push_back(fmt("q=%.1f: mass-1 %.2e, oracle %.12g (loose %.12g), closed %.12g, alternative "
                                "constant %.12g",
                                q, b.mass - 1.0, b.oracle, b.oracle_loose, b.limit_closed, b.limit_alternative));
    }
    r.seconds = seconds_since(t0);
    r.pass = mass_err < 1e-10 && fe_err < 1e-8 && baby_mass < 1e-10 && baby_oracle < 1e-7;
    r.summary = fmt("mass err %.2e, free energy gap %.2e, baby mass err %.2e, baby oracle self-gap %.2e", mass_err,
                    fe_err, baby_mass, baby_oracle);
    return r;
}

CriterionResult c9_endpoint_correction() {
    CriterionResult r;
    r.title = "first endpoint correction b_{N;1}";
    const auto t0 = Clock::now();
    const ModelParams p = unit_params(0.1);
    const BoundaryFunctions bf(p);
    const Potential V = Potential::quadratic(1.0, 0.0);
    const auto [b1, a1] = first_correction_richardson(V, p, bf, 3);
    const auto sup = endpoints_N(V, p, bf, 1e6, 3);
    const double target = -std::log(2.0) / pi;
    const double rel = std::fabs(b1 / target - 1.0);
    r.details.push_back(fmt("Richardson b_1 %.10g a_1 %.10g; linearised b_1 %.10g; target %.10g", b1, a1, sup.b_N1,
                            target));
    // Matched-Gaussian consistency: V is its own matched Gaussian, so pi s/(b_N - a_N + 2 L eps) must stay 1,
    // which forces b_1 - a_1 = -2L = +2 ln2/pi.
    r.details.push_back(fmt("b_1 - a_1 = %.10g, -2L = %.10g", b1 - a1, -2.0 * p.log_constant()));
    r.seconds = seconds_since(t0);
    r.pass = rel < 0.02;
    r.summary = fmt("b_1 = %.8g vs target %.8g, rel err %.3e (gate 2%%)", b1, target, rel);
    return r;
}

CriterionResult c10_expansion_consistency() {
    CriterionResult r;
    r.title = "expansion consistency";
    const auto t0 = Clock::now();
    const ModelParams p = unit_params(0.2);
    const BoundaryFunctions bf(p);
    // (i) matched Gaussian
    const auto mg = main_expansion(Potential::quadratic(1.0, 0.3), p, bf, 1000.0, 3);
    const double tot = mg.report.total();
    r.details.push_back(fmt("matched Gaussian: total %.17g (snapped to itself: %s)", tot, mg.matched ? "yes" : "no"));
    // (ii) constraint and mass at solved endpoints, measured with the order-6 system
    const Potential V = exp_tilted_potential();
    const double N = 1e4;
    std::vector<double> res;
    for (int k = 1; k <= 3; ++k) {
        const auto sup = endpoints_N(V, p, bf, N, k);
        const auto [own_c, own_m] = endpoint_equations(V, bf, N, k, sup.a_N, sup.b_N);
        const auto [c, m] = endpoint_equations(V, bf, N, 6, sup.a_N, sup.b_N);
        res.push_back(std::hypot(c, m - 1.0));
        r.details.push_back(fmt("k=%d: own system (%.2e, %.2e) vs (0,1); order-6 system (%.3e, 1%+.3e)", k, own_c,
                                own_m - 1.0, c, m - 1.0));
    }
    const bool shrinking = res[1] < res[0] && res[2] < res[1];
    // (iii) integration by parts for capricornus_0 on random even polynomials
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double ibp = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        const Potential P = Potential::polynomial({0.0, 0.0, 0.5 + U(rng), 0.0, 0.2 * U(rng), 0.0, 0.02 * U(rng)});
        const auto sup = endpoints_N(P, p, bf, 100.0, 2);
        const auto [g, t] = matched_gaussian(sup.a_N, sup.b_N, 100.0, p);
        const Potential W = Potential::quadratic(g, t);
        auto vm = [&](int k, double x) { return P.deriv(k, x) - W.deriv(k, x); };
        const QuadratureSpec spec{1e-13, 1e-300, 4000, 1e-16};
        const double lhs = require_converged(
            integrate_interval([&](double x) { return vm(0, x) * vm(2, x); }, sup.a_N, sup.b_N, spec), "ibp lhs");
        const double sq = require_converged(
            integrate_interval([&](double x) { return vm(1, x) * vm(1, x); }, sup.a_N, sup.b_N, spec), "ibp rhs");
        const double rhs = vm(0, sup.b_N) * vm(1, sup.b_N) - vm(0, sup.a_N) * vm(1, sup.a_N) - sq;
        const double via_cap = -4.0 * pi * p.s() * capricornus(0, P, W, bf, sup);
        ibp = std::max({ibp, std::fabs(lhs - rhs), std::fabs(via_cap - rhs)});
    }
    r.details.push_back(fmt("integration by parts max gap %.3e over 8 random even sextics", ibp));
    r.seconds = seconds_since(t0);
    r.pass = tot == 0.0 && shrinking && ibp < 1e-9;
    r.summary = fmt("matched total %.3g, residuals %.2e > %.2e > %.2e, IBP gap %.2e", tot, res[0], res[1], res[2], ibp);
    return r;
}

CriterionResult c11_mc() {
    CriterionResult r;
    r.title = "Monte Carlo diagnostic";
    const auto t0 = Clock::now();
    const ModelParams p = unit_params(0.2);
    const BoundaryFunctions bf(p);
    const Potential V = Potential::polynomial({0.0, 0.0, 1.0, 0.0, 0.05});
    // hard gate: MC vs quadrature at N = 3
    const auto m3 = main_expansion(V, p, bf, 3.0, 3);
    const Potential W3 = Potential::quadratic(m3.g_N, m3.t_N);
    const double quad = logZ_quadrature(V, p, 3).logZ - logZ_quadrature(W3, p, 3).logZ;
    MCOptions opt;
    const auto mc3 = logZ_ratio_mc(V, W3, p, 3, opt);
    const double z3 = std::fabs(mc3.logZ - quad) / mc3.error_estimate;
    r.details.push_back(fmt("N=3: quadrature %.10g, MC %.10g +- %.3e (%.2f sigma)", quad, mc3.logZ,
                            mc3.error_estimate, z3));
    // soft: N = 12 against the truncated expansion
    const auto m12 = main_expansion(V, p, bf, 12.0, 3);
    const Potential W12 = Potential::quadratic(m12.g_N, m12.t_N);
    opt.samples = 40000;
    const auto mc12 = logZ_ratio_mc(V, W12, p, 12, opt);
    const double ex = m12.report.total();
    const double gap = std::fabs(ex - mc12.logZ);
    const bool same_sign = (ex > 0) == (mc12.logZ > 0);
    const bool within = gap <= 3.0 * mc12.error_estimate ||
                        (same_sign && std::max(std::fabs(ex), std::fabs(mc12.logZ)) <=
                                          2.0 * std::min(std::fabs(ex), std::fabs(mc12.logZ)));
    r.details.push_back(fmt("N=12: MC %.8g +- %.3e, expansion %.8g (g_N %.8g, t_N %.3g)", mc12.logZ,
                            mc12.error_estimate, ex, m12.g_N, m12.t_N));
    for (const auto& term : m12.report.terms)
        r.details.push_back(fmt("  %-34s %.8g", term.label.c_str(), term.value));
    r.details.push_back(fmt("soft comparison: %s (sign %s)", same_sign && within ? "agree" : "disagree",
                            same_sign ? "matches" : "differs"));
    // Independent leading-order checks of the same ratio.
    const double n22 = std::pow(12.0, 2.0 + p.alpha);
    const double fdiff = n22 * (free_energy_leading(V, p) - free_energy_leading(W12, p));
    const double c0 = capricornus(0, V, W12, bf, m12.support);
    const double c0i = capricornus0_interpolation(V, W12, bf, m12.support);
    r.details.push_back(fmt("N^{2+alpha} (F[V] - F[W]) from the leading free energies: %.8g", fdiff));
    r.details.push_back(fmt("-N^{2+alpha} capricornus_0: as implemented %.8g, with (V+W)'' in place of (V-W)'' %.8g",
                            -n22 * c0, -n22 * c0i));
    r.seconds = seconds_since(t0);
    r.pass = z3 < 3.0 && r.seconds < 900.0;
    r.summary = fmt("hard gate N=3 MC vs quadrature %.2f sigma; soft N=12 %s", z3,
                    same_sign && within ? "agree" : "disagree (reported only)");
    return r;
}

CriterionResult c12_mellin() {
    CriterionResult r;
    r.title = "Mellin asymptotics";
    const auto t0 = Clock::now();
    bool ok = true;
    std::string s;
    for (auto [rr, a] : {std::pair{1, 1.0}, std::pair{0, 0.5}}) {
        const auto m2 = mellin_M_log(rr, a, 1e-2), m3 = mellin_M_log(rr, a, 1e-3);
        const double e2 = std::fabs(m2.direct - m2.asymptotic), e3 = std::fabs(m3.direct - m3.asymptotic);
        ok = ok && e3 < e2 / 3.0;
        r.details.push_back(fmt("(r,a)=(%d,%.1f): residual tau=1e-2 %.3e, tau=1e-3 %.3e", rr, a, e2, e3));
        s += fmt("(%d,%.1f) %.2e->%.2e ", rr, a, e2, e3);
    }
    r.seconds = seconds_since(t0);
    r.pass = ok;
    r.summary = s + "(gate: drop by 3x)";
    return r;
}

}  // namespace

CriterionResult run_criterion(int id) {
    static constexpr const char* titles[] = {"",
                                             "Gaussian exactness",
                                             "Gaussian asymptotics",
                                             "Wiener-Hopf identities",
                                             "spectral coefficients",
                                             "daleth constants",
                                             "edge profile a_0",
                                             "J closed form",
                                             "equilibrium",
                                             "endpoint corrections",
                                             "expansion consistency",
                                             "Monte Carlo diagnostic",
                                             "Mellin asymptotics"};
    if (id < 1 || id > kCriterionCount) throw std::invalid_argument("criterion must lie in 1..12");
    const auto t0 = Clock::now();
    try {
        CriterionResult r;
        switch (id) {
            case 1: r = c1_gaussian_exactness(); break;
            case 2: r = c2_gaussian_asymptotics(); break;
            case 3: r = c3_wiener_hopf(); break;
            case 4: r = c4_spectral(); break;
            case 5: r = c5_daleth(); break;
            case 6: r = c6_a0(); break;
            case 7: r = c7_J(); break;
            case 8: r = c8_equilibrium(); break;
            case 9: r = c9_endpoint_correction(); break;
            case 10: r = c10_expansion_consistency(); break;
            case 11: r = c11_mc(); break;
            default: r = c12_mellin(); break;
        }
        r.id = id;
        return r;
    } catch (const std::exception& e) {
        CriterionResult r;
        r.id = id;
        r.title = titles[id];
        r.pass = false;
        r.summary = std::string("exception: ") + e.what();
        r.seconds = seconds_since(t0);
        return r;
    }
}

std::string format_result_line(const CriterionResult& r) {
    return fmt("[%s] criterion %d  %s  %s (%.2f s)", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(),
               r.summary.c_str(), r.seconds);
}

}  // namespace sinhmodel

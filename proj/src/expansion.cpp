#include "sinhmodel/expansion.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sinhmodel/gaussian_exact.hpp"
#include "sinhmodel/quadrature.hpp"

namespace sinhmodel {

using std::numbers::pi;

namespace {

// f(x) = ln(1+x)/x and f'(x), with the series near 0.
void log_ratio(double x, double& f, double& fp) {
    if (std::fabs(x) < 1e-6) {
        f = 1.0 - x / 2.0 + x * x / 3.0;
        fp = -0.5 + 2.0 * x / 3.0 - 0.75 * x * x;
        return;
    }
    const double l = std::log1p(x);
    f = l / x;
    fp = (x / (1.0 + x) - l) / (x * x);
}

// phi(V'', W'') = (ln V'' - ln W'')/(V'' - W'') and its partial derivatives.
void leo_phi(double v2, double w2, double& phi, double& phi_v, double& phi_w) {
    if (!(v2 > 0.0) || !(w2 > 0.0)) throw std::domain_error("leo needs V'' > 0 and W'' > 0");
    const double x = v2 / w2 - 1.0;
    double f, fp;
    log_ratio(x, f, fp);
    phi = f / w2;
    phi_v = fp / (w2 * w2);
    phi_w = -f / (w2 * w2) - fp * v2 / (w2 * w2 * w2);
}

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double integral(const std::function<double(double)>& f, double a, double b, const char* what) {
    QuadratureSpec spec{1e-13, 1e-300, 4000, 1e-16};
    auto r = integrate_interval(f, a, b, spec);
    if (!r.converged && r.error > 1e-12 * (1.0 + std::fabs(r.value))) throw NumericalFailure(what);
    return r.value;
}

}  // namespace

double leo(const Potential& V, const Potential& W, double xi) {
    double phi, pv, pw;
    leo_phi(V.deriv(2, xi), W.deriv(2, xi), phi, pv, pw);
    return (V.deriv(1, xi) - W.deriv(1, xi)) * phi;
}

double leo_prime(const Potential& V, const Potential& W, double xi) {
    const double v2 = V.deriv(2, xi), w2 = W.deriv(2, xi);
    double phi, pv, pw;
    leo_phi(v2, w2, phi, pv, pw);
    const double d1 = V.deriv(1, xi) - W.deriv(1, xi);
    return (v2 - w2) * phi + d1 * (pv * V.deriv(3, xi) + pw * W.deriv(3, xi));
}

double capricornus(int p, const Potential& V, const Potential& W, const BoundaryFunctions& bf, const Support& sup) {
    if (p < 0) throw std::invalid_argument("capricornus index must be >= 0");
    if (V.k_max() < p + 2) throw std::invalid_argument("capricornus needs V derivatives to order p+2");
    const double a = sup.a_N, b = sup.b_N;
    auto vm = [&](int k, double x) { return V.deriv(k, x) - W.deriv(k, x); };
    auto vp = [&](int k, double x) { return V.deriv(k, x) + W.deriv(k, x); };
    if (p == 0) {
        const double I = integral([&](double x) { return vm(0, x) * vm(2, x); }, a, b, "capricornus_0 integral");
        return -I / (4.0 * pi * bf.params().s());
    }
    double acc = 0.0;
    const double up = bf.u(p + 1);
    if (up != 0.0)
        acc += up * integral([&](double x) { return vm(0, x) * V.deriv(p + 2, x); }, a, b, "capricornus integral");
    for (int s = 0; s <= p - 1; ++s) {
        const int l = p - 1 - s;
        const double d = bf.daleth_sl(s, l) / factorial(s);
        acc += d * (sign_pow(l) * vm(l + 1, a) * vp(s + 1, a) + sign_pow(s) * vm(l + 1, b) * vp(s + 1, b));
    }
    return acc;
}

double capricornus0_interpolation(const Potential& V, const Potential& W, const BoundaryFunctions& bf,
                                  const Support& sup) {
    const double I = integral([&](double x) { return (V(x) - W(x)) * (V.deriv(2, x) + W.deriv(2, x)); }, sup.a_N,
                              sup.b_N, "interpolation capricornus_0 integral");
    return I / (4.0 * pi * bf.params().s());
}

MainExpansion main_expansion_with(const Potential& V, const Potential& W, const BoundaryFunctions& bf,
                                  const Support& sup) {
    const ModelParams& p = bf.params();
    if (p.beta != 1.0) throw std::invalid_argument("the main expansion is assembled at beta = 1");
    if (sup.order < 1) throw std::invalid_argument("main expansion needs a support solved at order >= 1");
    MainExpansion m;
    m.support = sup;
    const double N = sup.N;
    const double al = p.alpha;
    m.report.N = N;
    const int pmax = static_cast<int>(std::floor(2.0 / al)) + 1;
    m.report.truncation_order = pmax;
    for (int k = 0; k <= pmax; ++k) {
        const double c = capricornus(k, V, W, bf, sup);
        m.report.add("-capricornus_" + std::to_string(k), 2.0 + al - al * k, -c);
    }
    const double a = sup.a_N, b = sup.b_N;
    m.report.add("gimel_0 [leo(b_N) - leo(a_N)]", al, bf.gimel(0) * (leo(V, W, b) - leo(V, W, a)));
    m.report.add("aleph_0 [leo'(b_N) + leo'(a_N)]", 0.0,
                 bf.aleph0().value * (leo_prime(V, W, b) + leo_prime(V, W, a)));
    return m;
}

MainExpansion main_expansion(const Potential& V, const ModelParams& p, const BoundaryFunctions& bf, double N,
                             int order) {
    const Support sup = endpoints_N(V, p, bf, N, order);
    auto [g, t] = matched_gaussian(sup.a_N, sup.b_N, N, p);
    Potential W = Potential::quadratic(g, t);
    bool matched = false;
    if (V.kind() == PotentialKind::quadratic ||
        (V.kind() == PotentialKind::even_polynomial && V.coeffs().size() <= 3)) {
        // A quadratic solves the truncated system with its own matched Gaussian at every order, so the
        // computed (g_N, t_N) differ from V's coefficients only by rounding.
        const auto& c = V.coeffs();
        const double gv = c.size() > 2 ? c[2] : 0.0, tv = c.size() > 1 ? c[1] : 0.0;
        const double tol = 64.0 * std::numeric_limits<double>::epsilon();
        if (c[0] == 0.0 && std::fabs(gv - g) <= tol * std::fabs(g) &&
            std::fabs(tv - t) <= tol * (std::fabs(t) + std::fabs(g))) {
            matched = true;
            g = gv;
            t = tv;
            W = V;
        }
    }
    MainExpansion m = main_expansion_with(V, W, bf, sup);
    m.g_N = g;
    m.t_N = t;
    m.matched = matched;
    if (N == std::floor(N) && N <= 1e7) {
        m.logZ_gaussian = gaussian_logZ_exact(GaussianSpec{g, t, p, N});
        m.logZ_absolute = m.report.total() + *m.logZ_gaussian;
    }
    return m;
}

double constraint_XN_expansion(const Potential& H, const BoundaryFunctions& bf, double a, double b, double N, int k) {
    if (k < 0) throw std::invalid_argument("expansion order must be >= 0");
    if (H.k_max() < k) throw std::invalid_argument("H lacks derivatives up to the expansion order");
    const double eps = std::pow(N, -bf.params().alpha);
    double acc = 0.0, ep = 1.0;
    for (int p = 0; p <= k; ++p) {
        acc += bf.daleth_p_rotated(p) * ep * (H.deriv(p, a) + sign_pow(p) * H.deriv(p, b));
        ep *= eps;
    }
    return acc;
}

double single_integral_Is_expansion(const Potential& G, const Potential& H, const BoundaryFunctions& bf, double a,
                                    double b, double N, int k) {
    if (k < 0) throw std::invalid_argument("expansion order must be >= 0");
    if (H.k_max() < k + 1 || G.k_max() < std::max(k - 1, 0))
        throw std::invalid_argument("G or H lacks derivatives up to the expansion order");
    const double eps = std::pow(N, -bf.params().alpha);
    double acc = bf.u(1) * integral([&](double x) { return G(x) * H.deriv(1, x); }, a, b, "u_1 int G H'");
    double ep = 1.0;
    for (int p = 1; p <= k; ++p) {
        ep *= eps;
        double t = 0.0;
        const double up = bf.u(p + 1);
        if (up != 0.0)
            t += up * integral([&](double x) { return G(x) * H.deriv(p + 1, x); }, a, b, "u_p int G H^(p+1)");
        for (int s = 0; s <= p - 1; ++s) {
            const int l = p - 1 - s;
            const double gb = G.deriv(s, b), ga = G.deriv(s, a);
            if (gb == 0.0 && ga == 0.0) continue;
            t += bf.daleth_sl(s, l) / factorial(s) *
                 (sign_pow(s) * H.deriv(l + 1, b) * gb + sign_pow(l) * H.deriv(l + 1, a) * ga);
        }
        acc += ep * t;
    }
    return acc;
}

double double_integral_Id_leading(const Potential& H, const Potential& V, const BoundaryFunctions& bf, double a,
                                  double b, double N) {
    auto ratio = [&](double x) {
        const double v2 = V.deriv(2, x);
        if (v2 == 0.0) throw std::domain_error("V'' vanishes at an endpoint");
        return H.deriv(1, x) / v2;
    };
    auto ratio_prime = [&](double x) {
        const double v2 = V.deriv(2, x);
        return H.deriv(2, x) / v2 - H.deriv(1, x) * V.deriv(3, x) / (v2 * v2);
    };
    const double na = std::pow(N, bf.params().alpha);
    return -2.0 * bf.gimel(0) * na * (ratio(b) - ratio(a)) + bf.aleph0().value * (ratio_prime(b) + ratio_prime(a));
}

}  // namespace sinhmodel

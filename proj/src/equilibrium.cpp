#include "sinhmodel/equilibrium.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_roots.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sinhmodel/quadrature.hpp"

namespace sinhmodel {

using std::numbers::pi;

namespace {

// Root of a monotone increasing f on [lo, hi] with f(lo) < 0 < f(hi): Brent, then Newton polish.
double monotone_root(const std::function<double(double)>& f, const std::function<double(double)>& fp, double lo,
                     double hi) {
    gsl_set_error_handler_off();
    gsl_function F;
    F.function = [](double x, void* ctx) { return (*static_cast<const std::function<double(double)>*>(ctx))(x); };
    F.params = const_cast<std::function<double(double)>*>(&f);
    std::unique_ptr<gsl_root_fsolver, decltype(&gsl_root_fsolver_free)> s(
        gsl_root_fsolver_alloc(gsl_root_fsolver_brent), gsl_root_fsolver_free);
    gsl_root_fsolver_set(s.get(), &F, lo, hi);
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        gsl_root_fsolver_iterate(s.get());
        x = gsl_root_fsolver_root(s.get());
        const double xl = gsl_root_fsolver_x_lower(s.get()), xu = gsl_root_fsolver_x_upper(s.get());
        if (gsl_root_test_interval(xl, xu, 0.0, 1e-15) == GSL_SUCCESS) break;
    }
    for (int it = 0; it < 3; ++it) {
        const double d = fp(x);
        if (!(d > 0.0)) break;
        const double step = f(x) / d;
        if (!std::isfinite(step) || std::fabs(step) > 1e-6 * (1.0 + std::fabs(x))) break;
        x -= step;
    }
    return x;
}

// Outer-inner adaptive quadrature of rho(x) rho(y) f(x, y) over [a, b]^2, split at y = x and at `kinks`.
double double_energy(const std::function<double(double)>& rho, const std::function<double(double, double)>& f,
                     double a, double b, std::vector<double> kinks, double rel_tol) {
    QuadratureSpec outer{rel_tol, 1e-15, 4000, 1e-16};
    QuadratureSpec inner{rel_tol * 0.05, 1e-17, 4000, 1e-16};
    kinks.push_back(a);
    kinks.push_back(b);
    std::sort(kinks.begin(), kinks.end());
    kinks.erase(std::remove_if(kinks.begin(), kinks.end(), [&](double t) { return t < a || t > b; }), kinks.end());
    kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
    bool ok = true;
    auto inner_fn = [&](double x) {
        std::vector<double> br = kinks;
        br.push_back(x);
        std::sort(br.begin(), br.end());
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            if (br[i + 1] <= br[i]) continue;
            auto r = integrate_interval([&](double y) { return rho(y) * f(x, y); }, br[i], br[i + 1], inner,
                                        Singularity::both);
            ok = ok && r.converged;
            acc += r.value;
        }
        return rho(x) * acc;
    };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < kinks.size(); ++i) {
        auto r = integrate_interval(inner_fn, kinks[i], kinks[i + 1], outer, Singularity::both);
        ok = ok && r.converged;
        total += r.value;
    }
    if (!ok) throw NumericalFailure("double quadrature of the energy functional did not converge");
    return total;
}

}  // namespace

std::pair<double, double> endpoints_infinite(const Potential& V, const ModelParams& p, double window) {
    const double target = pi * p.beta * p.s();
    auto bracket = [&](double sign) {
        // Walk outward from 0 until sign * V' passes the target.
        double near = 0.0, far = sign;
        while (sign * V.deriv(1, far) < target) {
            near = far;
            far *= 2.0;
            if (std::fabs(far) > window)
                throw NumericalFailure(std::string("no endpoint root in the working window on the ") +
                                       (sign > 0 ? "right" : "left") + " side");
        }
        return std::make_pair(near, far);
    };
    auto [bl, bh] = bracket(1.0);
    auto [al, ah] = bracket(-1.0);
    // Left side: the root of -V'(x) - target, increasing in -x.
    if (V.deriv(1, 0.0) >= target) bl = -window, bh = 0.0;
    if (-V.deriv(1, 0.0) >= target) al = window, ah = 0.0;
    const double b = monotone_root([&](double x) { return V.deriv(1, x) - target; },
                                   [&](double x) { return V.deriv(2, x); }, std::min(bl, bh), std::max(bl, bh));
    const double a = monotone_root([&](double x) { return V.deriv(1, x) + target; },
                                   [&](double x) { return V.deriv(2, x); }, std::min(al, ah), std::max(al, ah));
    if (std::fabs(V.deriv(1, b) - target) > 1e-12 * std::max(1.0, target) ||
        std::fabs(V.deriv(1, a) + target) > 1e-12 * std::max(1.0, target))
        throw NumericalFailure("endpoint residual above 1e-12");
    if (!(a < b)) throw NumericalFailure("endpoints are not ordered; is V convex?");
    return {a, b};
}

double density_infinite(const Potential& V, const ModelParams& p, double a, double b, double xi) {
    if (xi < a || xi > b) return 0.0;
    return V.deriv(2, xi) / (2.0 * pi * p.beta * p.s());
}

double free_energy_leading(const Potential& V, const ModelParams& p) {
    auto [a, b] = endpoints_infinite(V, p);
    QuadratureSpec spec{1e-12, 1e-15, 2000, 1e-16};
    const double vp2 = require_converged(
        integrate_interval([&](double x) { return V.deriv(1, x) * V.deriv(1, x); }, a, b, spec), "int (V')^2");
    const double vb = V.deriv(1, b);
    return -(V(a) + V(b)) / 2.0 + (vb * vb * (b - a) + vp2) / (4.0 * pi * p.beta * p.s());
}

double free_energy_double_quadrature(const Potential& V, const ModelParams& p, double rel_tol) {
    auto [a, b] = endpoints_infinite(V, p);
    const double half_c = 0.5 * pi * p.beta * p.s();
    auto rho = [&](double x) { return density_infinite(V, p, a, b, x); };
    auto f = [&](double x, double y) { return 0.5 * (V(x) + V(y)) - half_c * std::fabs(x - y); };
    return -double_energy(rho, f, a, b, {}, rel_tol);
}

BabyModelResult baby_model(double q, double c, const ModelParams& p) {
    if (!(q > 1.0)) throw std::invalid_argument("baby model needs q > 1");
    if (!(c > 0.0)) throw std::invalid_argument("baby model needs c_q > 0");
    BabyModelResult r;
    r.q = q;
    r.c = c;
    const double ps = pi * p.beta * p.s();
    r.b = std::pow(ps / (c * q), 1.0 / (q - 1.0));
    r.a = -r.b;
    const double K = c * q * (q - 1.0) / (2.0 * ps);
    const double a = r.a, b = r.b;
    r.density = [K, q, a, b](double x) {
        if (x < a || x > b || x == 0.0) return (x == 0.0 && q == 2.0) ? K : 0.0;
        return K * std::pow(std::fabs(x), q - 2.0);
    };
    QuadratureSpec spec{1e-13, 1e-15, 2000, 1e-16};
    r.mass = require_converged(integrate_interval(r.density, a, 0.0, spec, Singularity::both), "baby mass") +
             require_converged(integrate_interval(r.density, 0.0, b, spec, Singularity::both), "baby mass");
    r.limit_closed = c * (q - 1.0) * (q - 1.0) * std::pow(b, q) / (2.0 * q - 1.0);
    r.limit_alternative = std::pow(c, 1.0 / q) * std::pow(ps / q, (q + 1.0) / q) * (2.0 * q * q - 9.0 * q + 6.0) /
                      (2.0 * (2.0 * q - 1.0));
    auto f = [&](double x, double y) {
        return 0.5 * c * (std::pow(std::fabs(x), q) + std::pow(std::fabs(y), q)) - 0.5 * ps * std::fabs(x - y);
    };
    r.oracle = -double_energy(r.density, f, a, b, {0.0}, 1e-10);
    r.oracle_loose = -double_energy(r.density, f, a, b, {0.0}, 1e-8);
    return r;
}

namespace {

struct SystemCoeffs {
    std::vector<double> rot;  // i^p daleth_p
    std::vector<double> u;    // u_{p+1}
    std::vector<double> d0;   // daleth_{0,p-1}, index p
};

SystemCoeffs system_coeffs(const BoundaryFunctions& bf, int k) {
    SystemCoeffs c;
    c.rot.resize(k + 1);
    c.u.resize(k + 1);
    c.d0.assign(k + 1, 0.0);
    for (int p = 0; p <= k; ++p) {
        c.rot[p] = bf.daleth_p_rotated(p);
        c.u[p] = bf.u(p + 1);
        if (p >= 1) c.d0[p] = bf.daleth_sl(0, p - 1);
    }
    return c;
}

void system_eval(const Potential& V, const SystemCoeffs& c, double eps, int k, double a, double b, double F[2],
                 double Jm[2][2]) {
    F[0] = F[1] = 0.0;
    Jm[0][0] = Jm[0][1] = Jm[1][0] = Jm[1][1] = 0.0;
    double ep = 1.0;
    for (int p = 0; p <= k; ++p) {
        const double sg = (p % 2 == 0) ? 1.0 : -1.0;
        const double va = V.deriv(p + 1, a), vb = V.deriv(p + 1, b);
        const double va2 = V.deriv(p + 2, a), vb2 = V.deriv(p + 2, b);
        F[0] += c.rot[p] * ep * (va + sg * vb);
        Jm[0][0] += c.rot[p] * ep * va2;
        Jm[0][1] += c.rot[p] * ep * sg * vb2;
        F[1] += ep * c.u[p] * (vb - va);
        Jm[1][0] -= ep * c.u[p] * va2;
        Jm[1][1] += ep * c.u[p] * vb2;
        if (p >= 1) {
            F[1] += ep * c.d0[p] * (vb - sg * va);
            Jm[1][0] -= ep * c.d0[p] * sg * va2;
            Jm[1][1] += ep * c.d0[p] * vb2;
        }
        ep *= eps;
    }
}

void check_order(const Potential& V, int k) {
    if (k < 1 || k > 6) throw std::invalid_argument("endpoint system order must lie in 1..6");
    if (V.k_max() < k + 2) throw std::invalid_argument("potential lacks the derivatives the endpoint system needs");
}

}  // namespace

std::pair<double, double> endpoint_equations(const Potential& V, const BoundaryFunctions& bf, double N, int k,
                                             double a, double b) {
    check_order(V, k);
    const auto c = system_coeffs(bf, k);
    double F[2], Jm[2][2];
    system_eval(V, c, std::pow(N, -bf.params().alpha), k, a, b, F, Jm);
    return {F[0], F[1]};
}

Support endpoints_N(const Potential& V, const ModelParams& p, const BoundaryFunctions& bf, double N, int k) {
    check_order(V, k);
    if (!(N >= 1.0)) throw std::invalid_argument("N must be >= 1");
    Support s;
    std::tie(s.a, s.b) = endpoints_infinite(V, p);
    s.N = N;
    s.order = k;
    const auto c = system_coeffs(bf, k);
    const double eps = std::pow(N, -p.alpha);

    // First corrections from the order-eps part of the system.
    const double va = V.deriv(2, s.a), vb = V.deriv(2, s.b);
    const double P = -(c.rot[1] / c.rot[0]) * (va - vb);
    const double Q = -(c.d0[1] / c.u[0]) * (va + vb);
    s.b_N1 = 0.5 * (P + Q) / vb;
    s.a_N1 = 0.5 * (P - Q) / va;
    const double L = p.log_constant();
    s.b_N1_alternative = L * va / vb;
    s.a_N1_alternative = -L * vb / va;

    double a = s.a, b = s.b;
    const double scale = 1.0 + std::fabs(s.a) + std::fabs(s.b);
    for (int it = 1; it <= 50; ++it) {
        double F[2], Jm[2][2];
        system_eval(V, c, eps, k, a, b, F, Jm);
        F[1] -= 1.0;
        const double det = Jm[0][0] * Jm[1][1] - Jm[0][1] * Jm[1][0];
        if (det == 0.0 || !std::isfinite(det)) throw NumericalFailure("endpoint system: singular Jacobian");
        const double da = (F[0] * Jm[1][1] - F[1] * Jm[0][1]) / det;
        const double db = (Jm[0][0] * F[1] - Jm[1][0] * F[0]) / det;
        a -= da;
        b -= db;
        s.iterations = it;
        if (std::fabs(da) + std::fabs(db) < 1e-15 * scale) {
            system_eval(V, c, eps, k, a, b, F, Jm);
            s.residual = std::hypot(F[0], F[1] - 1.0);
            s.a_N = a;
            s.b_N = b;
            if (!(a < b)) throw NumericalFailure("endpoint system converged to a < b violation");
            return s;
        }
    }
    throw NumericalFailure("endpoint system: Newton did not converge in 50 iterations");
}

std::pair<double, double> first_correction_richardson(const Potential& V, const ModelParams& p,
                                                      const BoundaryFunctions& bf, int k, double N1, double N2) {
    const auto s1 = endpoints_N(V, p, bf, N1, k);
    const auto s2 = endpoints_N(V, p, bf, N2, k);
    const double e1 = std::pow(N1, -p.alpha), e2 = std::pow(N2, -p.alpha);
    // (x_N - x)/eps = x_1 + x_2 eps + O(eps^2); eliminate the linear term.
    auto extract = [&](double f1, double f2) { return (f2 * e1 - f1 * e2) / (e1 - e2); };
    return {extract((s1.b_N - s1.b) / e1, (s2.b_N - s2.b) / e2), extract((s1.a_N - s1.a) / e1, (s2.a_N - s2.a) / e2)};
}

double EquilibriumDensity::mass(double rel_tol) const {
    const double lo = N ? support.a_N : support.a;
    const double hi = N ? support.b_N : support.b;
    QuadratureSpec spec{rel_tol, 1e-15, 4000, 1e-16};
    return require_converged(integrate_interval(evaluator, lo, hi, spec, Singularity::both), "density mass");
}

EquilibriumDensity equilibrium_density_infinite(const Potential& V, const ModelParams& p) {
    EquilibriumDensity d;
    std::tie(d.support.a, d.support.b) = endpoints_infinite(V, p);
    d.support.a_N = d.support.a;
    d.support.b_N = d.support.b;
    const double a = d.support.a, b = d.support.b;
    d.evaluator = [V, p, a, b](double xi) { return density_infinite(V, p, a, b, xi); };
    return d;
}

EquilibriumDensity density_N(const Potential& V, const ModelParams& p, const BoundaryFunctions& bf,
                             const Support& sup) {
    if (sup.order < 1 || !(sup.N >= 1.0)) throw std::invalid_argument("density_N needs a finite-N support");
    EquilibriumDensity d;
    d.support = sup;
    d.N = sup.N;
    const double na = std::pow(sup.N, p.alpha);
    // a_0 tabulated in sigma = sqrt(x), where it is smooth; the series takes over beyond xmax.
    const double xmax = 60.0 / p.kappa0();
    auto tab = std::make_shared<ChebyshevTable>(
        [&bf](double sg) { return sg == 0.0 ? 0.0 : bf.a0_integral(sg * sg); },
        geometric_breaks(0.0, std::sqrt(xmax), std::sqrt(xmax) / 48.0, 1.0), 16);
    const double u1 = p.u1();
    const double kap = p.kappa0();
    const double a1 = bf.a0_coefficient(1);
    auto a0 = [tab, xmax, u1, kap, a1, &bf](double x) {
        if (x <= 0.0) return 0.0;
        if (x < xmax) return (*tab)(std::sqrt(x));
        return x < 2.0 * xmax ? bf.a0_series(x) : u1 - a1 * std::exp(-kap * x);
    };
    const double c = 2.0 * pi * p.beta * p.s();
    const double aN = sup.a_N, bN = sup.b_N;
    // Composite of the two edge laws and the bulk: within N^{-alpha} of an edge it is V''(xi) a_0(N^alpha d) up to
    // O(d), away from both edges a_0 = u_1 + O(e^{-kappa0 N^alpha d}) leaves the bulk V''/(2 pi beta s).
    d.evaluator = [=](double xi) {
        if (xi <= aN || xi >= bN) return 0.0;
        return V.deriv(2, xi) / c * (a0(na * (bN - xi)) / u1) * (a0(na * (xi - aN)) / u1);
    };
    return d;
}

EffectivePotentialReport effective_potential_check(const Potential& V, const ModelParams& p,
                                                   const EquilibriumDensity& rho, const std::vector<double>& grid) {
    if (!rho.N) throw std::invalid_argument("effective potential check needs a finite-N density");
    const double N = *rho.N;
    const double lo = rho.support.a_N, hi = rho.support.b_N;
    QuadratureSpec spec{1e-10, 1e-13, 4000, 1e-16};
    auto field = [&](double xi) {
        auto f = [&](double eta) { return eta == xi ? 0.0 : kernel_sN(p, N, xi - eta) * rho(eta); };
        double acc = 0.0;
        if (xi > lo && xi < hi) {
            acc += require_converged(integrate_interval(f, lo, xi, spec, Singularity::both), "field");
            acc += require_converged(integrate_interval(f, xi, hi, spec, Singularity::both), "field");
        } else {
            acc = require_converged(integrate_interval(f, lo, hi, spec, Singularity::both), "field");
        }
        return V(xi) - 2.0 * acc;
    };
    EffectivePotentialReport r;
    const double mid = 0.5 * (lo + hi);
    r.C_eq = field(mid);
    r.at_midpoint = field(mid) - r.C_eq;
    r.min_outside = INFINITY;
    for (double x : grid) {
        const double v = field(x) - r.C_eq;
        r.xi.push_back(x);
        r.value.push_back(v);
        if (x < lo || x > hi) r.min_outside = std::min(r.min_outside, v);
    }
    return r;
}

}  // namespace sinhmodel

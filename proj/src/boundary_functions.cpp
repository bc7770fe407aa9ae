#include "sinhmodel/boundary_functions.hpp"

#include <gsl/gsl_sf_gamma.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sinhmodel {

using std::numbers::pi;

namespace {

const cplx I(0.0, 1.0);
constexpr int kAsymOrder = 10;       // subtracted terms in the shifted large-|lambda| expansion
constexpr int kSegmentNodes = 20;
constexpr int kRayNodes = 24;
constexpr int kA0Cache = 200000;
constexpr int kTablePanels = 64;
constexpr int kTableNodes = 16;

cplx ipow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return 1.0;
        case 1: return I;
        case 2: return -1.0;
        default: return -I;
    }
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double lgamma_pos(double x) {
    int sg = 0;
    return ::lgamma_r(x, &sg);
}

// Rising factorial (a)_n.
double rising(double a, int n) {
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= a + k;
    return r;
}

void check_real(cplx v, const char* what, double tol = 1e-9) {
    if (std::fabs(v.imag()) > tol * std::max(1.0, std::abs(v)))
        throw NumericalFailure(std::string(what) + ": value is not real (imaginary part " +
                               std::to_string(v.imag()) + ")");
}

}  // namespace

BoundaryFunctions::BoundaryFunctions(const ModelParams& p, BoundaryOptions opt)
    : p_(p), opt_(opt), wh_(p) {
    if (opt_.max_order < 0 || opt_.max_order > 8) throw std::invalid_argument("max_order must be in [0, 8]");
    if (!(opt_.contour_scale > 0.1 && opt_.contour_scale <= 1.5))
        throw std::invalid_argument("contour_scale must be in (0.1, 1.5]");
    height_ = opt_.contour_scale * p_.varsigma();
    shift_ = std::max(2.0 * p_.varsigma(), 1.5 * height_);
    L_ = p_.log_constant();
    pmax_ = opt_.max_order + 1;
    dR0_ = wh_.invR_down_derivs_at0(62);
    d_ = wh_.d_coeffs(62);
    u_ = wh_.u_coeffs(48);
    build_nodes();

    a0n_.assign(kA0Cache + 1, 0.0);
    for (int n = 1; n <= kA0Cache; ++n) {
        a0n_[n] = a0n_direct(n);
        a0_env_ = std::max(a0_env_, a0n_[n] * std::pow(double(n), 1.5));
    }
    a0_env_ *= 1.5;
}

void BoundaryFunctions::build_nodes() {
    // Shifted expansion: d^p(1/R_down)/lambda ~ sum_n c_{p,n} w^{-(n+p+3/2)}, w = i lambda + shift.
    const auto& e = wh_.asymptotic_coeffs();
    asym_.assign(pmax_ + 1, {});
    for (int p = 0; p <= pmax_; ++p) {
        const cplx pre = ipow(p + 2) * ((p % 2) ? -1.0 : 1.0);
        for (int n = 0; n <= kAsymOrder; ++n) {
            cplx c = 0.0;
            for (int k = 0; k <= n; ++k) {
                const int m = n - k;
                c += e[k] * rising(k + 0.5, p) * rising(k + p + 1.5, m) * std::pow(shift_, m) / factorial(m);
            }
            const double nu = n + p + 1.5;
            // exact transform: int_{C+} e^{i lambda x} w^{-nu} dlambda/(2 i pi) = e^{-shift x} x^{nu-1}/(i Gamma(nu))
            asym_[p].push_back({pre * c / (I * std::exp(lgamma_pos(nu))), nu});
        }
    }

    const double vs = p_.varsigma();
    const double T0 = 10.0 / vs;
    std::vector<std::pair<cplx, cplx>> pts;  // (lambda, weight * dlambda/(2 i pi))
    auto add_panel = [&](cplx z0, cplx dir, double t0, double t1, int n, double sign) {
        const auto& g = gauss_legendre(n);
        const double c = 0.5 * (t0 + t1), h = 0.5 * (t1 - t0);
        for (int j = 0; j < n; ++j) {
            const double t = c + h * g.x[j];
            pts.push_back({z0 + t * dir, sign * h * g.w[j] * dir / (2.0 * pi * I)});
        }
    };
    const int nseg = static_cast<int>(std::ceil(2.0 * T0 / (vs / 3.0)));
    for (int k = 0; k < nseg; ++k)
        add_panel(cplx(-T0, height_), 1.0, 2.0 * T0 * k / nseg, 2.0 * T0 * (k + 1) / nseg, kSegmentNodes, 1.0);
    const auto rb = geometric_breaks(0.0, 500.0 * vs, vs / 3.0, 1.5);
    for (std::size_t k = 0; k + 1 < rb.size(); ++k) {
        add_panel(cplx(T0, height_), std::polar(1.0, 0.25 * pi), rb[k], rb[k + 1], kRayNodes, 1.0);
        add_panel(cplx(-T0, height_), std::polar(1.0, 0.75 * pi), rb[k], rb[k + 1], kRayNodes, -1.0);
    }

    nodes_.resize(pts.size());
    std::vector<cplx> der(pmax_ + 1);
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const cplx lam = pts[j].first;
        wh_.invR_down_derivs(lam, pmax_, der.data());
        const cplx w = I * lam + shift_;
        const cplx lw = std::log(w);
        nodes_[j].lambda = lam;
        nodes_[j].w.resize(pmax_ + 1);
        for (int p = 0; p <= pmax_; ++p) {
            cplx asym = 0.0;
            const cplx pre = ipow(p + 2) * ((p % 2) ? -1.0 : 1.0);
            for (int n = 0; n <= kAsymOrder; ++n) {
                const double nu = n + p + 1.5;
                // recover c_{p,n} from the stored transform coefficient
                const cplx c = asym_[p][n].first * I * std::exp(lgamma_pos(nu)) / pre;
                asym += pre * c * std::exp(-nu * lw);
            }
            nodes_[j].w[p] = pts[j].second * (der[p] / lam - asym);
        }
    }
}

void BoundaryFunctions::K_all(double x, int pmax, cplx* K, cplx* Kp) const {
    if (x < 0.0) throw std::domain_error("K_p needs x >= 0");
    if (pmax > pmax_) throw std::out_of_range("K_p: order beyond the configured table");
    for (int p = 0; p <= pmax; ++p) K[p] = Kp[p] = 0.0;
    for (const auto& nd : nodes_) {
        const cplx ex = std::exp(I * nd.lambda * x);
        const cplx exd = I * nd.lambda * ex;
        for (int p = 0; p <= pmax; ++p) {
            K[p] += nd.w[p] * ex;
            Kp[p] += nd.w[p] * exd;
        }
    }
    if (x == 0.0) {
        for (int p = 0; p <= pmax; ++p) Kp[p] = cplx(NAN, NAN);
        return;
    }
    const double ed = std::exp(-shift_ * x);
    const double lx = std::log(x);
    for (int p = 0; p <= pmax; ++p) {
        for (const auto& [c, nu] : asym_[p]) {
            const double xp = std::exp((nu - 1.0) * lx) * ed;
            K[p] += c * xp;
            Kp[p] += c * xp * ((nu - 1.0) / x - shift_);
        }
    }
}

cplx BoundaryFunctions::K(int p, double x) const {
    std::vector<cplx> k(p + 1), kp(p + 1);
    K_all(x, p, k.data(), kp.data());
    return k[p];
}

cplx BoundaryFunctions::K_prime(int p, double x) const {
    if (!(x > 0.0)) throw std::domain_error("K_p' needs x > 0");
    std::vector<cplx> k(p + 1), kp(p + 1);
    K_all(x, p, k.data(), kp.data());
    return kp[p];
}

cplx BoundaryFunctions::K_adaptive(int p, double x) const {
    if (!(x > 0.0)) throw std::domain_error("adaptive K_p needs x > 0");
    const auto c = make_creg_plus(height_, 10.0 / p_.varsigma(), x * std::sin(0.25 * pi));
    std::vector<cplx> der(p + 1);
    auto f = [&](cplx lam) {
        wh_.invR_down_derivs(lam, p, der.data());
        return std::exp(I * lam * x) * der[p] / lam;
    };
    return integrate_contour(f, c, opt_.spec) / (2.0 * pi * I);
}

// ---- closed forms -----------------------------------------------------------

double BoundaryFunctions::J(double x) const {
    if (x == 0.0) throw std::domain_error("J is singular at 0");
    if (x < 0.0) return -J(-x);
    const double k0 = p_.kappa0();
    const double q = std::exp(-k0 * x);
    const double c = std::cos(pi * p_.delta0());
    return k0 / pi * (1.0 / std::expm1(k0 * x) + (q * c + q * q) / (1.0 + 2.0 * q * c + q * q));
}

double BoundaryFunctions::rho0(double x) const {
    if (!(x > 0.0)) throw std::domain_error("rho0 needs x > 0");
    const double k0 = p_.kappa0();
    const double q = std::exp(-k0 * x);
    const double c = std::cos(pi * p_.delta0());
    const double num = std::log(-std::expm1(-k0 * x));
    const double den = 0.5 * std::log1p(2.0 * q * c + q * q);
    return -(num - den) / (2.0 * pi * pi * p_.beta);
}

double BoundaryFunctions::J_contour(double x) const {
    if (!(x > 0.0)) return x < 0.0 ? -J_contour(-x) : throw std::domain_error("J is singular at 0");
    const auto c = make_creg_plus(height_, 10.0 / p_.varsigma(), x * std::sin(0.25 * pi));
    auto f = [&](cplx lam) { return std::exp(I * lam * x) * wh_.invR(lam); };
    const cplx v = integrate_contour(f, c, opt_.spec) / (2.0 * pi * I);
    check_real(v, "J_contour");
    return v.real();
}

double BoundaryFunctions::rho0_contour(double x) const {
    if (!(x > 0.0)) throw std::domain_error("rho0 needs x > 0");
    const auto c = make_creg_plus(height_, 10.0 / p_.varsigma(), x * std::sin(0.25 * pi));
    auto f = [&](cplx lam) { return std::exp(I * lam * x) * wh_.invR(lam) / lam; };
    const cplx v = -integrate_contour(f, c, opt_.spec) / (2.0 * pi * I) / (2.0 * pi * I * p_.beta);
    check_real(v, "rho0_contour");
    return v.real();
}

double BoundaryFunctions::rho(int l, double x) const {
    if (l == 0) return rho0(x);
    if (l < 0 || l > 6) throw std::out_of_range("rho_l: order out of range");
    if (!(x > 0.0)) throw std::domain_error("rho_l needs x > 0");
    // Inner mu-integral closed upward: residues at mu = lambda and mu = 0.
    const auto c = make_creg_plus(height_, 10.0 / p_.varsigma(), x * std::sin(0.25 * pi));
    auto f = [&](cplx lam) {
        cplx v = wh_.invR(lam) * std::pow(lam, -(l + 1));
        cplx corr = 0.0;
        for (int j = 1; j <= l; ++j) corr += d_[j] / factorial(j) * std::pow(lam, -(l - j + 1));
        v -= wh_.invR_down(lam) * corr;
        return std::exp(I * lam * x) * v;
    };
    const cplx v = ipow(l + 1) / (2.0 * pi * p_.beta) * integrate_contour(f, c, opt_.spec) / (2.0 * pi * I);
    check_real(v, "rho_l");
    return v.real();
}

double BoundaryFunctions::varpi(int l, double x) const {
    if (l < 0) throw std::out_of_range("varpi: negative order");
    if (x < 0.0 || (l == 0 && x == 0.0)) throw std::domain_error("varpi: x out of range");
    const double X = x + (45.0 + 3.0 * l) / p_.kappa0();
    auto f = [&](double y) { return std::pow(y, l) * J(y); };
    const auto r = integrate_interval(f, x, X, opt_.spec);
    return require_converged(r, "varpi") / (2.0 * pi * p_.beta);
}

double BoundaryFunctions::J_moment(int l) const {
    if (l < 0) throw std::out_of_range("J_moment: negative order");
    const double X = (45.0 + 3.0 * l) / p_.kappa0();
    auto f = [&](double y) { return std::pow(y, l) * J(y) + std::pow(-y, l) * J(-y); };
    return require_converged(integrate_interval(f, 0.0, X, opt_.spec), "J_moment");
}

// ---- b, a, frak u ------------------------------------------------------------

double BoundaryFunctions::u(int l) const {
    if (l < 1 || l >= static_cast<int>(u_.size())) throw std::out_of_range("u_l: order out of range");
    return u_[l];
}

double BoundaryFunctions::frak_u(int l, double x) const {
    double acc = 0.0;
    for (int p = 0; p <= l; ++p) acc += std::pow(-x, p) * u(l - p + 1) / factorial(p);
    return acc;
}

void BoundaryFunctions::b_pair(int l, const cplx* K, const cplx* Kp, double x, double& b, double& bp) const {
    const int L1 = l + 1;
    const cplx pre = -ipow(L1 + 1) / (2.0 * pi * p_.beta);
    cplx acc = 0.0, accp = 0.0;
    const cplx ix = I * x;
    for (int s = 1; s <= L1; ++s) {
        for (int r = 0; r <= L1 - s; ++r) {
            const int p = L1 - s - r;
            const cplx c = d_[s] / (factorial(s) * factorial(p) * factorial(r));
            const cplx xr = std::pow(ix, r);
            acc += c * xr * K[p];
            cplx dxr = r > 0 ? I * double(r) * std::pow(ix, r - 1) : cplx(0.0);
            accp += c * (dxr * K[p] + (std::isfinite(Kp[p].real()) ? xr * Kp[p] : cplx(0.0)));
        }
    }
    const cplx v = pre * acc, vp = pre * accp;
    check_real(v, "b_l", 1e-8);
    b = v.real();
    bp = vp.real();
}

double BoundaryFunctions::b_func(int l, double x) const {
    if (l < 0 || l > opt_.max_order) throw std::out_of_range("b_l: order beyond max_order");
    std::vector<cplx> k(l + 2), kp(l + 2);
    K_all(x, l + 1, k.data(), kp.data());
    double b, bp;
    b_pair(l, k.data(), kp.data(), x, b, bp);
    return b;
}

double BoundaryFunctions::b_func_prime(int l, double x) const {
    if (!(x > 0.0)) throw std::domain_error("b_l' needs x > 0");
    if (l < 0 || l > opt_.max_order) throw std::out_of_range("b_l: order beyond max_order");
    std::vector<cplx> k(l + 2), kp(l + 2);
    K_all(x, l + 1, k.data(), kp.data());
    double b, bp;
    b_pair(l, k.data(), kp.data(), x, b, bp);
    return bp;
}

double BoundaryFunctions::b_func_definition(int l, double x) const {
    double v = rho(l + 1, x) - std::pow(-x, l + 1) / factorial(l + 1) * rho0(x);
    for (int s = 0; s <= l; ++s) {
        const int p = l - s;
        v -= std::pow(-x, p) * varpi(s + 1, x) / (factorial(p) * factorial(s + 1));
    }
    return v;
}

double BoundaryFunctions::a0n_direct(long n) const {
    const double s = p_.s();
    const double kap = p_.omega2 / s;
    const double sn = std::sin(pi * std::fmod(kap * n, 2.0));
    if (std::fabs(sn) < 1e-13) return 0.0;
    const double dn = static_cast<double>(n);
    const double lg = std::log(s / (2.0 * pi * p_.beta * p_.omega1 * p_.omega2)) + 2.0 * std::log(std::fabs(sn) / pi) +
                      lgamma_pos(1.0 + kap * dn) + lgamma_pos(1.0 + (1.0 - kap) * dn) - 2.0 * std::log(dn) -
                      lgamma_pos(dn + 1.0) - dn * kap * std::log(kap) - dn * (1.0 - kap) * std::log1p(-kap);
    return std::exp(lg);
}

double BoundaryFunctions::a0_coefficient(int n) const {
    if (n < 1) throw std::out_of_range("a0 coefficient index starts at 1");
    return n <= kA0Cache ? a0n_[n] : a0n_direct(n);
}

double BoundaryFunctions::a0_series(double x) const {
    if (x < 0.0) throw std::domain_error("a0 needs x >= 0");
    if (x == 0.0) return 0.0;
    // sum_n a_n (1 - q^n) = u_1 - sum_n a_n q^n, using sum_n a_n = u_1.
    const double t = p_.kappa0() * x;
    const double q = std::exp(-t);
    const double denom = -std::expm1(-t);
    double acc = 0.0, qn = 1.0;
    for (long n = 1;; ++n) {
        qn *= q;
        if (qn == 0.0) break;
        acc += (n <= kA0Cache ? a0n_[n] : a0n_direct(n)) * qn;
        const double tail = a0_env_ * std::pow(double(n + 1), -1.5) * qn * q / denom;
        if (tail < 1e-15) break;
        if (n > 400000000L) throw NumericalFailure("a0 series: too many terms");
    }
    return p_.u1() - acc;
}

double BoundaryFunctions::a0_integral(double x) const { return b_func(0, x) + p_.u1(); }

double BoundaryFunctions::a0_prime(double x) const { return b_func_prime(0, x); }

double BoundaryFunctions::a_func(int l, double x) const {
    if (l == 0) return a0_series(x);
    if (!(x > 0.0)) throw std::domain_error("a_l for l >= 1 needs x > 0");
    return (b_func(l, x) + frak_u(l, x)) / a0_series(x);
}

// ---- frak c, c_p, r -------------------------------------------------------------

double BoundaryFunctions::frak_c_direct(double x) const {
    if (x == 0.0) return L_;
    cplx k[3], kp[3];
    K_all(x, 2, k, kp);
    double b0, b0p, b1, b1p;
    b_pair(0, k, kp, x, b0, b0p);
    b_pair(1, k, kp, x, b1, b1p);
    return (b1 + x * b0) / (b0 + p_.u1());
}

double BoundaryFunctions::frak_c_prime_direct(double x) const {
    if (!(x > 0.0)) throw std::domain_error("frak c' needs x > 0");
    cplx k[3], kp[3];
    K_all(x, 2, k, kp);
    double b0, b0p, b1, b1p;
    b_pair(0, k, kp, x, b0, b0p);
    b_pair(1, k, kp, x, b1, b1p);
    const double N = b1 + x * b0, D = b0 + p_.u1();
    const double Np = b1p + b0 + x * b0p;
    return (Np - N / D * b0p) / D;
}

void BoundaryFunctions::build_tables() const {
    std::call_once(tables_once_, [this] {
        table_xmax_ = 90.0 / p_.kappa0();
        table_xmin_ = 0.01 / p_.kappa0();
        const double smax = std::sqrt(table_xmax_);
        struct Vals { double c, cp, a; };
        std::map<double, Vals> cache;
        auto vals = [&](double sg) -> const Vals& {
            auto it = cache.find(sg);
            if (it != cache.end()) return it->second;
            const double x = sg * sg;
            cplx k[3], kp[3];
            K_all(x, 2, k, kp);
            double b0, b0p, b1, b1p;
            b_pair(0, k, kp, x, b0, b0p);
            b_pair(1, k, kp, x, b1, b1p);
            const double N = b1 + x * b0, D = b0 + p_.u1();
            const double c = N / D;
            const double cp = (b1p + b0 + x * b0p - c * b0p) / D;
            const double a = 2.0 * pi * std::sqrt(p_.s()) * p_.beta * b0p * sg;
            return cache.emplace(sg, Vals{c, cp, a}).first->second;
        };
        // a_0' sqrt(x) is accurate down to 0; frak c divides by a_0 ~ sqrt(x) and is only tabulated above xmin.
        std::vector<double> br(kTablePanels + 1);
        for (int k = 0; k <= kTablePanels; ++k) br[k] = smax * k / kTablePanels;
        ap_tab_ = ChebyshevTable([&](double sg) { return vals(sg).a; }, br, kTableNodes);
        const double smin = std::sqrt(table_xmin_);
        std::vector<double> bc{smin};
        for (double b : geometric_breaks(smin, smax, 0.02 * smax, 1.15)) if (b > smin) bc.push_back(b);
        c_tab_ = ChebyshevTable([&](double sg) { return vals(sg).c; }, bc, kTableNodes);
        cp_tab_ = ChebyshevTable([&](double sg) { return vals(sg).cp; }, bc, kTableNodes);
        cint_tab_ = ChebyshevTable([&](double sg) { return 2.0 * sg * vals(sg).c; }, bc, kTableNodes);
        // cubic through (0, L) and three points up to xmin
        const double h = table_xmin_ / 3.0;
        const double f1 = frak_c_direct(h), f2 = frak_c_direct(2.0 * h), f3 = frak_c_direct(3.0 * h);
        const double d1 = (f1 - L_) / h, d2 = (f2 - 2.0 * f1 + L_) / (2.0 * h * h);
        const double d3 = (f3 - 3.0 * f2 + 3.0 * f1 - L_) / (6.0 * h * h * h);
        // Newton form on nodes 0, h, 2h converted to monomials
        small_c_[0] = L_;
        small_c_[1] = d1 - d2 * h + 2.0 * d3 * h * h;
        small_c_[2] = d2 - 3.0 * d3 * h;
        small_c_[3] = d3;
    });
}

double BoundaryFunctions::frak_c(double x) const {
    if (x < 0.0) throw std::domain_error("frak c needs x >= 0");
    build_tables();
    if (x >= table_xmax_) return 0.0;
    if (x < table_xmin_) return small_c_[0] + x * (small_c_[1] + x * (small_c_[2] + x * small_c_[3]));
    return c_tab_(std::sqrt(x));
}

double BoundaryFunctions::frak_c_prime(double x) const {
    if (x < 0.0) throw std::domain_error("frak c' needs x >= 0");
    build_tables();
    if (x >= table_xmax_) return 0.0;
    if (x < table_xmin_) return small_c_[1] + x * (2.0 * small_c_[2] + x * 3.0 * small_c_[3]);
    return cp_tab_(std::sqrt(x));
}

double BoundaryFunctions::frak_c_integral(double x) const {
    build_tables();
    auto poly = [&](double t) {
        return t * (small_c_[0] + t * (small_c_[1] / 2.0 + t * (small_c_[2] / 3.0 + t * small_c_[3] / 4.0)));
    };
    if (x < table_xmin_) return poly(x);
    return poly(table_xmin_) + cint_tab_.integral_to(std::sqrt(std::min(x, table_xmax_)));
}

double BoundaryFunctions::A_fun(double x) const {
    build_tables();
    if (x >= table_xmax_) return 0.0;
    const double sg = std::sqrt(x);
    return ap_tab_(sg) / sg;
}

cplx BoundaryFunctions::c_p_complex(int p, double x) const {
    if (p < 0 || p > 1) throw std::out_of_range("c_p: p must be 0 or 1");
    if (!(x > 0.0)) throw std::domain_error("c_p needs x > 0");
    return ipow(p) * K(p, x) / (2.0 * I * pi * std::sqrt(p_.s()));
}

double BoundaryFunctions::c_p(int p, double x) const {
    const cplx v = c_p_complex(p, x);
    check_real(v, "c_p");
    return v.real();
}

double BoundaryFunctions::r_func(double x) const {
    const double c0 = c_p(0, x), c1 = c_p(1, x);
    const double den = 1.0 + 2.0 * pi * p_.beta * p_.s() * c0;
    if (std::fabs(den) < 1e-14) throw NumericalFailure("r: denominator vanishes");
    return (c1 + L_ * c0) / den;
}

// ---- daleth ------------------------------------------------------------------------

DalethPRoutes BoundaryFunctions::daleth_p_routes(int p, double eps) const {
    if (p < 0 || p > 30) throw std::out_of_range("daleth_p: order out of range");
    if (!(eps > 0.0 && eps < p_.kappa0())) throw std::invalid_argument("daleth_p: eps' must lie in (0, kappa0)");
    const cplx Rd0 = 1.0 / dR0_[0];
    const double sc = p_.varsigma();
    QuadratureSpec sp = opt_.spec;
    sp.abs_tol = std::min(sp.abs_tol, 1e-14);
    // mu = +-i eps + sc sinh(t): algebraic decay becomes exponential in t
    auto line = [&](double shift, auto&& f) {
        auto g = [&](double t) { return f(cplx(sc * std::sinh(t), shift)) * sc * std::cosh(t); };
        const double T = 2.0 * std::log(2.0 / std::numeric_limits<double>::epsilon());
        auto r1 = integrate_interval(g, 0.0, T, sp);
        auto r2 = integrate_interval(g, -T, 0.0, sp);
        if (!r1.converged || !r2.converged) throw NumericalFailure("daleth_p: line quadrature did not converge");
        return (r1.value + r2.value) / (2.0 * pi * I);
    };
    DalethPRoutes out;
    out.upper = -0.5 * Rd0 * line(eps, [&](cplx mu) { return std::pow(mu, -(p + 1)) * wh_.invR_down(mu); });
    const double sg = (p % 2 == 0) ? -1.0 : 1.0;
    out.lower = sg * 0.5 * Rd0 * line(-eps, [&](cplx mu) { return std::pow(mu, -(p + 2)) * wh_.invR_up(mu); });
    out.residue = 0.5 * Rd0 * dR0_[p] / factorial(p);
    return out;
}

cplx BoundaryFunctions::daleth_p(int p) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = daleth_memo_.find(p);
        if (it != daleth_memo_.end()) return it->second;
    }
    const auto r = daleth_p_routes(p, 0.5 * p_.varsigma());
    if (std::abs(r.upper - r.lower) > 1e-8 * std::max(1.0, std::abs(r.upper)))
        throw NumericalFailure("daleth_p: the two contour expressions disagree");
    std::lock_guard<std::mutex> lk(mu_);
    daleth_memo_[p] = r.upper;
    return r.upper;
}

double BoundaryFunctions::daleth_p_rotated(int p) const {
    if (p < 0 || p > 62) throw std::out_of_range("daleth_p: order out of range");
    const cplx v = ipow(p) * 0.5 * dR0_[p] / (dR0_[0] * factorial(p));
    check_real(v, "i^p daleth_p", 1e-12);
    return v.real();
}

double BoundaryFunctions::daleth_sl_explicit(int s, int l) const {
    if (s < 0 || l < 0 || s + l + l + 3 > 62) throw std::out_of_range("daleth_sl: order out of range");
    const int L1 = l + 1;
    cplx acc = 0.0;
    for (int sp = 1; sp <= L1; ++sp) {
        for (int r = 0; r <= L1 - sp; ++r) {
            const int p = L1 - sp - r;
            acc += ipow(s + 2 * r + 1) * factorial(s + r) /
                   (factorial(sp) * factorial(p) * factorial(r) * factorial(s + r + 1)) * d_[sp] *
                   dR0_[s + r + 1 + p];
        }
    }
    const cplx v = ipow(L1 + 1) / (2.0 * pi * p_.beta) * acc;
    check_real(v, "daleth_sl explicit", 1e-10);
    return v.real();
}

cplx BoundaryFunctions::daleth_sl_alternative(int s, int l) const {
    // sum_{r=1}^{l+1} s!/(r!(s+l+1-r)!) d^r(mu/R_down(-mu))(0) d^{s+1+l-r}(1/R_down)(0), scaled by i^{s+l+1}/(2 pi)
    cplx acc = 0.0;
    for (int r = 1; r <= l + 1; ++r)
        acc += factorial(s) / (factorial(r) * factorial(s + l + 1 - r)) * (-d_[r]) * dR0_[s + 1 + l - r];
    return ipow(s + l + 1) / (2.0 * pi) * acc;
}

DalethSLRoutes BoundaryFunctions::daleth_sl_routes(int s, int l) const {
    if (l > opt_.max_order) throw std::out_of_range("daleth_sl: l beyond max_order");
    DalethSLRoutes out;
    const double X = (40.0 + 6.0 * (s + l + 1)) / p_.kappa0();
    QuadratureSpec sp = opt_.spec;
    sp.abs_tol = std::min(sp.abs_tol, 1e-14);
    std::vector<cplx> k(l + 2), kp(l + 2);
    auto f = [&](double x) {
        K_all(x, l + 1, k.data(), kp.data());
        double b, bp;
        b_pair(l, k.data(), kp.data(), x, b, bp);
        return std::pow(x, s) * b;
    };
    out.moment = require_converged(integrate_interval(f, 0.0, X, sp, Singularity::left), "daleth_sl moment");
    out.explicit_ = daleth_sl_explicit(s, l);
    out.alternative = daleth_sl_alternative(s, l);
    return out;
}

double BoundaryFunctions::daleth_sl(int s, int l) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = daleth_sl_memo_.find({s, l});
        if (it != daleth_sl_memo_.end()) return it->second;
    }
    double v;
    if (l <= opt_.max_order && s + l <= opt_.max_order) {
        const auto r = daleth_sl_routes(s, l);
        if (std::fabs(r.moment - r.explicit_) > 1e-5 * std::max(1.0, std::fabs(r.explicit_)))
            throw NumericalFailure("daleth_sl: moment " + std::to_string(r.moment) + " vs explicit " +
                                   std::to_string(r.explicit_));
        v = r.moment;
    } else {
        v = daleth_sl_explicit(s, l);
    }
    std::lock_guard<std::mutex> lk(mu_);
    daleth_sl_memo_[{s, l}] = v;
    return v;
}

// ---- gimel -------------------------------------------------------------------------

double BoundaryFunctions::gimel(int n) const {
    if (n < 0 || n > 9) throw std::out_of_range("gimel: order out of range");
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = gimel_memo_.find(n);
        if (it != gimel_memo_.end()) return it->second;
    }
    const double X = (45.0 + 4.0 * n) / p_.kappa0();
    std::function<double(double)> f;
    if (n % 2 == 0) {
        f = [&](double u) { return J(u) * std::pow(u, n) * kernel_xS_prime(p_, u); };
    } else {
        f = [&](double u) { return J(u) * kernel_S(p_, u) * std::pow(u, n + 1); };
    }
    // even integrand: full line = twice the half line
    const double half = require_converged(integrate_interval(f, 0.0, X, opt_.spec), "gimel");
    const double v = 2.0 * half / (4.0 * pi * p_.beta * factorial(n));
    std::lock_guard<std::mutex> lk(mu_);
    gimel_memo_[n] = v;
    return v;
}

double BoundaryFunctions::gimel0_half_line() const {
    const double X = 45.0 / p_.kappa0();
    auto f = [&](double u) { return J(u) * (u * kernel_S_prime(p_, u) + kernel_S(p_, u)); };
    return require_converged(integrate_interval(f, 0.0, X, opt_.spec), "gimel0 half line") / (2.0 * pi);
}

double BoundaryFunctions::bulk_kernel(double x, double y) const {
    if (x < 0.0 || y < 0.0 || x + y == 0.0) throw std::domain_error("bulk kernel needs x, y >= 0, not both 0");
    build_tables();
    QuadratureSpec sp = opt_.spec;
    sp.rel_tol = std::max(sp.rel_tol, 1e-10);
    auto f = [&](double t) { return A_fun(x + t) * A_fun(y + t); };
    return require_converged(integrate_interval(f, 0.0, table_xmax_, sp, Singularity::left), "bulk kernel") /
           (2.0 * pi * p_.beta);
}

// ---- aleph_0 -----------------------------------------------------------------------

Aleph0Result BoundaryFunctions::aleph0() const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        if (aleph_memo_) return *aleph_memo_;
    }
    build_tables();
    const double beta = p_.beta;
    QuadratureSpec sp = opt_.spec;
    sp.rel_tol = std::max(sp.rel_tol, 1e-9);
    sp.abs_tol = std::max(sp.abs_tol, 1e-12);
    const double k0 = p_.kappa0();
    const double X = 90.0 / k0;

    // Direct evaluations lose digits to cancellation near 0; below x0 use a linear fit.
    auto with_fit = [](auto&& g, double x0) {
        const double g1 = g(x0), g2 = g(2.0 * x0);
        return [=](double x) { return x >= x0 ? g(x) : g1 + (g2 - g1) * (x - x0) / x0; };
    };
    const double x0 = 0.02 / std::max(1.0, p_.s() / 2.0);

    // Term 1: -(1/pi beta) int_0^inf J [S' C + S (L + c)/2], C(u) = int_0^u c
    auto t1_raw = [&](double u) {
        const double C = frak_c_integral(u);
        return J(u) * (kernel_S_prime(p_, u) * C + 0.5 * kernel_S(p_, u) * (L_ + frak_c(u)));
    };
    auto t1 = with_fit(t1_raw, x0);
    const double T1 = -require_converged(integrate_interval(t1, 0.0, X, sp), "aleph0 term 1") / (pi * beta);

    // Boundary part of term 2: int_0^inf [d/dx(S (c - L)) - 1] rho0
    auto br_raw = [&](double x) {
        return kernel_S_prime(p_, x) * (frak_c(x) - L_) + kernel_S(p_, x) * frak_c_prime(x) - 1.0;
    };
    auto br = with_fit(br_raw, x0);
    const double PB = require_converged(
        integrate_interval([&](double x) { return br(x) * rho0(x); }, 0.0, X, sp, Singularity::left),
        "aleph0 boundary part");

    // Bulk part: (2/2 pi beta) int_0^inf du int_0^inf dw A(u+w) A(w) P_u(w), P_u(w) = int_0^w G(y+u, y) dy
    auto G_raw = [&](double x, double y) {
        const double u = x - y;
        return -kernel_S_second(p_, u) * (frak_c(x) - frak_c(y)) - kernel_S_prime(p_, u) * (frak_c_prime(x) + frak_c_prime(y));
    };
    const double delta = x0 * 2.5;
    auto G = [&](double u, double y) {
        if (u >= delta) return G_raw(y + u, y);
        // quadratic through u = delta, 1.5 delta, 2 delta
        const double g1 = G_raw(y + delta, y), g2 = G_raw(y + 1.5 * delta, y), g3 = G_raw(y + 2.0 * delta, y);
        const double t = (u - delta) / (0.5 * delta);
        return g1 + t * (g2 - g1) + 0.5 * t * (t - 1.0) * (g3 - 2.0 * g2 + g1);
    };
    const double wmax = std::sqrt(X);
    std::vector<double> brk(25);
    for (int k = 0; k <= 24; ++k) brk[k] = wmax * k / 24;
    const double U = 45.0 / (2.0 * pi * std::min(p_.omega1, p_.omega2));
    QuadratureSpec sp_in = sp;
    sp_in.rel_tol = sp.rel_tol * 0.1;
    auto inner = [&](double u) {
        ChebyshevTable P([&](double sg) { return 2.0 * sg * G(u, sg * sg); }, brk, 14);
        auto h = [&](double w) { return A_fun(u + w) * A_fun(w) * P.integral_to(std::sqrt(std::min(w, X))); };
        return require_converged(integrate_interval(h, 0.0, X, sp_in, Singularity::left), "aleph0 inner");
    };
    const double PI_ = 2.0 / (2.0 * pi * beta) *
                       require_converged(integrate_interval(inner, 0.0, U, sp, Singularity::left), "aleph0 bulk");

    Aleph0Result r;
    r.term1 = T1;
    r.term2_boundary = PB;
    r.term2_bulk = PI_;
    r.term2 = PB + PI_;
    r.value = T1 + r.term2;
    r.alternative_form = T1 / (2.0 * pi) + r.term2;
    std::lock_guard<std::mutex> lk(mu_);
    aleph_memo_ = std::make_unique<Aleph0Result>(r);
    return r;
}

}  // namespace sinhmodel

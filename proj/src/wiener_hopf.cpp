#include "sinhmodel/wiener_hopf.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sinhmodel/quadrature.hpp"
#include "sinhmodel/special.hpp"

namespace sinhmodel {

using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

constexpr int kTaylorTerms = 64;
constexpr int kAsymTerms = 20;
constexpr int kStirlingTerms = 10;
const cplx I(0.0, 1.0);

// 1 - exp(-2w) without cancellation for small w.
cplx one_minus_exp_m2(cplx w) {
    if (std::abs(w) < 1e-3) {
        const cplx x = -2.0 * w;
        return -(x + x * x / 2.0 + x * x * x / 6.0 + x * x * x * x / 24.0);
    }
    return 1.0 - std::exp(-2.0 * w);
}

}  // namespace

std::vector<cplx> series_exp(const std::vector<cplx>& a, int n) {
    std::vector<cplx> b(n + 1, 0.0);
    b[0] = std::exp(a.empty() ? cplx(0.0) : a[0]);
    for (int k = 1; k <= n; ++k) {
        cplx acc = 0.0;
        for (int m = 1; m <= k && m < static_cast<int>(a.size()); ++m) acc += double(m) * a[m] * b[k - m];
        b[k] = acc / double(k);
    }
    return b;
}

WienerHopf::WienerHopf(const ModelParams& p) : p_(p) {
    p_.validate();
    a1_ = 1.0 / (2.0 * pi * p_.omega1);
    a2_ = 1.0 / (2.0 * pi * p_.omega2);
    a12_ = a1_ + a2_;
    L_ = p_.log_constant();
    const double s = p_.s();

    log_taylor_.assign(kTaylorTerms + 1, 0.0);
    log_taylor_[0] = cplx(-0.5 * std::log(s), 0.5 * pi);
    log_taylor_[1] = I * L_;
    cplx mi_pow = -I;
    for (int k = 2; k <= kTaylorTerms; ++k) {
        mi_pow *= -I;
        const double A = std::pow(a12_, k) - std::pow(a1_, k) - std::pow(a2_, k);
        log_taylor_[k] = zeta(k) * mi_pow * A / double(k);
    }
    taylor_ = series_exp(log_taylor_, kTaylorTerms);

    // ln E(w) = sum_j beta_j w^{2j-1}, w = 1/z
    std::vector<cplx> S(kAsymTerms + 1, 0.0);
    for (int j = 1; j <= kStirlingTerms && 2 * j - 1 <= kAsymTerms; ++j) {
        const double m = 1.0 - 2.0 * j;
        const double c = bernoulli(2 * j) / (2.0 * j * (2.0 * j - 1.0));
        S[2 * j - 1] = c * (std::pow(a12_, m) - std::pow(a1_, m) - std::pow(a2_, m));
    }
    const auto E = series_exp(S, kAsymTerms);
    e_.resize(E.size());
    for (std::size_t k = 0; k < E.size(); ++k) e_[k] = E[k].real();
    asym_radius_ = 12.0 / std::min(a1_, a2_);
}

cplx WienerHopf::R(cplx lambda) const { return 1.0 / invR(lambda); }

cplx WienerHopf::invR(cplx lambda) const {
    if (lambda == cplx(0.0)) return 0.0;
    const double sgn = lambda.real() < 0.0 ? -1.0 : 1.0;
    const cplx l = sgn * lambda;  // 1/R is odd
    const cplx w1 = l / (2.0 * p_.omega1), w2 = l / (2.0 * p_.omega2), w12 = w1 + w2;
    const double kap = p_.kappa0();
    const double n = std::round(lambda.imag() / kap);
    if (n != 0.0 && std::abs(lambda - cplx(0.0, n * kap)) < 1e-8) throw std::domain_error("invR: pole proximity");
    cplx v;
    if (std::fabs(w12.real()) < 1.0) v = 2.0 * std::sinh(w1) * std::sinh(w2) / std::sinh(w12);
    else v = one_minus_exp_m2(w1) * one_minus_exp_m2(w2) / one_minus_exp_m2(w12);
    return sgn * v;
}

cplx WienerHopf::R_up(cplx lambda) const {
    if (std::abs(lambda) < 1e-8) throw std::domain_error("R_up: pole at 0");
    return R_down(-lambda) / (-lambda);
}

cplx WienerHopf::upsilon(cplx lambda, double eps) const {
    return lambda.imag() > eps ? invR_up(lambda) : R_down(lambda);
}

cplx WienerHopf::invR_down_gamma(cplx lambda) const {
    if (lambda == cplx(0.0)) return taylor_[0];
    const cplx z = I * lambda;
    const cplx lg = log_gamma_complex(a12_ * z) - log_gamma_complex(a1_ * z) - log_gamma_complex(a2_ * z);
    return 2.0 * pi * std::sqrt(p_.s()) / lambda * std::exp(z * L_ + lg);
}

bool WienerHopf::in_asymptotic_region(cplx lambda) const {
    if (std::abs(lambda) < asym_radius_) return false;
    // stay out of the cone around the positive imaginary axis, where 1/R_down has its poles
    const cplx z = I * lambda;
    return std::fabs(std::arg(z)) < 0.85 * pi;
}

cplx WienerHopf::invR_down_asymptotic(cplx lambda) const {
    const cplx z = I * lambda;
    const cplx w = 1.0 / z;
    cplx acc = 0.0;
    for (int k = kAsymTerms; k >= 0; --k) acc = acc * w + e_[k];
    return I * acc / std::sqrt(z);
}

cplx WienerHopf::invR_down(cplx lambda) const {
    const double r = std::abs(lambda);
    if (r < 0.25 * p_.kappa0()) {
        cplx acc = 0.0;
        for (int k = kTaylorTerms; k >= 0; --k) acc = acc * lambda + taylor_[k];
        return acc;
    }
    if (in_asymptotic_region(lambda)) return invR_down_asymptotic(lambda);
    return invR_down_gamma(lambda);
}

void WienerHopf::invR_down_derivs(cplx lambda, int pmax, cplx* out) const {
    const double r = std::abs(lambda);
    if (r < 0.25 * p_.kappa0()) {
        for (int p = 0; p <= pmax; ++p) {
            cplx acc = 0.0;
            for (int k = kTaylorTerms; k >= p; --k) {
                double ff = 1.0;
                for (int m = 0; m < p; ++m) ff *= double(k - m);
                acc = acc * lambda + taylor_[k] * ff;
            }
            out[p] = acc;
        }
        return;
    }
    if (in_asymptotic_region(lambda)) {
        const cplx z = I * lambda;
        const cplx w = 1.0 / z;
        const cplx rz = 1.0 / std::sqrt(z);
        cplx ip = I;  // i * i^p (-1)^p
        for (int p = 0; p <= pmax; ++p) {
            cplx acc = 0.0;
            for (int k = kAsymTerms; k >= 0; --k) {
                double poch = 1.0;
                for (int m = 0; m < p; ++m) poch *= (k + 0.5 + m);
                acc = acc * w + e_[k] * poch;
            }
            out[p] = ip * acc * rz * std::pow(w, p);
            ip *= -I;
        }
        return;
    }
    // Cauchy circle kept at half the distance to the nearest pole i n kappa0.
    const double kap = p_.kappa0();
    double dist = INFINITY;
    if (lambda.imag() > 0.0) {
        const double n = std::max(1.0, std::round(lambda.imag() / kap));
        dist = std::abs(lambda - cplx(0.0, n * kap));
        dist = std::min(dist, std::abs(lambda - cplx(0.0, (n + 1) * kap)));
        if (n > 1) dist = std::min(dist, std::abs(lambda - cplx(0.0, (n - 1) * kap)));
    }
    const double rad = std::min(0.25 * kap, 0.5 * dist);
    if (!(rad > 1e-6)) throw std::domain_error("invR_down_derivs: pole proximity");
    auto f = [this](cplx z) { return invR_down(z); };
    const auto tc = taylor_coeffs(f, lambda, rad, pmax, 48);
    double fact = 1.0;
    for (int p = 0; p <= pmax; ++p) {
        if (p > 0) fact *= p;
        out[p] = tc.coeffs[p] * fact;
    }
}

std::vector<cplx> WienerHopf::invR_down_derivs(cplx lambda, int pmax) const {
    std::vector<cplx> out(pmax + 1);
    invR_down_derivs(lambda, pmax, out.data());
    return out;
}

std::vector<cplx> WienerHopf::invR_down_taylor(int n) const {
    if (n > kTaylorTerms) throw std::out_of_range("invR_down_taylor: order too high");
    return {taylor_.begin(), taylor_.begin() + n + 1};
}

std::vector<cplx> WienerHopf::invR_down_derivs_at0(int n) const {
    auto c = invR_down_taylor(n);
    double fact = 1.0;
    for (int k = 1; k <= n; ++k) {
        fact *= k;
        c[k] *= fact;
    }
    return c;
}

std::vector<cplx> WienerHopf::d_coeffs(int n) const {
    // 1/R_up(mu) = -mu (1/R_down)(-mu)
    auto c = invR_down_taylor(n);
    std::vector<cplx> d(n + 1, 0.0);
    double fact = 1.0;
    for (int k = 1; k <= n; ++k) {
        fact *= k;
        const double sg = ((k - 1) % 2 == 0) ? 1.0 : -1.0;
        d[k] = -sg * c[k - 1] * fact;
    }
    return d;
}

std::vector<double> WienerHopf::u_coeffs(int lmax) const {
    if (lmax < 1) throw std::invalid_argument("u_coeffs: lmax must be >= 1");
    auto f = [this](cplx z) { return invR(z); };
    const auto tc = taylor_coeffs(f, 0.0, 0.8 * p_.kappa0(), lmax, std::max(128, 8 * (lmax + 1)));
    std::vector<double> u(lmax + 1, 0.0);
    cplx ipow = 1.0;
    for (int l = 1; l <= lmax; ++l) {
        ipow *= I;
        const cplx v = ipow * tc.coeffs[l] / (2.0 * I * pi * p_.beta);
        if (std::fabs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v)))
            throw NumericalFailure("u_coeffs: coefficient not real");
        u[l] = v.real();
    }
    return u;
}

std::vector<double> WienerHopf::u_coeffs_from_factors(int lmax) const {
    auto dn = invR_down_taylor(lmax);
    std::vector<cplx> up(lmax + 1, 0.0);
    for (int k = 1; k <= lmax; ++k) up[k] = -((k - 1) % 2 == 0 ? 1.0 : -1.0) * dn[k - 1];
    std::vector<double> u(lmax + 1, 0.0);
    cplx ipow = 1.0;
    for (int l = 1; l <= lmax; ++l) {
        ipow *= I;
        cplx c = 0.0;
        for (int k = 0; k <= l; ++k) c += up[k] * dn[l - k];
        u[l] = (ipow * c / (2.0 * I * pi * p_.beta)).real();
    }
    return u;
}

}  // namespace sinhmodel

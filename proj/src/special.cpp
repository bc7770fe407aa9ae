#include "sinhmodel/special.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_dilog.h>
#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_zeta.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sinhmodel {

using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

struct GslQuiet {
    GslQuiet() { gsl_set_error_handler_off(); }
};
const GslQuiet gsl_quiet;

// Imaginary part of the principal log Gamma to ~1e-6, used only to pick the 2 pi branch.
double principal_arg_estimate(cplx z) {
    cplx shift = 0.0;
    while (std::abs(z) < 12.0) {
        shift += std::log(z);
        z += 1.0;
    }
    const cplx st = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + 1.0 / (12.0 * z) -
                    1.0 / (360.0 * z * z * z);
    return (st - shift).imag();
}

}  // namespace

cplx log_gamma_complex(cplx z) {
    if (z.real() <= 0.5) {
        const double n = std::round(z.real());
        if (n <= 0.0 && std::abs(z - n) < 1e-8) throw std::domain_error("log_gamma_complex: too close to a pole");
    }
    gsl_sf_result lnr, arg;
    const int st = gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
    if (st != GSL_SUCCESS) throw std::domain_error("log_gamma_complex: evaluation failed");
    double im = arg.val;
    // The principal branch is only continuous off the negative real axis; elsewhere keep GSL's value.
    if (!(z.imag() == 0.0 && z.real() < 0.0)) {
        const double target = principal_arg_estimate(z);
        im += 2.0 * pi * std::round((target - im) / (2.0 * pi));
    }
    return {lnr.val, im};
}

double zeta(double s) {
    if (s == 1.0) throw std::domain_error("zeta: pole at s = 1");
    return gsl_sf_zeta(s);
}

double zeta_prime_minus1() { return -0.16542114370045092921; }

double zeta_prime_zero() { return -0.5 * std::log(2.0 * pi); }

double bernoulli(int n) {
    if (n < 0) throw std::domain_error("bernoulli: negative index");
    if (n == 0) return 1.0;
    if (n == 1) return -0.5;
    if (n % 2 == 1) return 0.0;
    // B_{2j} = (-1)^{j+1} 2 (2j)! zeta(2j) / (2 pi)^{2j}
    const int j = n / 2;
    const double mag = 2.0 * std::exp(std::lgamma(n + 1.0) - n * std::log(2.0 * pi)) * gsl_sf_zeta_int(n);
    return (j % 2 == 1) ? mag : -mag;
}

double polylog(int n, double a) {
    if (n < 1) throw std::domain_error("polylog: order must be >= 1");
    if (a < -0.5 || a > 1.0) throw std::domain_error("polylog: argument outside [-1/2, 1]");
    if (a == 0.0) return 0.0;
    if (n == 1) {
        if (a == 1.0) throw std::domain_error("polylog: Li_1 diverges at 1");
        return -std::log1p(-a);
    }
    if (a == 1.0) return gsl_sf_zeta_int(n);
    if (n == 2) return gsl_sf_dilog(a);
    if (std::fabs(a) <= 0.5) {
        double sum = 0.0, pw = a;
        for (int k = 1; k < 200; ++k) {
            const double term = pw / std::pow(k, n);
            sum += term;
            if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
            pw *= a;
        }
        return sum;
    }
    // a in (1/2, 1): expansion in mu = ln a, convergent for |mu| < 2 pi.
    const double mu = std::log(a);
    double harmonic = 0.0;
    for (int k = 1; k <= n - 1; ++k) harmonic += 1.0 / k;
    double sum = 0.0, pw = 1.0, fact = 1.0;
    for (int k = 0; k < 80; ++k) {
        if (k > 0) {
            pw *= mu;
            fact *= k;
        }
        double term;
        if (k == n - 1) term = pw / fact * (harmonic - std::log(-mu));
        else term = gsl_sf_zeta(static_cast<double>(n - k)) * pw / fact;
        sum += term;
        if (k > n && std::fabs(term) < 1e-18) break;
    }
    return sum;
}

}  // namespace sinhmodel

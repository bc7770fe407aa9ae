#pragma once

#include <complex>

namespace sinhmodel {

// Principal-branch log Gamma, continuous on C minus (-inf, 0]. Domain error within 1e-8 of a pole.
std::complex<double> log_gamma_complex(std::complex<double> z);

// Riemann zeta at real s != 1.
double zeta(double s);
// zeta'(-1) and zeta'(0).
double zeta_prime_minus1();
double zeta_prime_zero();

// Bernoulli number B_n (B_1 = -1/2).
double bernoulli(int n);

// Li_n(a) for integer n >= 1 and real a in [-1/2, 1].
double polylog(int n, double a);

}  // namespace sinhmodel

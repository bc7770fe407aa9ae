#pragma once

#include <complex>
#include <vector>

#include "sinhmodel/model_core.hpp"

namespace sinhmodel {

// R(lambda) = sinh[lambda s/(2 w1 w2)] / (2 sinh[lambda/2w1] sinh[lambda/2w2]) and its
// Wiener-Hopf factors, R = R_up R_down with R_up analytic and zero-free in the upper
// half-plane and R_down in the lower one.
class WienerHopf {
public:
    using cplx = std::complex<double>;

    explicit WienerHopf(const ModelParams& p);

    const ModelParams& params() const { return p_; }

    cplx R(cplx lambda) const;
    cplx invR(cplx lambda) const;
    cplx R_down(cplx lambda) const { return 1.0 / invR_down(lambda); }
    cplx invR_down(cplx lambda) const;
    cplx R_up(cplx lambda) const;
    cplx invR_up(cplx lambda) const { return -lambda * invR_down(-lambda); }
    // 1/R_up above the line R + i eps, R_down below it.
    cplx upsilon(cplx lambda, double eps) const;

    // Direct Gamma-function evaluation of 1/R_down, no series shortcuts (test oracle).
    cplx invR_down_gamma(cplx lambda) const;
    // Large-|lambda| expansion i z^{-1/2} sum_k e_k z^{-k}, z = i lambda.
    cplx invR_down_asymptotic(cplx lambda) const;
    bool in_asymptotic_region(cplx lambda) const;
    const std::vector<double>& asymptotic_coeffs() const { return e_; }

    // out[p] = d^p/dlambda^p (1/R_down)(lambda), p = 0..pmax.
    void invR_down_derivs(cplx lambda, int pmax, cplx* out) const;
    std::vector<cplx> invR_down_derivs(cplx lambda, int pmax) const;

    // Taylor coefficients at 0 from the exact zeta-series of ln(1/R_down).
    std::vector<cplx> invR_down_taylor(int n) const;
    // d^k/dlambda^k (1/R_down)(0), k = 0..n.
    std::vector<cplx> invR_down_derivs_at0(int n) const;
    // d_k = d^k/dmu^k (1/R_up)(0), k = 0..n; d_0 = 0, d_1 = 1/(i sqrt s).
    std::vector<cplx> d_coeffs(int n) const;

    // u_l = (i^l / (2 i pi beta l!)) d^l(1/R)(0), l = 1..lmax, via Cauchy coefficients of 1/R.
    std::vector<double> u_coeffs(int lmax) const;
    // Same coefficients derived from the factor series, as an independent route.
    std::vector<double> u_coeffs_from_factors(int lmax) const;

private:
    ModelParams p_;
    double a1_, a2_, a12_;
    double L_;
    double asym_radius_;
    std::vector<cplx> log_taylor_;  // Taylor coefficients of ln(1/R_down) at 0
    std::vector<cplx> taylor_;      // of 1/R_down at 0
    std::vector<double> e_;         // asymptotic coefficients
};

// Exponential of a power series: returns b with sum b_k x^k = exp(sum a_k x^k), a_0 included.
std::vector<std::complex<double>> series_exp(const std::vector<std::complex<double>>& a, int n);

}  // namespace sinhmodel

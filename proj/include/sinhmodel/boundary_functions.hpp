#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "sinhmodel/model_core.hpp"
#include "sinhmodel/quadrature.hpp"
#include "sinhmodel/wiener_hopf.hpp"

namespace sinhmodel {

struct BoundaryOptions {
    int max_order = 4;            // largest l for b_l, a_l and the default daleth table
    double contour_scale = 1.0;   // height of C_reg^(+) relative to varsigma
    QuadratureSpec spec{};
};

// Both contour routes for daleth_p at one eps'.
struct DalethPRoutes {
    cplx upper;   // -(R_down(0)/2) int_{R+i eps'} mu^{-(p+1)} / R_down
    cplx lower;   // (-1)^{p+1} (R_down(0)/2) int_{R-i eps'} mu^{-(p+2)} / R_up
    cplx residue; // closed value from Taylor coefficients at 0
};

struct DalethSLRoutes {
    double moment = 0.0;    // int_0^inf x^s b_l(x) dx by quadrature
    double explicit_ = 0.0; // derivative formula from the moment integral closed downward
    cplx alternative;       // the alternative closed form, reported only
};

struct Aleph0Result {
    double value = 0.0;        // T1 + T2, the gated value
    double term1 = 0.0;
    double term2 = 0.0;
    double term2_boundary = 0.0;  // part of T2 carried by rho0
    double term2_bulk = 0.0;      // part of T2 carried by the kernel K1
    double alternative_form = 0.0;  // T1/(2 pi) + T2, reported only
};

// Edge-profile functions and the spectral constants built from them.
// Immutable after construction; memoised constants are filled under a mutex.
class BoundaryFunctions {
public:
    explicit BoundaryFunctions(const ModelParams& p, BoundaryOptions opt = {});
    BoundaryFunctions(const BoundaryFunctions&) = delete;
    BoundaryFunctions& operator=(const BoundaryFunctions&) = delete;

    const ModelParams& params() const { return p_; }
    const WienerHopf& factors() const { return wh_; }
    const BoundaryOptions& options() const { return opt_; }
    double contour_height() const { return height_; }

    // Closed forms in q = exp(-kappa0 x), and their contour definitions.
    double J(double x) const;
    double J_contour(double x) const;
    double rho0(double x) const;
    double rho0_contour(double x) const;
    // rho_l through the double contour, reduced to one contour by closing the inner integral.
    double rho(int l, double x) const;
    // (1/2 pi beta) int_x^inf y^l J(y) dy
    double varpi(int l, double x) const;
    // int_R y^l J(y) dy
    double J_moment(int l) const;

    // K_p(x) = int_{C+} e^{i lambda x} d^p(1/R_down)(lambda) / lambda  dlambda/(2 i pi), x >= 0.
    cplx K(int p, double x) const;
    cplx K_prime(int p, double x) const;  // x > 0
    // Same integral by adaptive contour quadrature (oracle), x > 0.
    cplx K_adaptive(int p, double x) const;

    double u(int l) const;
    // u-polynomial sum_{s+p=l} (-x)^p u_{s+1} / p!
    double frak_u(int l, double x) const;

    double b_func(int l, double x) const;
    double b_func_prime(int l, double x) const;
    // b_l from rho_{l+1}, rho_0 and varpi (oracle route).
    double b_func_definition(int l, double x) const;

    // a_0 by its positive series; a_l = (b_l + frak_u_l)/a_0 for l >= 1 (x > 0).
    double a_func(int l, double x) const;
    double a0_series(double x) const;
    double a0_integral(double x) const;  // b_0 + u_1 through K_0
    double a0_prime(double x) const;     // through K_0', x > 0

    // frak c = (b_1 - b_0 a_1)/u_1; direct evaluation and tabulated (fast) versions.
    double frak_c_direct(double x) const;
    double frak_c_prime_direct(double x) const;
    double frak_c(double x) const;
    double frak_c_prime(double x) const;
    double frak_c_integral(double x) const;  // int_0^x frak c

    // c_p = i^p K_p / (2 i pi sqrt s) and r = (c_1 + L c_0)/(1 + 2 pi beta s c_0).
    cplx c_p_complex(int p, double x) const;
    double c_p(int p, double x) const;
    double r_func(double x) const;

    // daleth_p (complex: it is imaginary for odd p), checked across both contour routes.
    cplx daleth_p(int p) const;
    DalethPRoutes daleth_p_routes(int p, double eps) const;
    // i^p daleth_p from Taylor coefficients, any p up to 62.
    double daleth_p_rotated(int p) const;

    double daleth_sl(int s, int l) const;
    DalethSLRoutes daleth_sl_routes(int s, int l) const;
    double daleth_sl_explicit(int s, int l) const;
    cplx daleth_sl_alternative(int s, int l) const;

    double gimel(int n) const;
    double gimel0_half_line() const;  // beta = 1 half-line form

    Aleph0Result aleph0() const;
    // (1/2 pi beta) int_0^inf A(x+t) A(y+t) dt with A = 2 pi sqrt(s) beta a_0'; equals rho0(x) at y = 0.
    double bulk_kernel(double x, double y) const;

    // Positive-series coefficient a_{0;n}, n >= 1.
    double a0_coefficient(int n) const;

private:
    struct Node {
        cplx lambda;
        std::vector<cplx> w;  // weight times regularised integrand, per p
    };

    ModelParams p_;
    BoundaryOptions opt_;
    WienerHopf wh_;
    double height_, shift_, L_;
    int pmax_;
    std::vector<Node> nodes_;
    std::vector<std::vector<std::pair<cplx, double>>> asym_;  // per p: (coefficient, exponent nu)
    std::vector<cplx> dR0_;  // d^k(1/R_down)(0)
    std::vector<cplx> d_;    // d_k
    std::vector<double> u_;

    std::vector<double> a0n_;  // cached series coefficients
    double a0_env_ = 0.0;

    mutable std::mutex mu_;
    mutable std::map<int, cplx> daleth_memo_;
    mutable std::map<std::pair<int, int>, double> daleth_sl_memo_;
    mutable std::map<int, double> gimel_memo_;
    mutable std::unique_ptr<Aleph0Result> aleph_memo_;

    mutable std::once_flag tables_once_;
    mutable ChebyshevTable c_tab_, cp_tab_, cint_tab_, ap_tab_;
    mutable double table_xmax_ = 0.0;
    mutable double table_xmin_ = 0.0;  // below it frak c is the cubic small_c_ through c(0) = L
    mutable double small_c_[4] = {0, 0, 0, 0};

    void build_nodes();
    void K_all(double x, int pmax, cplx* K, cplx* Kp) const;
    void b_pair(int l, const cplx* K, const cplx* Kp, double x, double& b, double& bp) const;
    void build_tables() const;
    double A_fun(double x) const;  // 2 pi sqrt(s) beta a_0'(x), tabulated
    double a0n_direct(long n) const;
};

}  // namespace sinhmodel

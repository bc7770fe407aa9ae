#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sinhmodel/boundary_functions.hpp"
#include "sinhmodel/model_core.hpp"

namespace sinhmodel {

struct Support {
    double a = 0.0, b = 0.0;        // N = infinity endpoints
    double a_N = 0.0, b_N = 0.0;    // finite-N endpoints
    // First corrections from linearising the truncated system (what the solver converges to)
    double a_N1 = 0.0, b_N1 = 0.0;
    // First corrections in the alternative closed form L V''(a)/V''(b), -L V''(b)/V''(a); reported only
    double a_N1_alternative = 0.0, b_N1_alternative = 0.0;
    int order = 0;
    double N = 0.0;  // 0 for the N = infinity support
    int iterations = 0;
    double residual = 0.0;
};

// V'(b) = pi beta s and V'(a) = -pi beta s. Throws NumericalFailure naming the side without a root.
std::pair<double, double> endpoints_infinite(const Potential& V, const ModelParams& p, double window = 1e6);

// V''(xi)/(2 pi beta s) on [a, b], 0 outside.
double density_infinite(const Potential& V, const ModelParams& p, double a, double b, double xi);

// Limit of ln Z_N / N^{2+alpha}, closed form.
double free_energy_leading(const Potential& V, const ModelParams& p);
// -E_inf[mu_eq] by direct double quadrature of the energy functional.
double free_energy_double_quadrature(const Potential& V, const ModelParams& p, double rel_tol = 1e-12);

struct BabyModelResult {
    double q = 2.0, c = 1.0;
    double a = 0.0, b = 0.0;
    std::function<double(double)> density;
    double mass = 0.0;            // quadrature of the density
    double limit_closed = 0.0;    // c (q-1)^2 b^q / (2q-1), the value implied by the density
    double limit_alternative = 0.0;   // c^{1/q} (pi beta s / q)^{(q+1)/q} (2q^2-9q+6)/(2(2q-1))
    double oracle = 0.0;          // -E_ply[mu_eq] by double quadrature at rel. tolerance 1e-10
    double oracle_loose = 0.0;    // same at 1e-8
};

// Polynomial-growth model W ~ c |xi|^q. Throws std::invalid_argument unless q > 1 and c > 0.
BabyModelResult baby_model(double q, double c, const ModelParams& p);

// Left-hand sides of the truncated endpoint system at order k (p = 0..k):
// first = constraint functional of V' (target 0), second = mass functional (target 1).
std::pair<double, double> endpoint_equations(const Potential& V, const BoundaryFunctions& bf, double N, int k,
                                             double a, double b);

// Newton on the truncated system from the N = infinity seed; k in 1..6.
Support endpoints_N(const Potential& V, const ModelParams& p, const BoundaryFunctions& bf, double N, int k);

// (b_{N;1}, a_{N;1}) by Richardson extrapolation of (x_N - x) N^alpha over two values of N.
std::pair<double, double> first_correction_richardson(const Potential& V, const ModelParams& p,
                                                      const BoundaryFunctions& bf, int k,
                                                      double N1 = 1099511627776.0,           // 2^40
                                                      double N2 = 1152921504606846976.0);    // 2^60

struct EquilibriumDensity {
    Support support;
    std::function<double(double)> evaluator;
    std::optional<double> N;  // empty for the N = infinity density
    double operator()(double xi) const { return evaluator(xi); }
    double mass(double rel_tol = 1e-12) const;
};

EquilibriumDensity equilibrium_density_infinite(const Potential& V, const ModelParams& p);

// V''(xi)/(2 pi beta s) times a_0(N^alpha (b_N - xi)) a_0(N^alpha (xi - a_N))/u_1^2: the edge law
// V''(x_N) a_0(N^alpha |x_N - xi|) near each endpoint and the bulk law away from both.
EquilibriumDensity density_N(const Potential& V, const ModelParams& p, const BoundaryFunctions& bf,
                             const Support& sup);

struct EffectivePotentialReport {
    std::vector<double> xi;
    std::vector<double> value;
    double C_eq = 0.0;
    double at_midpoint = 0.0;
    double min_outside = 0.0;  // min of value over grid points outside [a_N, b_N]
};

// V(xi) - 2 int s_N(xi - eta) rho_N(eta) deta - C_eq, with C_eq fixed at the support midpoint.
EffectivePotentialReport effective_potential_check(const Potential& V, const ModelParams& p,
                                                   const EquilibriumDensity& rho, const std::vector<double>& grid);

}  // namespace sinhmodel

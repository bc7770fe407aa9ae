#pragma once

#include <optional>

#include "sinhmodel/boundary_functions.hpp"
#include "sinhmodel/equilibrium.hpp"
#include "sinhmodel/model_core.hpp"
#include "sinhmodel/report.hpp"

namespace sinhmodel {

// (V' - W')/(V'' - W'') ln(V''/W''); series in (V''-W'')/W'' below 1e-6. Domain error unless V'', W'' > 0.
double leo(const Potential& V, const Potential& W, double xi);
double leo_prime(const Potential& V, const Potential& W, double xi);

// Coefficient of N^{2+alpha-p alpha} (up to sign) in ln(Z_N[V]/Z_N[W]) with W the Gaussian matched to sup.
double capricornus(int p, const Potential& V, const Potential& W, const BoundaryFunctions& bf, const Support& sup);

// (1/4 pi s) int_{a_N}^{b_N} (V - W)(V + W)'' : the leading coefficient obtained by interpolating V_t = W + t(V - W)
// at fixed support. Diagnostic alternative to capricornus(0, ...), which uses (V - W)'' in place of (V + W)''.
double capricornus0_interpolation(const Potential& V, const Potential& W, const BoundaryFunctions& bf,
                                  const Support& sup);

struct MainExpansion {
    ExpansionReport report;
    Support support;
    double g_N = 0.0, t_N = 0.0;  // matched Gaussian W(x) = g_N x^2 + t_N x
    bool matched = false;          // V coincided with its matched Gaussian
    std::optional<double> logZ_gaussian;  // exact ln Z_N[W], when beta = 1 and N is an integer <= 1e7
    std::optional<double> logZ_absolute;  // report total + logZ_gaussian
};

// ln(Z_N[V]/Z_N[W_GN]) at beta = 1 with floor(2/alpha)+1 capricornus terms. The support is solved at `order`.
MainExpansion main_expansion(const Potential& V, const ModelParams& p, const BoundaryFunctions& bf, double N,
                             int order = 3);
// Same with a given support and comparison potential W.
MainExpansion main_expansion_with(const Potential& V, const Potential& W, const BoundaryFunctions& bf,
                                  const Support& sup);

// sum_{p=0}^{k} i^p daleth_p N^{-p alpha} (H^(p)(a) + (-1)^p H^(p)(b)).
double constraint_XN_expansion(const Potential& H, const BoundaryFunctions& bf, double a, double b, double N, int k);

// u_1 int G H' + sum_{p=1}^{k} N^{-p alpha} {u_{p+1} int G H^(p+1) + boundary sums with daleth_{s,l}}.
double single_integral_Is_expansion(const Potential& G, const Potential& H, const BoundaryFunctions& bf, double a,
                                    double b, double N, int k);

// -2 gimel_0 N^alpha [H'/V'']_a^b + aleph_0 [(H'/V'')'(b) + (H'/V'')'(a)].
double double_integral_Id_leading(const Potential& H, const Potential& V, const BoundaryFunctions& bf, double a,
                                  double b, double N);

}  // namespace sinhmodel

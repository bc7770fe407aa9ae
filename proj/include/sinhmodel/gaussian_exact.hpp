#pragma once

#include <utility>

#include "sinhmodel/model_core.hpp"
#include "sinhmodel/report.hpp"

namespace sinhmodel {

// V_G(x) = g x^2 + t x at a given N.
struct GaussianSpec {
    double g = 1.0;
    double t = 0.0;
    ModelParams params{};
    double N = 1.0;

    // tau_N = 2 pi^2 w1 w2 N^alpha / (g N)
    double tau() const;
};

// Closed form of ln Z_N[V_G] at beta = 1. Throws std::invalid_argument for beta != 1, g <= 0 or non-integer N.
double gaussian_logZ_exact(const GaussianSpec& spec);

// Large-N expansion of the same quantity up to o(1). The listed closed-form terms omit the N^alpha
// contribution of the Mellin pole at s = -1; it is added as a separate labelled term unless disabled.
ExpansionReport gaussian_logZ_asymptotic(const GaussianSpec& spec, bool include_pole_correction = true);

// exact - asymptotic, with the common leading terms cancelled analytically and the rest summed in
// extended precision; subtracting the two totals directly loses ~1e-2 at N = 1e6.
double gaussian_asymptotic_residual(const GaussianSpec& spec, bool include_pole_correction = true);

struct MellinResult {
    double direct = 0.0;
    double asymptotic = 0.0;
};

// -sum_l l^r ln(1 - a e^{-tau l}) and its small-tau expansion; r in {0, 1}, a in (0, 1].
MellinResult mellin_M_log(int r, double a, double tau);

// Gaussian sharing the support [a_N, b_N]: g_N = pi beta s/(b_N - a_N + 2 L/N^alpha), t_N = -(a_N + b_N) g_N.
std::pair<double, double> matched_gaussian(double a_N, double b_N, double N, const ModelParams& p);
Potential W_GN(double a_N, double b_N, double N, const ModelParams& p);

}  // namespace sinhmodel

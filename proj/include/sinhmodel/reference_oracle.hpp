#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sinhmodel/model_core.hpp"
#include "sinhmodel/quadrature.hpp"

namespace sinhmodel {

enum class OracleMethod { quadrature, mc };

struct OracleResult {
    double logZ = 0.0;  // ln Z_N[V] (quadrature) or ln(Z_N[V1]/Z_N[V0]) (mc)
    double error_estimate = 0.0;
    OracleMethod method = OracleMethod::quadrature;
    double box_lo = 0.0, box_hi = 0.0;  // quadrature box
    long evaluations = 0;
    // mc: per-node estimates of -N^{1+alpha} <sum_a (V1 - V0)(lambda_a)>, their stderrs and acceptance rates
    std::vector<double> t_nodes, node_values, node_stderr, acceptance;
    long samples = 0;
};

// Log of the integrand of Z_N: beta sum_{a<b} ln|sinh sinh| - N^{1+alpha} sum_a V(lambda_a).
double log_integrand(const Potential& V, const ModelParams& p, int N, const double* lambda);

struct QuadOracleOptions {
    double rel_tol = 1e-10;
    double half_width = 0.0;  // 0 selects (endpoint spread) + 10/sqrt(N^{1+alpha} min V'')
    double center = 0.0;      // used with an explicit half_width
};

// Nested adaptive quadrature of Z_N[V] over a box, N <= 4. Throws NumericalFailure when the integrand on the
// box boundary exceeds 1e-16 of its peak.
OracleResult logZ_quadrature(const Potential& V, const ModelParams& p, int N, QuadOracleOptions opt = {});

struct MCOptions {
    long samples = 20000;  // sweeps per chain and t-node after burn-in
    int chains = 4;
    int t_nodes = 8;
    std::uint64_t seed = 12345;
    int bootstrap = 200;
    int threads = 0;  // 0: SINHMODEL_THREADS, else hardware concurrency
};

// ln(Z_N[V1]/Z_N[V0]) by thermodynamic integration along V_t = (1-t) V0 + t V1 with Gauss-Legendre nodes in t
// and random-walk Metropolis sampling at each node. N <= 16.
OracleResult logZ_ratio_mc(const Potential& V1, const Potential& V0, const ModelParams& p, int N, MCOptions opt = {});

// Thread cap from SINHMODEL_THREADS, falling back to hardware concurrency; always >= 1.
int thread_cap();

}  // namespace sinhmodel

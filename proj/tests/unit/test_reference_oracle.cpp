#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "sinhmodel/gaussian_exact.hpp"
#include "sinhmodel/reference_oracle.hpp"

using namespace sinhmodel;

TEST_CASE("quadrature oracle reproduces the exact Gaussian") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    for (int N : {1, 2}) {
        const auto r = logZ_quadrature(Potential::quadratic(1.0, 0.3), p, N);
        CHECK(r.logZ == doctest::Approx(gaussian_logZ_exact(GaussianSpec{1.0, 0.3, p, double(N)})).epsilon(1e-10));
    }
    CHECK_THROWS_AS(logZ_quadrature(Potential::quadratic(1.0, 0.0), p, 5), std::invalid_argument);
}

TEST_CASE("quadrature oracle refuses a box that cuts the integrand") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    QuadOracleOptions opt;
    opt.half_width = 0.5;
    CHECK_THROWS_AS(logZ_quadrature(Potential::quadratic(1.0, 0.0), p, 2, opt), NumericalFailure);
}

TEST_CASE("MC ratio of a potential with itself is zero, and results are seed-deterministic") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    const Potential V = Potential::quadratic(1.0, 0.0);
    MCOptions opt;
    opt.samples = 500;
    opt.t_nodes = 2;
    opt.chains = 2;
    const auto r = logZ_ratio_mc(V, V, p, 4, opt);
    CHECK(r.logZ == 0.0);
    const Potential V1 = Potential::quadratic(1.2, 0.0);
    opt.threads = 1;
    const auto a = logZ_ratio_mc(V1, V, p, 4, opt);
    opt.threads = 2;
    const auto b = logZ_ratio_mc(V1, V, p, 4, opt);
    CHECK(a.logZ == b.logZ);
    CHECK(a.error_estimate == b.error_estimate);
}

TEST_CASE("MC matches the exact Gaussian ratio") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    const int N = 5;
    const double exact = gaussian_logZ_exact(GaussianSpec{1.3, 0.0, p, double(N)}) -
                         gaussian_logZ_exact(GaussianSpec{1.0, 0.0, p, double(N)});
    MCOptions opt;
    opt.samples = 10000;
    const auto r = logZ_ratio_mc(Potential::quadratic(1.3, 0.0), Potential::quadratic(1.0, 0.0), p, N, opt);
    CHECK(std::fabs(r.logZ - exact) < 4.0 * r.error_estimate + 1e-3);
}

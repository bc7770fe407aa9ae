#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sinhmodel/gaussian_exact.hpp"

using namespace sinhmodel;
using std::numbers::pi;

TEST_CASE("exact Gaussian at N = 1") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    // Z_1 = int e^{-(x^2 + t x)} dx
    const double t = 0.3;
    CHECK(gaussian_logZ_exact(GaussianSpec{1.0, t, p, 1.0}) ==
          doctest::Approx(0.5 * std::log(pi) + t * t / 4.0).epsilon(1e-14));
    CHECK_THROWS_AS(gaussian_logZ_exact(GaussianSpec{1.0, 0.0, ModelParams(1.0, 1.0, 2.0, 0.2), 3.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(gaussian_logZ_exact(GaussianSpec{1.0, 0.0, p, 2.5}), std::invalid_argument);
}

TEST_CASE("asymptotic residual shrinks like 1/(12N)") {
    const ModelParams p(1.0, 1.0, 1.0, 0.1);
    for (double N : {1e3, 1e4}) {
        const double r = gaussian_asymptotic_residual(GaussianSpec{1.0, 0.0, p, N});
        CHECK(r * N == doctest::Approx(1.0 / 12.0).epsilon(0.01));
    }
    // the report total agrees with the extended-precision residual at moderate N
    const GaussianSpec spec{1.3, 0.2, ModelParams(0.8, 1.1, 1.0, 0.3), 200.0};
    const double diff = gaussian_logZ_exact(spec) - gaussian_logZ_asymptotic(spec).total();
    CHECK(diff == doctest::Approx(gaussian_asymptotic_residual(spec)).epsilon(1e-6));
}

TEST_CASE("Mellin asymptotics") {
    for (auto [r, a] : {std::pair{0, 1.0}, std::pair{1, 1.0}, std::pair{0, 0.5}, std::pair{1, 0.5}}) {
        const auto m = mellin_M_log(r, a, 1e-3);
        CHECK(std::fabs(m.direct - m.asymptotic) < 1e-3);
    }
}

TEST_CASE("matched Gaussian") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    auto [g, t] = matched_gaussian(-1.0, 2.0, 1e4, p);
    CHECK(t == doctest::Approx(-g).epsilon(1e-15));
    CHECK(g == doctest::Approx(2.0 * pi / (3.0 + 2.0 * p.log_constant() * std::pow(1e4, -0.2))).epsilon(1e-15));
    CHECK_THROWS(matched_gaussian(1.0, -1.0, 10.0, p));
}

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sinhmodel/model_core.hpp"

using namespace sinhmodel;
using std::numbers::pi;

TEST_CASE("kernel S is odd and tends to pi beta s") {
    const ModelParams p(1.0, 1.0, 1.0, 0.1);
    for (double x : {0.1, 1.0, 10.0}) CHECK(kernel_S(p, -x) == -kernel_S(p, x));
    CHECK(kernel_S(p, 1.0) == doctest::Approx(2.0 * pi / std::tanh(pi)).epsilon(1e-14));
    CHECK(kernel_S(p, 60.0) == doctest::Approx(2.0 * pi).epsilon(1e-14));
}

TEST_CASE("s_N is even, matches its large-x asymptote and differentiates to S/2") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    const double N = 100.0, na = std::pow(N, 0.2);
    CHECK(kernel_sN(p, N, 0.3) == doctest::Approx(kernel_sN(p, N, -0.3)).epsilon(1e-15));
    const double x = 50.0 / na;
    CHECK(kernel_sN(p, N, x) == doctest::Approx((2.0 * pi * x - 2.0 * std::log(2.0) / na) / 2.0).epsilon(1e-12));
    const double h = 1e-5, y = 0.7;
    const double fd = (kernel_sN(p, N, y + h) - kernel_sN(p, N, y - h)) / (2.0 * h);
    CHECK(std::fabs(fd - 0.5 * kernel_S(p, na * y)) < 1e-6);
    CHECK_THROWS(kernel_sN(p, N, 0.0));
}

TEST_CASE("potential validation flags convexity") {
    auto q = potential_validate(Potential::quadratic(1.0, 0.0), -10.0, 10.0);
    CHECK(q.convex);
    CHECK(q.min_second_derivative == doctest::Approx(2.0));
    CHECK(potential_validate(Potential::polynomial({0.0, 0.0, 0.5, 0.0, 0.25}), -5.0, 5.0).convex);
    CHECK_FALSE(potential_validate(Potential::polynomial({0.0, 0.0, 0.5, 0.0, -0.25}), -5.0, 5.0).convex);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ModelParams(-1.0, 1.0, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(1.0, 1.0, 1.0, 1.5), std::invalid_argument);
    const ModelParams p(1.0, 1.0, 1.0, 0.1);
    CHECK(p.u1() == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-15));
    CHECK(p.log_constant() == doctest::Approx(-std::log(2.0) / pi).epsilon(1e-14));
}

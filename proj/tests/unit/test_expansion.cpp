#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "sinhmodel/expansion.hpp"
#include "sinhmodel/gaussian_exact.hpp"

using namespace sinhmodel;
using std::numbers::pi;

TEST_CASE("leo and its derivative") {
    const Potential V = Potential::polynomial({0.0, 0.0, 1.0, 0.0, 0.05});
    const Potential W = Potential::quadratic(1.3, 0.0);
    const double h = 1e-5, x = 0.8;
    CHECK(leo_prime(V, W, x) == doctest::Approx((leo(V, W, x + h) - leo(V, W, x - h)) / (2 * h)).epsilon(1e-7));
    // V'' = W'' at x = sqrt(0.6/0.6) = 1: the series branch must join smoothly
    CHECK(leo(V, W, 1.0) == doctest::Approx(0.5 * (leo(V, W, 1.0 - 1e-4) + leo(V, W, 1.0 + 1e-4))).epsilon(1e-6));
    CHECK(leo(W, W, 0.3) == 0.0);
}

TEST_CASE("matched Gaussian expansion is identically zero") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    const BoundaryFunctions bf(p);
    const auto m = main_expansion(Potential::quadratic(1.0, 0.3), p, bf, 1000.0, 3);
    CHECK(m.matched);
    CHECK(m.report.total() == 0.0);
    REQUIRE(m.logZ_absolute.has_value());
    CHECK(*m.logZ_absolute == doctest::Approx(gaussian_logZ_exact(GaussianSpec{1.0, 0.3, p, 1000.0})));
}

TEST_CASE("capricornus_1 pairs symmetrically for an even quartic") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    const BoundaryFunctions bf(p);
    const Potential V = Potential::polynomial({0.0, 0.0, 1.0, 0.0, 0.05});
    const auto sup = endpoints_N(V, p, bf, 100.0, 3);
    const Potential W = W_GN(sup.a_N, sup.b_N, 100.0, p);
    CHECK(sup.a_N == doctest::Approx(-sup.b_N).epsilon(1e-13));
    // the two boundary contributions of capricornus_1 are equal: a mirrored potential gives the same value
    const Potential Vm = Potential::custom(8, [&](int k, double x) { return (k % 2 ? -1.0 : 1.0) * V.deriv(k, -x); });
    CHECK(capricornus(1, Vm, W, bf, sup) == doctest::Approx(capricornus(1, V, W, bf, sup)).epsilon(1e-12));
}

TEST_CASE("constraint and single-integral expansions on a constant H") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    const BoundaryFunctions bf(p);
    const Potential one = Potential::polynomial({1.0, 0.0, 0.0});
    // only the p = 0 term survives: daleth_0 (1 + 1)
    CHECK(constraint_XN_expansion(one, bf, -1.0, 1.0, 100.0, 3) ==
          doctest::Approx(2.0 * bf.daleth_p_rotated(0)).epsilon(1e-14));
    const Potential x = Potential::polynomial({0.0, 1.0, 0.0});
    // G = 1, H = x: u_1 (b - a) plus eps daleth_{0,0} (H'(b) + H'(a)); the p = 2 terms vanish
    const double eps = std::pow(100.0, -0.2);
    CHECK(single_integral_Is_expansion(one, x, bf, -1.0, 1.0, 100.0, 2) ==
          doctest::Approx(2.0 * bf.u(1) + 2.0 * eps * bf.daleth_sl(0, 0)).epsilon(1e-12));
}

TEST_CASE("interpolation form of capricornus_0 is shift covariant") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    const BoundaryFunctions bf(p);
    const Potential V = Potential::polynomial({0.0, 0.0, 1.0, 0.0, 0.05});
    const Potential Vc = Potential::polynomial({0.7, 0.0, 1.0, 0.0, 0.05});
    const auto sup = endpoints_N(V, p, bf, 1e3, 3);
    const Potential W = W_GN(sup.a_N, sup.b_N, 1e3, p);
    const double d = capricornus0_interpolation(Vc, W, bf, sup) - capricornus0_interpolation(V, W, bf, sup);
    // 0.7 (V' + W')|_a^b / (4 pi s)
    const double expect = 0.7 * (V.deriv(1, sup.b_N) + W.deriv(1, sup.b_N) - V.deriv(1, sup.a_N) -
                                 W.deriv(1, sup.a_N)) /
                          (4.0 * pi * p.s());
    CHECK(d == doctest::Approx(expect).epsilon(1e-10));
}

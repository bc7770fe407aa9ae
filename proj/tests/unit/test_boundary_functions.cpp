#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sinhmodel/boundary_functions.hpp"

using namespace sinhmodel;
using std::numbers::pi;

namespace {
const BoundaryFunctions& unit_bf() {
    static const BoundaryFunctions bf(ModelParams(1.0, 1.0, 1.0, 0.1));
    return bf;
}
}  // namespace

TEST_CASE("rho_0 and J closed forms against their contour definitions") {
    const auto& bf = unit_bf();
    CHECK(std::fabs(bf.rho0(1.0) - bf.rho0_contour(1.0)) < 1e-8);
    CHECK(std::fabs(bf.J(1.0) - bf.J_contour(1.0)) < 1e-8);
    CHECK(bf.J(-0.4) == -bf.J(0.4));
    CHECK(std::fabs(bf.rho0(40.0)) < 1e-12);
}

TEST_CASE("J has a 1/(pi x) pole at the origin") {
    const auto& bf = unit_bf();
    const double f4 = 1e-4 * bf.J(1e-4), f5 = 1e-5 * bf.J(1e-5);
    CHECK(f5 == doctest::Approx(1.0 / pi).epsilon(1e-3));
    CHECK(std::fabs(f5 - 1.0 / pi) < std::fabs(f4 - 1.0 / pi));
}

TEST_CASE("varpi moments") {
    const auto& bf = unit_bf();
    // J odd: y J is even, so the half-line moment is half of 2 pi beta u_1
    CHECK(bf.varpi(1, 0.0) == doctest::Approx(bf.u(1) / 2.0).epsilon(1e-8));
    CHECK(bf.varpi(3, 0.0) == doctest::Approx(0.5 * bf.J_moment(3) / (2.0 * pi)).epsilon(1e-8));
    CHECK(std::fabs(bf.varpi(0, 30.0)) < 1e-12);
}

TEST_CASE("b_l: primary route vs its definition, decay") {
    const auto& bf = unit_bf();
    for (int l : {0, 1, 2})
        for (double x : {0.3, 1.0, 3.0}) CHECK(std::fabs(bf.b_func(l, x) - bf.b_func_definition(l, x)) < 1e-8);
    CHECK(std::fabs(bf.b_func(0, 30.0)) < 1e-12);
}

TEST_CASE("a_0: limits and positivity") {
    const auto& bf = unit_bf();
    CHECK(bf.a0_series(1e-5) / std::sqrt(1e-5) == doctest::Approx(1.0 / (pi * std::sqrt(2.0 * pi))).epsilon(1e-4));
    CHECK(bf.a0_series(20.0) == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-12));
    for (double x : {0.01, 0.5, 2.0, 10.0}) {
        CHECK(bf.a0_series(x) > 0.0);
        CHECK(std::fabs(bf.a0_series(x) - bf.a0_integral(x)) < 1e-8);
    }
    const double h = 1e-5;
    CHECK(bf.a0_prime(1.0) == doctest::Approx((bf.a0_series(1.0 + h) - bf.a0_series(1.0 - h)) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("daleth constants") {
    const auto& bf = unit_bf();
    // both independent routes give u_1 L, see the decisions ledger for the factor-2 comparison
    CHECK(bf.daleth_sl(0, 0) == doctest::Approx(bf.u(1) * bf.params().log_constant()).epsilon(1e-9));
    const auto r10 = bf.daleth_sl_routes(1, 0);
    CHECK(std::fabs(r10.moment - r10.explicit_) < 1e-6);
    for (int p = 0; p <= 2; ++p) {
        const auto a = bf.daleth_p_routes(p, 0.4 * bf.params().varsigma());
        const auto b = bf.daleth_p_routes(p, 0.7 * bf.params().varsigma());
        CHECK(std::abs(a.upper - b.upper) < 1e-9);
        CHECK(std::fabs(bf.daleth_p_rotated(p) - (std::pow(std::complex<double>(0, 1), p) * a.residue).real()) <
              1e-12);
    }
}

TEST_CASE("gimel_0 and aleph_0") {
    const auto& bf = unit_bf();
    CHECK(bf.gimel(0) == doctest::Approx(bf.gimel0_half_line()).epsilon(1e-8));
    const auto al = bf.aleph0();
    CHECK(std::isfinite(al.value));
    CHECK(al.value == doctest::Approx(al.term1 + al.term2).epsilon(1e-14));
}

TEST_CASE("frak c and r") {
    const auto& bf = unit_bf();
    for (double x : {0.5, 2.0, 6.0}) CHECK(std::fabs(bf.frak_c(x) - bf.frak_c_direct(x)) < 1e-9);
    const double s = bf.params().s();
    for (double x = 0.25; x <= 50.0; x *= 1.5) CHECK(std::fabs(1.0 + 2.0 * pi * s * bf.c_p(0, x)) > 1e-3);
    for (double x : {0.5, 3.0}) CHECK(std::fabs(bf.c_p_complex(1, x).imag()) < 1e-9);
}

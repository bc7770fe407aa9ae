#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "sinhmodel/quadrature.hpp"
#include "sinhmodel/special.hpp"

using namespace sinhmodel;
using std::numbers::pi;
using cplx = std::complex<double>;

TEST_CASE("real-line quadrature") {
    CHECK(integrate_interval([](double x) { return x; }, 0.0, 1.0).value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    auto r = integrate_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {}, Singularity::left);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("contour quadrature and Taylor coefficients") {
    auto res = integrate_contour([](cplx z) { return 1.0 / z; }, make_circle(0.0, 0.5));
    CHECK(std::abs(res - cplx(0.0, 2.0 * pi)) < 1e-10);
    auto e = taylor_coeffs([](cplx z) { return std::exp(z); }, 0.0, 1.0, 10);
    double f = 1.0;
    for (int k = 0; k <= 10; ++k) {
        if (k > 0) f *= k;
        CHECK(std::abs(e.coeffs[k] - 1.0 / f) < 1e-14);
    }
    auto g = taylor_coeffs([](cplx z) { return 1.0 / (1.0 - z); }, 0.0, 0.5, 12, 128);
    for (const auto& c : g.coeffs) CHECK(std::abs(c - 1.0) < 1e-12);
}

TEST_CASE("two-dimensional quadrature") {
    const double inf = INFINITY;
    CHECK(integrate_2d([](double x, double y) { return std::exp(-x - y); }, {0.0, inf}, {0.0, inf}).value ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::fabs(integrate_2d([](double x, double y) { return std::exp(-x - y) * (x - y); }, {0.0, inf},
                                 {0.0, inf})
                        .value) < 1e-9);
    CHECK(integrate_2d([](double u, double v) { return std::exp(-std::fabs(u) - v); }, {-inf, inf}, {0.0, inf})
              .value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("complex log-gamma") {
    CHECK(std::abs(log_gamma_complex(1.0)) < 1e-14);
    CHECK(log_gamma_complex(0.5).real() == doctest::Approx(0.5 * std::log(pi)).epsilon(1e-14));
    CHECK(std::exp(log_gamma_complex(cplx(0.0, 1.0)).real()) ==
          doctest::Approx(std::sqrt(pi / std::sinh(pi))).epsilon(1e-13));
}

TEST_CASE("Chebyshev table reproduces a smooth function and its integral") {
    ChebyshevTable t([](double x) { return std::sin(x); }, geometric_breaks(0.0, 10.0, 0.5, 1.3), 16);
    CHECK(std::fabs(t(3.3) - std::sin(3.3)) < 1e-13);
    CHECK(std::fabs(t.integral_to(10.0) - (1.0 - std::cos(10.0))) < 1e-12);
}

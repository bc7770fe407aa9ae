#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "sinhmodel/wiener_hopf.hpp"

using namespace sinhmodel;
using cplx = std::complex<double>;

TEST_CASE("R is odd, tends to 1 and behaves as s/lambda at 0") {
    const WienerHopf wh(ModelParams(0.7, 1.3, 1.0, 0.1));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int i = 0; i < 20; ++i) {
        const cplx l(U(rng), 0.3 * U(rng));
        CHECK(std::abs(wh.R(-l) + wh.R(l)) < 1e-13 * std::abs(wh.R(l)));
    }
    CHECK(std::abs(wh.R(50.0) - 1.0) < 1e-12);
    CHECK(std::abs(1e-4 * wh.R(1e-4) - 2.0) < 1e-7);
}

TEST_CASE("factor identities at fixed points") {
    const WienerHopf wh(ModelParams(1.0, 1.0, 1.0, 0.1));
    CHECK(std::abs(wh.R_down(0.0) - cplx(0.0, -std::sqrt(2.0))) < 1e-14);
    for (cplx l : {cplx(1.0, -0.5), cplx(3.0, -0.2)}) CHECK(std::abs(wh.R_up(-l) - wh.R_down(l) / l) < 1e-12);
    const cplx l(0.7, 0.1);
    CHECK(std::abs(wh.R_up(l) * wh.R_down(l) / wh.R(l) - 1.0) < 1e-12);
}

TEST_CASE("u_l from 1/R and from the factor series agree") {
    const WienerHopf wh(ModelParams(0.7, 1.3, 1.0, 0.1));
    const auto a = wh.u_coeffs(8), b = wh.u_coeffs_from_factors(8);
    for (int l = 1; l <= 8; ++l) CHECK(std::fabs(a[l] - b[l]) < 1e-11 * (1.0 + std::fabs(a[l])));
    CHECK(a[1] == doctest::Approx(1.0 / (2.0 * M_PI * 2.0)).epsilon(1e-13));
    CHECK(std::fabs(a[2]) < 1e-12);
}

TEST_CASE("u_3 against finite differences of 1/R on the real axis") {
    const ModelParams p(1.0, 1.0, 1.0, 0.1);
    const WienerHopf wh(p);
    // u_3 = (i^3 / (2 i pi 3!)) (1/R)'''(0) = -(1/R)'''(0)/(12 pi)
    auto f = [&](double x) { return wh.invR(x).real(); };
    auto d3 = [&](double h) { return (f(2 * h) - 2 * f(h) + 2 * f(-h) - f(-2 * h)) / (2 * h * h * h); };
    const double rich = (4.0 * d3(5e-3) - d3(1e-2)) / 3.0;
    CHECK(wh.u_coeffs(3)[3] == doctest::Approx(-rich / (12.0 * M_PI)).epsilon(1e-6));
}

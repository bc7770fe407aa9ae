#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sinhmodel/equilibrium.hpp"

using namespace sinhmodel;
using std::numbers::pi;

TEST_CASE("N = infinity endpoints") {
    const ModelParams p(1.0, 1.0, 1.0, 0.1);
    auto [a, b] = endpoints_infinite(Potential::quadratic(1.0, 0.0), p);
    CHECK(a == doctest::Approx(-pi).epsilon(1e-14));
    CHECK(b == doctest::Approx(pi).epsilon(1e-14));
    const Potential V = Potential::polynomial({0.0, 0.0, 0.5, 0.0, 0.25});
    auto [a2, b2] = endpoints_infinite(V, p);
    CHECK(std::fabs(V.deriv(1, b2) - 2.0 * pi) < 1e-12);
    CHECK(a2 == doctest::Approx(-b2).epsilon(1e-14));
}

TEST_CASE("density and free energy") {
    const ModelParams p(1.0, 1.0, 1.0, 0.1);
    const auto rho = equilibrium_density_infinite(Potential::quadratic(1.0, 0.0), p);
    CHECK(rho(0.3) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-15));
    CHECK(rho(4.0) == 0.0);
    CHECK(std::fabs(rho.mass() - 1.0) < 1e-10);
    // closed form gives pi^2/3 for the unit Gaussian
    CHECK(free_energy_leading(Potential::quadratic(1.0, 0.0), p) == doctest::Approx(pi * pi / 3.0).epsilon(1e-13));
    const Potential V = Potential::polynomial({0.0, 0.0, 0.5, 0.0, 0.25});
    const Potential Vc = Potential::polynomial({0.7, 0.0, 0.5, 0.0, 0.25});
    CHECK(free_energy_leading(Vc, p) == doctest::Approx(free_energy_leading(V, p) - 0.7).epsilon(1e-13));
}

TEST_CASE("polynomial-growth model at q = 2") {
    const auto r = baby_model(2.0, 1.0, ModelParams(1.0, 1.0, 1.0, 0.1));
    CHECK(r.b == doctest::Approx(pi).epsilon(1e-14));
    CHECK(r.density(0.5) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-14));
    CHECK(std::fabs(r.mass - 1.0) < 1e-12);
    CHECK(std::fabs(r.oracle - r.limit_closed) < 1e-8);
    CHECK_THROWS_AS(baby_model(1.0, 1.0, ModelParams(1.0, 1.0, 1.0, 0.1)), std::invalid_argument);
}

TEST_CASE("finite-N endpoints") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    const BoundaryFunctions bf(p);
    const Potential V = Potential::quadratic(1.0, 0.0);
    const auto sup = endpoints_N(V, p, bf, 1e4, 3);
    CHECK(sup.b_N == doctest::Approx(-sup.a_N).epsilon(1e-13));
    const auto [c, m] = endpoint_equations(V, bf, 1e4, 3, sup.a_N, sup.b_N);
    CHECK(std::fabs(c) < 1e-12);
    CHECK(std::fabs(m - 1.0) < 1e-12);
    // the matched Gaussian of a Gaussian is itself
    const double eps = std::pow(1e4, -0.2);
    CHECK(pi * 2.0 / (sup.b_N - sup.a_N + 2.0 * p.log_constant() * eps) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(endpoints_N(V, p, bf, 1e4, 0), std::invalid_argument);
}

TEST_CASE("finite-N density has unit mass and an effective potential nonnegative off the support") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    const BoundaryFunctions bf(p);
    const Potential V = Potential::polynomial({0.0, 0.0, 1.0, 0.0, 0.05});
    const auto sup = endpoints_N(V, p, bf, 1e6, 3);
    const auto rho = density_N(V, p, bf, sup);
    CHECK(std::fabs(rho.mass(1e-10) - 1.0) < 1e-6);
    CHECK(rho(sup.b_N + 0.1) == 0.0);
    std::vector<double> grid;
    for (int i = 0; i <= 8; ++i) grid.push_back(sup.b_N + 0.05 + 0.2 * i);
    const auto eff = effective_potential_check(V, p, rho, grid);
    CHECK(eff.min_outside > 0.0);
}

TEST_CASE("finite-N density edge slope") {
    const ModelParams p(1.0, 1.0, 1.0, 0.2);
    const BoundaryFunctions bf(p);
    const Potential V = Potential::polynomial({0.0, 0.0, 1.0, 0.0, 0.05});
    const double N = 1e4;
    const auto sup = endpoints_N(V, p, bf, N, 3);
    const auto rho = density_N(V, p, bf, sup);
    const double s = 1e-9;
    const double expect = std::pow(N, 0.1) * V.deriv(2, sup.b_N) / (pi * std::sqrt(2.0 * pi));
    CHECK(rho(sup.b_N - s) / std::sqrt(s) == doctest::Approx(expect).epsilon(0.01));
}

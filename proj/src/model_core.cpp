#include "sinhmodel/model_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sinhmodel {

using std::numbers::pi;

ModelParams::ModelParams(double w1, double w2, double b, double a)
    : omega1(w1), omega2(w2), beta(b), alpha(a) {
    validate();
}

void ModelParams::validate() const {
    if (!(omega1 > 0.0) || !(omega2 > 0.0)) throw std::invalid_argument("omega1, omega2 must be positive");
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
}

double ModelParams::kappa0() const { return 2.0 * pi * omega1 * omega2 / s(); }

double ModelParams::log_constant() const {
    const double w12 = omega1 * omega2;
    return std::log(w12 / (omega1 * s())) / (2.0 * pi * omega1) +
           std::log(w12 / (omega2 * s())) / (2.0 * pi * omega2);
}

double ModelParams::u1() const { return 1.0 / (2.0 * pi * beta * s()); }

Potential::Potential(PotentialKind kind, int k_max, DerivFn deriv, std::vector<double> coeffs)
    : kind_(kind), k_max_(k_max), deriv_(std::move(deriv)), coeffs_(std::move(coeffs)) {
    if (k_max_ < 2) throw std::invalid_argument("potential needs at least two derivatives");
}

double Potential::deriv(int k, double x) const {
    if (k < 0 || k > k_max_) throw std::out_of_range("derivative order beyond the potential's k_max");
    return deriv_(k, x);
}

Potential Potential::quadratic(double g, double t) {
    auto d = [g, t](int k, double x) -> double {
        switch (k) {
            case 0: return g * x * x + t * x;
            case 1: return 2.0 * g * x + t;
            case 2: return 2.0 * g;
            default: return 0.0;
        }
    };
    return Potential(PotentialKind::quadratic, 64, d, {0.0, t, g});
}

Potential Potential::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    if (coeffs.size() > 9) throw std::invalid_argument("polynomial degree must be <= 8");
    auto c = coeffs;
    auto d = [c](int k, double x) -> double {
        const int n = static_cast<int>(c.size());
        if (k >= n) return 0.0;
        // Horner on the k-th derivative coefficients.
        double acc = 0.0;
        for (int j = n - 1; j >= k; --j) {
            double f = 1.0;
            for (int m = 0; m < k; ++m) f *= static_cast<double>(j - m);
            acc = acc * x + c[j] * f;
        }
        return acc;
    };
    return Potential(PotentialKind::even_polynomial, 64, d, coeffs);
}

Potential Potential::custom(int k_max, DerivFn deriv) {
    return Potential(PotentialKind::custom, k_max, std::move(deriv));
}

Potential Potential::combine(double a, const Potential& V, double b, const Potential& W, double c) {
    const int km = std::min(V.k_max(), W.k_max());
    auto d = [a, V, b, W, c](int k, double x) {
        return a * V.deriv(k, x) + b * W.deriv(k, x) + (k == 0 ? c : 0.0);
    };
    std::vector<double> co;
    const bool poly = (V.kind() != PotentialKind::custom) && (W.kind() != PotentialKind::custom);
    if (poly) {
        co.assign(std::max(V.coeffs().size(), W.coeffs().size()), 0.0);
        for (std::size_t i = 0; i < V.coeffs().size(); ++i) co[i] += a * V.coeffs()[i];
        for (std::size_t i = 0; i < W.coeffs().size(); ++i) co[i] += b * W.coeffs()[i];
        co[0] += c;
        return Potential::polynomial(co);
    }
    return Potential(PotentialKind::custom, km, d);
}

PotentialReport potential_validate(const Potential& V, double lo, double hi, int grid) {
    if (!(hi > lo)) throw std::invalid_argument("empty validation window");
    PotentialReport r;
    r.min_second_derivative = INFINITY;
    r.max_fd_mismatch = 0.0;
    const int kcheck = std::min(V.k_max(), 4);
    for (int i = 0; i < grid; ++i) {
        const double x = lo + (hi - lo) * i / (grid - 1);
        r.min_second_derivative = std::min(r.min_second_derivative, V.deriv(2, x));
        for (int k = 1; k <= kcheck; ++k) {
            const double h = 1e-4 * std::max(1.0, std::fabs(x));
            const double fd = (V.deriv(k - 1, x + h) - V.deriv(k - 1, x - h)) / (2.0 * h);
            const double ex = V.deriv(k, x);
            const double scale = std::max({1.0, std::fabs(ex), std::fabs(V.deriv(k - 1, x))});
            r.max_fd_mismatch = std::max(r.max_fd_mismatch, std::fabs(fd - ex) / scale);
            r.max_derivative_ratio =
                std::max(r.max_derivative_ratio, std::fabs(ex) / (1.0 + std::fabs(V.deriv(k - 1, x))));
        }
    }
    r.convex = r.min_second_derivative > 0.0;
    r.derivatives_consistent = r.max_fd_mismatch < 1e-6;
    auto growth = [&](double x) { return std::fabs(x) > 0 ? V(x) / std::pow(std::fabs(x), 1.1) : 0.0; };
    r.growth_left = growth(lo);
    r.growth_right = growth(hi);
    return r;
}

static void require_nonzero(double x) {
    if (x == 0.0) throw std::domain_error("kernel evaluated at its pole x = 0");
}

double kernel_S(const ModelParams& p, double x) {
    require_nonzero(x);
    double acc = 0.0;
    for (double w : {p.omega1, p.omega2}) acc += p.beta * pi * w / std::tanh(pi * w * x);
    return acc;
}

double kernel_S_prime(const ModelParams& p, double x) {
    require_nonzero(x);
    double acc = 0.0;
    for (double w : {p.omega1, p.omega2}) {
        const double z = pi * w * x;
        if (std::fabs(z) > 350.0) continue;
        const double sh = std::sinh(z);
        acc -= p.beta * pi * w * pi * w / (sh * sh);
    }
    return acc;
}

double kernel_S_second(const ModelParams& p, double x) {
    require_nonzero(x);
    double acc = 0.0;
    for (double w : {p.omega1, p.omega2}) {
        const double z = pi * w * x;
        if (std::fabs(z) > 350.0) continue;
        const double sh = std::sinh(z);
        acc += p.beta * pi * w * 2.0 * (pi * w) * (pi * w) * std::cosh(z) / (sh * sh * sh);
    }
    return acc;
}

double kernel_xS_prime(const ModelParams& p, double x) {
    double acc = 0.0;
    for (double w : {p.omega1, p.omega2}) {
        const double z = pi * w * x;
        double v;
        if (std::fabs(z) < 1e-2) {
            const double z2 = z * z;
            v = z * (2.0 / 3.0 - z2 * (4.0 / 45.0 - z2 * 4.0 / 315.0));
        } else if (std::fabs(z) > 350.0) {
            v = z > 0 ? 1.0 : -1.0;
        } else {
            const double sh = std::sinh(z);
            v = 1.0 / std::tanh(z) - z / (sh * sh);
        }
        acc += p.beta * pi * w * v;
    }
    return acc;
}

double log_abs_sinh(double y) {
    const double a = std::fabs(y);
    if (a < 1.0) return std::log(std::sinh(a));
    return a + std::log1p(-std::exp(-2.0 * a)) - std::numbers::ln2;
}

double kernel_sN(const ModelParams& p, double N, double x) {
    require_nonzero(x);
    if (!(N >= 1.0)) throw std::invalid_argument("N must be >= 1");
    const double na = std::pow(N, p.alpha);
    return p.beta / (2.0 * na) * (log_abs_sinh(pi * p.omega1 * na * x) + log_abs_sinh(pi * p.omega2 * na * x));
}

}  // namespace sinhmodel

#include "sinhmodel/gaussian_exact.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sinhmodel/special.hpp"

namespace sinhmodel {

using std::numbers::pi;

namespace {

using ld = long double;
constexpr ld kPiL = std::numbers::pi_v<long double>;
constexpr ld kZeta3L = 1.2020569031595942853997381615114499908L;

// Neumaier's variant of compensated summation.
template <class T>
struct CompensatedSum {
    T sum = 0, comp = 0;
    void add(T x) {
        const T t = sum + x;
        comp += (std::fabs(sum) >= std::fabs(x)) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    T value() const { return sum + comp; }
};

// ln(1 - a e^{-y}) for y > 0, accurate when a e^{-y} is close to 1 or to 0.
template <class T>
T log1m_aexp(T a, T y) {
    if (a == 1) return y < T(0.7) ? std::log(-std::expm1(-y)) : std::log1p(-std::exp(-y));
    return std::log1p(-a * std::exp(-y));
}

void check_exact_spec(const GaussianSpec& spec) {
    if (spec.params.beta != 1.0) throw std::invalid_argument("the exact Gaussian formula holds at beta = 1 only");
    if (!(spec.g > 0.0)) throw std::invalid_argument("Gaussian needs g > 0");
    const double N = spec.N;
    if (!(N >= 1.0) || N != std::floor(N)) throw std::invalid_argument("N must be a positive integer");
    if (N > 1e7) throw std::invalid_argument("exact product limited to N <= 1e7");
}

// sum_{j=1}^{N-1} (N-j) ln(1 - e^{-j tau}) in extended precision.
ld product_term(long n, ld tau) {
    CompensatedSum<ld> prod;
    for (long j = 1; j < n; ++j) prod.add(static_cast<ld>(n - j) * log1m_aexp<ld>(1, tau * j));
    return prod.value();
}

ld tau_long(const GaussianSpec& spec) {
    const ld N = spec.N;
    return 2 * kPiL * kPiL * ld(spec.params.omega1) * ld(spec.params.omega2) * std::pow(N, ld(spec.params.alpha)) /
           (ld(spec.g) * N);
}

}  // namespace

double GaussianSpec::tau() const {
    return 2.0 * pi * pi * params.omega1 * params.omega2 * std::pow(N, params.alpha) / (g * N);
}

double gaussian_logZ_exact(const GaussianSpec& spec) {
    check_exact_spec(spec);
    const ld N = spec.N, g = spec.g, t = spec.t, a = spec.params.alpha, s = spec.params.s();
    const ld na = std::pow(N, a);
    CompensatedSum<ld> acc;
    acc.add(std::lgamma(N + 1));
    acc.add(-N * (N - 1) * std::numbers::ln2_v<ld>);
    acc.add(N / 2 * std::log(kPiL / (g * N * na)));
    acc.add(N * N * na * t * t / (4 * g));
    acc.add(kPiL * kPiL * s * s * na * (N * N - 1) / (12 * g));
    acc.add(product_term(static_cast<long>(spec.N), tau_long(spec)));
    return static_cast<double>(acc.value());
}

double gaussian_asymptotic_residual(const GaussianSpec& spec, bool include_pole_correction) {
    check_exact_spec(spec);
    // The N^{2+alpha} terms agree exactly and -N(N-1) ln 2 + N^2 ln 2 = N ln 2, so both are dropped
    // before the remaining pieces are summed in extended precision.
    const ld N = spec.N, g = spec.g, a = spec.params.alpha, s = spec.params.s();
    const ld w = ld(spec.params.omega1) * ld(spec.params.omega2);
    const ld na = std::pow(N, a), lnN = std::log(N);
    const ld pi2 = kPiL * kPiL;
    CompensatedSum<ld> r;
    r.add(std::lgamma(N + 1));
    r.add(N * std::numbers::ln2_v<ld>);
    r.add(N / 2 * std::log(kPiL / (g * N * na)));
    r.add(-pi2 * s * s * na / (12 * g));
    r.add(product_term(static_cast<long>(spec.N), tau_long(spec)));
    // minus the listed terms below N^2
    r.add(N * N / na * g / (12 * w));
    r.add(-N * N / (na * na) * g * g * kZeta3L / (4 * pi2 * pi2 * w * w));
    r.add(-(1 - a) * N * lnN);
    r.add(-N * (std::numbers::ln2_v<ld> - 1 - std::log(w) / 2));
    r.add(na * pi2 * s * s / (12 * g));
    if (include_pole_correction) r.add(-na * pi2 * w / (12 * g));
    r.add(-lnN * (a + 5) / 12);
    r.add(-(std::log(128 * pi2 * pi2 * pi2 * pi2 * w / g) / 12 + ld(zeta_prime_minus1())));
    return static_cast<double>(r.value());
}

ExpansionReport gaussian_logZ_asymptotic(const GaussianSpec& spec, bool include_pole_correction) {
    if (!(spec.g > 0.0)) throw std::invalid_argument("Gaussian needs g > 0");
    const double g = spec.g, t = spec.t, a = spec.params.alpha, s = spec.params.s();
    const double w12 = spec.params.omega1 * spec.params.omega2;
    ExpansionReport r;
    r.N = spec.N;
    r.truncation_order = 0;
    r.add("N^{2+alpha} [t^2/4g + pi^2 s^2/12g]", 2.0 + a, t * t / (4.0 * g) + pi * pi * s * s / (12.0 * g));
    r.add("-N^2 ln 2", 2.0, -std::numbers::ln2);
    r.add("-N^{2-alpha} g/(12 w1 w2)", 2.0 - a, -g / (12.0 * w12));
    r.add("N^{2-2alpha} g^2 zeta(3)/(2 pi^2 w1 w2)^2", 2.0 - 2.0 * a,
          g * g * zeta(3.0) / std::pow(2.0 * pi * pi * w12, 2));
    r.add("(1-alpha) N ln N", 1.0, 1.0 - a, 1);
    r.add("N ln(2/(e sqrt(w1 w2)))", 1.0, std::log(2.0 / (std::numbers::e * std::sqrt(w12))));
    r.add("-N^alpha pi^2 s^2/12g", a, -pi * pi * s * s / (12.0 * g));
    // Pole of Gamma(s) zeta(s) zeta(s+1) at s = -1: -N ln M_0 carries N tau/24, of order N^alpha.
    if (include_pole_correction) r.add("N tau_N/24 = N^alpha pi^2 w1 w2/12g", a, pi * pi * w12 / (12.0 * g));
    r.add("ln N (alpha+5)/12", 0.0, (a + 5.0) / 12.0, 1);
    r.add("ln(128 pi^8 w1 w2/g)/12 + zeta'(-1)", 0.0,
          std::log(128.0 * std::pow(pi, 8) * w12 / g) / 12.0 + zeta_prime_minus1());
    return r;
}

MellinResult mellin_M_log(int r, double a, double tau) {
    if (r != 0 && r != 1) throw std::invalid_argument("mellin_M_log: r must be 0 or 1");
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("mellin_M_log: a must lie in (0, 1]");
    if (!(tau > 0.0)) throw std::invalid_argument("mellin_M_log: tau must be positive");
    MellinResult out;
    CompensatedSum<double> acc;
    const double q = std::exp(-tau);
    const double geo = -std::expm1(-tau);
    for (long l = 1;; ++l) {
        const double lr = r == 0 ? 1.0 : static_cast<double>(l);
        acc.add(-lr * log1m_aexp<double>(a, tau * l));
        // Remaining terms are bounded by (l+1)^r a q^{l+1}/(1-q) up to a factor close to 1.
        const double tail = (r == 0 ? 1.0 : static_cast<double>(l + 1)) * a * std::pow(q, l + 1) / geo;
        if (tail < 1e-14) break;
        if (l > 2000000000L) throw NumericalFailure("mellin_M_log: direct sum too long");
    }
    out.direct = acc.value();
    const double fact = 1.0;  // r! for r in {0, 1}
    const double zeta_mr = r == 0 ? -0.5 : -1.0 / 12.0;
    if (a < 1.0) {
        out.asymptotic = fact * polylog(2 + r, a) / std::pow(tau, 1 + r) - zeta_mr * std::log1p(-a);
    } else {
        const double zp = r == 0 ? zeta_prime_zero() : zeta_prime_minus1();
        out.asymptotic = fact * zeta(2.0 + r) / std::pow(tau, 1 + r) - zeta_mr * std::log(tau) + zp;
    }
    return out;
}

std::pair<double, double> matched_gaussian(double a_N, double b_N, double N, const ModelParams& p) {
    if (!(a_N < b_N)) throw std::invalid_argument("matched Gaussian needs a_N < b_N");
    const double den = b_N - a_N + 2.0 * p.log_constant() * std::pow(N, -p.alpha);
    if (!(den > 0.0)) throw NumericalFailure("matched Gaussian: non-positive denominator");
    const double g = pi * p.beta * p.s() / den;
    return {g, -(a_N + b_N) * g};
}

Potential W_GN(double a_N, double b_N, double N, const ModelParams& p) {
    auto [g, t] = matched_gaussian(a_N, b_N, N, p);
    return Potential::quadratic(g, t);
}

}  // namespace sinhmodel

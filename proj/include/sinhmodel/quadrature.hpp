#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <type_traits>
#include <vector>

#include "sinhmodel/model_core.hpp"

namespace sinhmodel {

using cplx = std::complex<double>;

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    double tail_tol = 1e-14;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    bool converged = false;
    long evaluations = 0;
};

// Declared integrable endpoint singularities; removed by a polynomial change of variables.
enum class Singularity { none, left, right, both };

namespace detail {

inline constexpr double gk21_x[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr double gk21_wk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208005330730, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double gk21_wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
struct Panel {
    double a, b;
    T value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk21(F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const T fc = f(c);
    T rk = fc * gk21_wk[10];
    T rg{};
    double resabs = std::abs(fc) * gk21_wk[10];
    T fv1[10], fv2[10];
    for (int j = 0; j < 10; ++j) {
        const double dx = h * gk21_x[j];
        fv1[j] = f(c - dx);
        fv2[j] = f(c + dx);
        const T sum = fv1[j] + fv2[j];
        rk += gk21_wk[j] * sum;
        resabs += gk21_wk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) rg += gk21_wg[j / 2] * sum;
    }
    const T mean = rk * 0.5;
    double resasc = gk21_wk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) resasc += gk21_wk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    resasc *= std::fabs(h);
    resabs *= std::fabs(h);
    double err = std::abs((rk - rg) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, rk * h, err};
}

}  // namespace detail

// Adaptive Gauss-Kronrod (10/21) on a finite interval.
template <class F>
auto integrate_interval(F f, double a, double b, const QuadratureSpec& spec = {},
                        Singularity sing = Singularity::none) {
    using T = std::decay_t<decltype(f(0.5 * (a + b)))>;
    QuadResult<T> out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    const double len = b - a;
    long nev = 0;
    auto g = [&](double u) -> T {
        ++nev;
        switch (sing) {
            case Singularity::left: return f(a + len * u * u) * (2.0 * len * u);
            case Singularity::right: return f(b - len * (1.0 - u) * (1.0 - u)) * (2.0 * len * (1.0 - u));
            case Singularity::both: return f(a + len * u * u * (3.0 - 2.0 * u)) * (6.0 * len * u * (1.0 - u));
            default: return f(u);
        }
    };
    const double lo = (sing == Singularity::none) ? a : 0.0;
    const double hi = (sing == Singularity::none) ? b : 1.0;
    std::priority_queue<detail::Panel<T>> heap;
    auto first = detail::gk21<T>(g, lo, hi);
    T total = first.value;
    double err = first.error;
    heap.push(first);
    int nsub = 1;
    while (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) && nsub < spec.max_subdivisions) {
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            heap.push(worst);
            break;
        }
        auto l = detail::gk21<T>(g, worst.a, mid);
        auto r = detail::gk21<T>(g, mid, worst.b);
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++nsub;
    }
    // Re-sum to limit accumulated cancellation in the running totals.
    T sum{};
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    out.value = sum;
    out.error = esum;
    out.converged = esum <= std::max(spec.abs_tol, spec.rel_tol * std::abs(sum)) * 1.0000001;
    out.evaluations = nev;
    return out;
}

// Integral over [a, +inf) through x = a + t/(1-t).
template <class F>
auto integrate_semi_infinite(F f, double a, const QuadratureSpec& spec = {}) {
    auto g = [&](double t) {
        const double om = 1.0 - t;
        return f(a + t / om) * (1.0 / (om * om));
    };
    return integrate_interval(g, 0.0, 1.0, spec);
}

// Integral over (-inf, +inf), split at `split`.
template <class F>
auto integrate_real_line(F f, const QuadratureSpec& spec = {}, double split = 0.0) {
    auto right = integrate_semi_infinite(f, split, spec);
    auto g = [&](double x) { return f(2.0 * split - x); };
    auto left = integrate_semi_infinite(g, split, spec);
    right.value += left.value;
    right.error += left.error;
    right.converged = right.converged && left.converged;
    right.evaluations += left.evaluations;
    return right;
}

// Returns value or throws NumericalFailure carrying the partial result.
template <class T>
T require_converged(const QuadResult<T>& r, const char* what) {
    if (!r.converged) throw NumericalFailure(std::string("quadrature did not converge: ") + what);
    return r.value;
}

struct ContourSegment {
    cplx start;          // start point, or the centre of an arc
    cplx dir;            // unit direction of the parametrisation start + t*dir
    double length;       // may be +inf; for arcs the angular extent
    double sign = 1.0;   // -1 when the path runs from the far end towards start
    double decay = 0.0;  // declared exponential decay rate along an infinite segment, 0 = algebraic
    double radius = 0.0; // > 0 marks an arc start + radius*exp(i t)

    cplx point(double t) const { return radius > 0.0 ? start + radius * std::polar(1.0, t) : start + t * dir; }
    cplx tangent(double t) const { return radius > 0.0 ? cplx(0.0, radius) * std::polar(1.0, t) : dir; }
};

struct Contour {
    std::vector<ContourSegment> segments;
};

// C_reg^(+): horizontal segment at Im = height, half-width T0, rays at 3pi/4 (incoming) and pi/4.
Contour make_creg_plus(double height, double half_width, double ray_decay = 0.0);
// C_reg^(-): mirror image below the real axis.
Contour make_creg_minus(double height, double half_width, double ray_decay = 0.0);
// Horizontal line R + i*shift, oriented left to right.
Contour make_horizontal_line(double shift, double decay = 0.0);
// Counterclockwise circle.
Contour make_circle(cplx center, double radius);

template <class F>
cplx integrate_contour(F f, const Contour& c, const QuadratureSpec& spec = {}) {
    cplx total = 0.0;
    for (const auto& s : c.segments) {
        auto g = [&](double t) -> cplx { return f(s.point(t)) * s.tangent(t); };
        QuadResult<cplx> r;
        if (std::isfinite(s.length)) {
            r = integrate_interval(g, 0.0, s.length, spec);
        } else if (s.decay > 0.0) {
            const double T = -std::log(spec.tail_tol) / s.decay;
            r = integrate_interval(g, 0.0, T, spec);
            const double tail = std::abs(g(T)) / s.decay;
            if (tail > std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value)) * 10.0)
                throw NumericalFailure("contour integrand does not decay at the declared rate");
        } else {
            r = integrate_semi_infinite(g, 0.0, spec);
        }
        if (!r.converged) throw NumericalFailure("contour quadrature did not converge");
        total += s.sign * r.value;
    }
    return total;
}

struct TaylorResult {
    std::vector<cplx> coeffs;
    bool aliasing_warning = false;
};

// Taylor coefficients of f at z0 by the trapezoid rule on |z - z0| = r with M points.
template <class F>
TaylorResult taylor_coeffs(F f, cplx z0, double r, int m, int M = 0) {
    if (M <= 0) M = std::max(4 * (m + 1), 64);
    std::vector<cplx> vals(M);
    for (int k = 0; k < M; ++k) vals[k] = f(z0 + r * std::polar(1.0, 2.0 * M_PI * k / M));
    const int top = std::max(m, M / 2);
    std::vector<cplx> scaled(top + 1);
    for (int n = 0; n <= top; ++n) {
        cplx acc = 0.0;
        for (int k = 0; k < M; ++k) acc += vals[k] * std::polar(1.0, -2.0 * M_PI * double(k) * n / M);
        scaled[n] = acc / double(M);
    }
    TaylorResult out;
    double peak = 0.0;
    for (const auto& v : scaled) peak = std::max(peak, std::abs(v));
    out.aliasing_warning = std::abs(scaled[top]) > 1e-12 * peak && peak > 0.0;
    out.coeffs.resize(m + 1);
    for (int n = 0; n <= m; ++n) out.coeffs[n] = scaled[n] / std::pow(r, n);
    return out;
}

struct Interval {
    double lo;
    double hi;  // may be +inf
};

// Tensor-product adaptive integral of f(x, y) over a product of intervals.
template <class F>
QuadResult<double> integrate_2d(F f, Interval X, Interval Y, const QuadratureSpec& spec = {}) {
    QuadratureSpec inner = spec;
    inner.rel_tol = spec.rel_tol * 0.1;
    inner.abs_tol = spec.abs_tol * 0.1;
    double inner_err = 0.0;
    bool ok = true;
    auto one = [&](double lo, double hi, auto&& g) {
        if (std::isinf(hi) && std::isinf(lo)) return integrate_real_line(g, inner);
        if (std::isinf(hi)) return integrate_semi_infinite(g, lo, inner);
        return integrate_interval(g, lo, hi, inner);
    };
    auto outer_f = [&](double x) {
        auto g = [&](double y) { return f(x, y); };
        auto r = one(Y.lo, Y.hi, g);
        inner_err = std::max(inner_err, r.error);
        ok = ok && r.converged;
        return r.value;
    };
    QuadResult<double> res;
    if (std::isinf(X.hi) && std::isinf(X.lo)) res = integrate_real_line(outer_f, spec);
    else if (std::isinf(X.hi)) res = integrate_semi_infinite(outer_f, X.lo, spec);
    else res = integrate_interval(outer_f, X.lo, X.hi, spec);
    res.converged = res.converged && ok;
    res.error += inner_err;
    return res;
}

// Piecewise Chebyshev interpolant on given breakpoints, n nodes per panel.
class ChebyshevTable {
public:
    ChebyshevTable() = default;
    ChebyshevTable(const std::function<double(double)>& f, std::vector<double> breaks, int n);
    double operator()(double x) const;
    double lo() const { return breaks_.front(); }
    double hi() const { return breaks_.back(); }
    bool empty() const { return breaks_.empty(); }
    // Antiderivative from lo().
    double integral_to(double x) const;

private:
    std::vector<double> breaks_;
    std::vector<std::vector<double>> coef_;
    std::vector<double> cum_;  // integral over panels before index k
    int n_ = 0;
    std::size_t panel(double x) const;
    double panel_integral(std::size_t k, double x) const;
};

// Geometric breakpoints lo, lo + h, lo + h(1+r), ... capped at hi.
std::vector<double> geometric_breaks(double lo, double hi, double first, double ratio);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

}  // namespace sinhmodel

#include "sinhmodel/quadrature.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <mutex>
#include <numbers>

namespace sinhmodel {

using std::numbers::pi;

Contour make_creg_plus(double height, double half_width, double ray_decay) {
    const cplx left(-half_width, height), right(half_width, height);
    Contour c;
    c.segments.push_back({left, std::polar(1.0, 0.75 * pi), INFINITY, -1.0, ray_decay});
    c.segments.push_back({left, 1.0, 2.0 * half_width, 1.0, 0.0});
    c.segments.push_back({right, std::polar(1.0, 0.25 * pi), INFINITY, 1.0, ray_decay});
    return c;
}

Contour make_creg_minus(double height, double half_width, double ray_decay) {
    const cplx left(-half_width, -height), right(half_width, -height);
    Contour c;
    c.segments.push_back({left, std::polar(1.0, -0.75 * pi), INFINITY, -1.0, ray_decay});
    c.segments.push_back({left, 1.0, 2.0 * half_width, 1.0, 0.0});
    c.segments.push_back({right, std::polar(1.0, -0.25 * pi), INFINITY, 1.0, ray_decay});
    return c;
}

Contour make_horizontal_line(double shift, double decay) {
    const cplx o(0.0, shift);
    Contour c;
    c.segments.push_back({o, -1.0, INFINITY, -1.0, decay});
    c.segments.push_back({o, 1.0, INFINITY, 1.0, decay});
    return c;
}

Contour make_circle(cplx center, double radius) {
    Contour c;
    ContourSegment s{center, 1.0, 2.0 * pi, 1.0, 0.0};
    s.radius = radius;
    c.segments.push_back(s);
    return c;
}

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        r.x[i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(r)).first->second;
}

}  // namespace sinhmodel

namespace sinhmodel {

ChebyshevTable::ChebyshevTable(const std::function<double(double)>& f, std::vector<double> breaks, int n)
    : breaks_(std::move(breaks)), n_(n) {
    if (breaks_.size() < 2 || n < 2) throw std::invalid_argument("ChebyshevTable: need >= 1 panel and >= 2 nodes");
    coef_.resize(breaks_.size() - 1);
    std::vector<double> vals(n);
    for (std::size_t k = 0; k + 1 < breaks_.size(); ++k) {
        const double a = breaks_[k], b = breaks_[k + 1];
        for (int j = 0; j < n; ++j) {
            const double t = std::cos(pi * (j + 0.5) / n);
            vals[j] = f(0.5 * (a + b) + 0.5 * (b - a) * t);
        }
        auto& c = coef_[k];
        c.assign(n, 0.0);
        for (int m = 0; m < n; ++m) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += vals[j] * std::cos(pi * m * (j + 0.5) / n);
            c[m] = acc * 2.0 / n;
        }
        c[0] *= 0.5;
    }
    cum_.assign(coef_.size() + 1, 0.0);
    for (std::size_t k = 0; k < coef_.size(); ++k) cum_[k + 1] = cum_[k] + panel_integral(k, breaks_[k + 1]);
}

std::size_t ChebyshevTable::panel(double x) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    std::size_t k = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return std::min(k, coef_.size() - 1);
}

double ChebyshevTable::operator()(double x) const {
    const std::size_t k = panel(x);
    const double a = breaks_[k], b = breaks_[k + 1];
    const double t = (2.0 * x - a - b) / (b - a);
    const auto& c = coef_[k];
    double b1 = 0.0, b2 = 0.0;
    for (int m = n_ - 1; m >= 1; --m) {
        const double tmp = 2.0 * t * b1 - b2 + c[m];
        b2 = b1;
        b1 = tmp;
    }
    return t * b1 - b2 + c[0];
}

double ChebyshevTable::panel_integral(std::size_t k, double x) const {
    // integral of sum c_m T_m over [-1, t], using int T_m = T_{m+1}/(2(m+1)) - T_{m-1}/(2(m-1)).
    const double a = breaks_[k], b = breaks_[k + 1];
    const double t = (2.0 * x - a - b) / (b - a);
    const auto& c = coef_[k];
    auto T = [](int m, double y) { return std::cos(m * std::acos(std::clamp(y, -1.0, 1.0))); };
    auto prim = [&](double y) {
        double acc = c[0] * y;
        if (n_ > 1) acc += c[1] * 0.5 * y * y;
        for (int m = 2; m < n_; ++m) acc += c[m] * (T(m + 1, y) / (2.0 * (m + 1)) - T(m - 1, y) / (2.0 * (m - 1)));
        return acc;
    };
    return (prim(t) - prim(-1.0)) * 0.5 * (b - a);
}

double ChebyshevTable::integral_to(double x) const {
    const std::size_t k = panel(x);
    return cum_[k] + panel_integral(k, x);
}

std::vector<double> geometric_breaks(double lo, double hi, double first, double ratio) {
    std::vector<double> b{lo};
    double h = first;
    while (b.back() + h < hi * (1.0 - 1e-12)) {
        b.push_back(b.back() + h);
        h *= ratio;
    }
    b.push_back(hi);
    return b;
}

}  // namespace sinhmodel

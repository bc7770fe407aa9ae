#include "sinhmodel/reference_oracle.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "sinhmodel/equilibrium.hpp"

namespace sinhmodel {

using std::numbers::pi;

namespace {

double pair_log(const ModelParams& p, double na, double d) {
    return log_abs_sinh(pi * p.omega1 * na * d) + log_abs_sinh(pi * p.omega2 * na * d);
}

// Endpoints of the N = infinity support, or a unit window when the root search fails.
std::pair<double, double> rough_support(const Potential& V, const ModelParams& p) {
    try {
        return endpoints_infinite(V, p);
    } catch (const std::exception&) {
        return {-1.0, 1.0};
    }
}

// Coordinate-wise Brent maximisation of the log integrand; returns the maximum.
double log_peak(const Potential& V, const ModelParams& p, int N, std::vector<double>& x, double lo, double hi) {
    gsl_set_error_handler_off();
    struct Ctx {
        const Potential* V;
        const ModelParams* p;
        int N, i;
        std::vector<double>* x;
    } ctx{&V, &p, N, 0, &x};
    gsl_function F;
    F.params = &ctx;
    F.function = [](double v, void* c) {
        auto* k = static_cast<Ctx*>(c);
        std::vector<double> y = *k->x;
        y[k->i] = v;
        const double r = log_integrand(*k->V, *k->p, k->N, y.data());
        return std::isfinite(r) ? -r : 1e300;
    };
    std::unique_ptr<gsl_min_fminimizer, decltype(&gsl_min_fminimizer_free)> m(
        gsl_min_fminimizer_alloc(gsl_min_fminimizer_brent), gsl_min_fminimizer_free);
    for (int sweep = 0; sweep < 30; ++sweep) {
        double moved = 0.0;
        for (int i = 0; i < N; ++i) {
            ctx.i = i;
            // Bracket inside the interval between the neighbours (points stay ordered).
            const double l = i == 0 ? lo : x[i - 1];
            const double h = i == N - 1 ? hi : x[i + 1];
            const double x0 = x[i];
            const double fl = F.function(l + 1e-9 * (h - l), &ctx), fh = F.function(h - 1e-9 * (h - l), &ctx);
            const double f0 = F.function(x0, &ctx);
            if (!(f0 < fl && f0 < fh)) continue;
            if (gsl_min_fminimizer_set_with_values(m.get(), &F, x0, f0, l + 1e-9 * (h - l), fl,
                                                   h - 1e-9 * (h - l), fh) != GSL_SUCCESS)
                continue;
            for (int it = 0; it < 100; ++it) {
                gsl_min_fminimizer_iterate(m.get());
                if (gsl_min_test_interval(gsl_min_fminimizer_x_lower(m.get()), gsl_min_fminimizer_x_upper(m.get()),
                                          1e-12, 0.0) == GSL_SUCCESS)
                    break;
            }
            const double xn = gsl_min_fminimizer_x_minimum(m.get());
            moved = std::max(moved, std::fabs(xn - x0));
            x[i] = xn;
        }
        if (moved < 1e-10) break;
    }
    return log_integrand(V, p, N, x.data());
}

}  // namespace

int thread_cap() {
    if (const char* env = std::getenv("SINHMODEL_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

double log_integrand(const Potential& V, const ModelParams& p, int N, const double* lambda) {
    const double na = std::pow(double(N), p.alpha);
    const double conf = double(N) * na;
    double acc = 0.0;
    for (int a = 0; a < N; ++a) {
        acc -= conf * V(lambda[a]);
        for (int b = a + 1; b < N; ++b) {
            const double d = lambda[a] - lambda[b];
            if (d == 0.0) return -INFINITY;
            acc += p.beta * pair_log(p, na, d);
        }
    }
    return acc;
}

OracleResult logZ_quadrature(const Potential& V, const ModelParams& p, int N, QuadOracleOptions opt) {
    if (N < 1 || N > 4) throw std::invalid_argument("quadrature oracle supports 1 <= N <= 4");
    OracleResult out;
    out.method = OracleMethod::quadrature;
    double lo, hi;
    auto [a, b] = rough_support(V, p);
    if (opt.half_width > 0.0) {
        lo = opt.center - opt.half_width;
        hi = opt.center + opt.half_width;
    } else {
        double minv2 = INFINITY;
        for (int i = 0; i <= 200; ++i) minv2 = std::min(minv2, V.deriv(2, a - 1.0 + (b - a + 2.0) * i / 200.0));
        if (!(minv2 > 0.0)) throw std::invalid_argument("quadrature oracle needs V'' > 0 near the support");
        const double na = std::pow(double(N), p.alpha);
        const double pad = 10.0 / std::sqrt(double(N) * na * minv2);
        lo = a - pad;
        hi = b + pad;
    }
    out.box_lo = lo;
    out.box_hi = hi;

    std::vector<double> x(N);
    for (int i = 0; i < N; ++i) x[i] = N == 1 ? 0.5 * (a + b) : a + (b - a) * (i + 0.5) / N;
    for (auto& v : x) v = std::clamp(v, lo, hi);
    const double M = log_peak(V, p, N, x, lo, hi);

    // Boundary check: moving any single coordinate to a box face must lose 16 decades.
    for (int i = 0; i < N; ++i) {
        for (double face : {lo, hi}) {
            std::vector<double> y = x;
            y[i] = face;
            std::sort(y.begin(), y.end());
            const double v = log_integrand(V, p, N, y.data());
            if (std::isfinite(v) && v - M > std::log(1e-16))
                throw NumericalFailure("quadrature oracle: box too small (boundary integrand above 1e-16 of peak)");
        }
    }

    // Ordered region lo < l_1 < ... < l_N < hi, times N!.
    std::vector<double> lam(N);
    long nev = 0;
    double err_max = 0.0;
    bool ok = true;
    std::function<double(int)> level = [&](int k) -> double {
        if (k == N) {
            ++nev;
            return std::exp(log_integrand(V, p, N, lam.data()) - M);
        }
        QuadratureSpec spec;
        spec.rel_tol = k == 0 ? opt.rel_tol : opt.rel_tol * 0.05;
        spec.abs_tol = 1e-16;
        spec.max_subdivisions = 400;
        const double from = k == 0 ? lo : lam[k - 1];
        auto g = [&](double v) {
            lam[k] = v;
            return level(k + 1);
        };
        auto r = integrate_interval(g, from, hi, spec, k == 0 ? Singularity::none : Singularity::left);
        ok = ok && r.converged;
        if (k == 0) err_max = r.error;
        return r.value;
    };
    const double I = level(0);
    if (!ok) throw NumericalFailure("quadrature oracle: nested quadrature did not converge");
    if (!(I > 0.0)) throw NumericalFailure("quadrature oracle: non-positive integral");
    out.logZ = M + std::lgamma(N + 1.0) + std::log(I);
    out.error_estimate = err_max / I;
    out.evaluations = nev;
    return out;
}

namespace {

struct ChainOut {
    std::vector<double> batch_means;
    double sum = 0.0;
    long count = 0;
    double acceptance = 0.0;
};

ChainOut run_chain(const Potential& V1, const Potential& V0, const ModelParams& p, int N, double t, long samples,
                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, N - 1);
    const double na = std::pow(double(N), p.alpha);
    const double conf = double(N) * na;
    auto Vt = [&](double x) { return (1.0 - t) * V0(x) + t * V1(x); };
    auto Vt_combined = Potential::custom(2, [&](int k, double x) {
        return (1.0 - t) * V0.deriv(k, x) + t * V1.deriv(k, x);
    });
    auto [a, b] = rough_support(Vt_combined, p);
    std::vector<double> x(N);
    for (int i = 0; i < N; ++i) x[i] = a + (b - a) * (i + 0.5) / N;
    std::vector<double> vx(N);
    for (int i = 0; i < N; ++i) vx[i] = Vt(x[i]);

    double step = 0.5 * (b - a) / N + 1e-3;
    const long burn = std::max<long>(samples / 3, 200);  // a quarter of all sweeps
    long acc_window = 0, tried_window = 0, acc_total = 0, tried_total = 0;
    const int nbatch = 50;
    const long per_batch = std::max<long>(samples / nbatch, 1);
    ChainOut out;
    double batch_sum = 0.0;
    long batch_n = 0;

    for (long sweep = 0; sweep < burn + samples; ++sweep) {
        for (int m = 0; m < N; ++m) {
            const int i = pick(rng);
            const double y = x[i] + step * gauss(rng);
            const double vy = Vt(y);
            double dlog = -conf * (vy - vx[i]);
            bool coincide = false;
            for (int j = 0; j < N; ++j) {
                if (j == i) continue;
                const double dn = y - x[j];
                if (dn == 0.0) {
                    coincide = true;
                    break;
                }
                dlog += p.beta * (pair_log(p, na, dn) - pair_log(p, na, x[i] - x[j]));
            }
            const bool accept = !coincide && (dlog >= 0.0 || unif(rng) < std::exp(dlog));
            if (accept) {
                x[i] = y;
                vx[i] = vy;
            }
            if (sweep < burn) {
                ++tried_window;
                acc_window += accept;
            } else {
                ++tried_total;
                acc_total += accept;
            }
        }
        if (sweep < burn) {
            if (tried_window >= 50L * N) {
                const double rate = double(acc_window) / double(tried_window);
                step *= std::exp(2.0 * (rate - 0.3));
                acc_window = tried_window = 0;
            }
            continue;
        }
        double obs = 0.0;
        for (int i = 0; i < N; ++i) obs += V1(x[i]) - V0(x[i]);
        out.sum += obs;
        ++out.count;
        batch_sum += obs;
        if (++batch_n == per_batch) {
            out.batch_means.push_back(batch_sum / double(batch_n));
            batch_sum = 0.0;
            batch_n = 0;
        }
    }
    out.acceptance = tried_total ? double(acc_total) / double(tried_total) : 0.0;
    return out;
}

}  // namespace

OracleResult logZ_ratio_mc(const Potential& V1, const Potential& V0, const ModelParams& p, int N, MCOptions opt) {
    if (N < 1 || N > 16) throw std::invalid_argument("MC oracle supports 1 <= N <= 16");
    if (opt.samples < 100 || opt.chains < 1 || opt.t_nodes < 1)
        throw std::invalid_argument("MC oracle needs samples >= 100, chains >= 1, t_nodes >= 1");
    OracleResult out;
    out.method = OracleMethod::mc;
    const auto& gl = gauss_legendre(opt.t_nodes);
    const int jobs = opt.t_nodes * opt.chains;
    std::vector<ChainOut> res(jobs);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int j = next++; j < jobs; j = next++) {
            const int node = j / opt.chains, chain = j % opt.chains;
            const double t = 0.5 * (gl.x[node] + 1.0);
            res[j] = run_chain(V1, V0, p, N, t, opt.samples,
                               opt.seed + 1000003ULL * static_cast<std::uint64_t>(node) + 7919ULL * chain);
        }
    };
    const int nthreads = std::min(jobs, opt.threads > 0 ? opt.threads : thread_cap());
    std::vector<std::thread> pool;
    for (int k = 1; k < nthreads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    const double scale = double(N) * std::pow(double(N), p.alpha);
    double total = 0.0, var = 0.0;
    std::mt19937_64 boot_rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int node = 0; node < opt.t_nodes; ++node) {
        double sum = 0.0, acc = 0.0;
        long cnt = 0;
        std::vector<double> batches;
        for (int c = 0; c < opt.chains; ++c) {
            const auto& r = res[node * opt.chains + c];
            sum += r.sum;
            cnt += r.count;
            acc += r.acceptance / opt.chains;
            batches.insert(batches.end(), r.batch_means.begin(), r.batch_means.end());
            if (r.acceptance < 0.1 || r.acceptance > 0.6)
                throw NumericalFailure("MC oracle: acceptance rate " + std::to_string(r.acceptance) +
                                       " outside [0.1, 0.6] after adaptation");
        }
        const double mean = sum / double(cnt);
        // Bootstrap over batch means.
        std::uniform_int_distribution<std::size_t> pickb(0, batches.size() - 1);
        double m1 = 0.0, m2 = 0.0;
        for (int bs = 0; bs < opt.bootstrap; ++bs) {
            double s = 0.0;
            for (std::size_t k = 0; k < batches.size(); ++k) s += batches[pickb(boot_rng)];
            s /= double(batches.size());
            m1 += s;
            m2 += s * s;
        }
        m1 /= opt.bootstrap;
        const double se = std::sqrt(std::max(0.0, m2 / opt.bootstrap - m1 * m1));
        const double w = 0.5 * gl.w[node];
        out.t_nodes.push_back(0.5 * (gl.x[node] + 1.0));
        out.node_values.push_back(-scale * mean);
        out.node_stderr.push_back(scale * se);
        out.acceptance.push_back(acc);
        total += w * (-scale * mean);
        var += w * w * scale * scale * se * se;
    }
    out.logZ = total;
    out.error_estimate = std::sqrt(var);
    out.samples = opt.samples * opt.chains * opt.t_nodes;
    return out;
}

}  // namespace sinhmodel

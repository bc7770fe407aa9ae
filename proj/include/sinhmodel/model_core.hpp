#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sinhmodel {

// Raised when a routine fails to reach its accuracy target.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelParams {
    double omega1 = 1.0;
    double omega2 = 1.0;
    double beta = 1.0;
    double alpha = 0.1;

    ModelParams() = default;
    ModelParams(double w1, double w2, double b, double a);

    // Throws std::invalid_argument on violated invariants.
    void validate() const;
    // True when alpha >= 1/6: formulas are still evaluated, but no proof covers them.
    bool outside_proven_regime() const { return alpha >= 1.0 / 6.0; }

    double s() const { return omega1 + omega2; }
    // First pole height of 1/R on the imaginary axis.
    double kappa0() const;
    // Default contour height: half of kappa0.
    double varsigma() const { return 0.5 * kappa0(); }
    double delta0() const { return (omega2 - omega1) / s(); }
    // sum_p (1/(2 pi omega_p)) ln(omega1 omega2 / (omega_p (omega1+omega2)))
    double log_constant() const;
    double u1() const;
};

enum class PotentialKind { quadratic, even_polynomial, custom };

// A confining potential together with its derivative stack.
class Potential {
public:
    using DerivFn = std::function<double(int, double)>;

    Potential() = default;
    Potential(PotentialKind kind, int k_max, DerivFn deriv, std::vector<double> coeffs = {});

    static Potential quadratic(double g, double t);
    // V(x) = sum_k coeffs[k] x^k, degree <= 8; every derivative order is available.
    static Potential polynomial(std::vector<double> coeffs);
    static Potential custom(int k_max, DerivFn deriv);
    // a*V + b*W + c
    static Potential combine(double a, const Potential& V, double b, const Potential& W, double c = 0.0);

    double operator()(double x) const { return deriv_(0, x); }
    double eval(double x) const { return deriv_(0, x); }
    double deriv(int k, double x) const;
    int k_max() const { return k_max_; }
    PotentialKind kind() const { return kind_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    bool valid() const { return static_cast<bool>(deriv_); }

private:
    PotentialKind kind_ = PotentialKind::custom;
    int k_max_ = 2;
    DerivFn deriv_;
    std::vector<double> coeffs_;
};

struct PotentialReport {
    double min_second_derivative = 0.0;
    bool convex = false;
    double growth_left = 0.0;   // V(x)/|x|^{1.1} at the left end
    double growth_right = 0.0;  // same at the right end
    double max_fd_mismatch = 0.0;  // worst relative finite-difference mismatch of the derivative stack
    bool derivatives_consistent = false;
    double max_derivative_ratio = 0.0;  // max_k |V^{(k+1)}|/(1+|V^{(k)}|) on the grid, a sub-exponential growth proxy
};

PotentialReport potential_validate(const Potential& V, double lo, double hi, int grid = 401);

// S(x) = sum_p beta pi omega_p coth(pi omega_p x); domain error at x = 0.
double kernel_S(const ModelParams& p, double x);
double kernel_S_prime(const ModelParams& p, double x);
double kernel_S_second(const ModelParams& p, double x);
// (x S(x))' = S + x S', finite at 0.
double kernel_xS_prime(const ModelParams& p, double x);
// s_N(x) = (beta / 2 N^alpha) ln[sinh(pi w1 N^alpha x) sinh(pi w2 N^alpha x)], log-space.
double kernel_sN(const ModelParams& p, double N, double x);
// ln|sinh(y)| for real y != 0 without overflow.
double log_abs_sinh(double y);

}  // namespace sinhmodel

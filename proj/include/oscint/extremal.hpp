#pragma once

// The lower-bound construction: trapezoid profile f, polynomial approximate
// identity phi_k(x) = c_k (1 - x^2/4)^(k^2), and the extremal polynomials
// P_k = f * phi_k, kept both as exact coefficients and as a stable convolution
// evaluator.

#include "oscint/poly.hpp"
#include "oscint/rational.hpp"

namespace oscint {

// Odd piecewise-linear profile: 0 outside [-1,1], +1 on [1/n, 1-1/n],
// -1 mirrored, linear on the three ramps. Lipschitz constant n.
struct TrapezoidProfile {
    int n;
    explicit TrapezoidProfile(int n);

    double operator()(double t) const;
    Rational eval_exact(const Rational& t) const;
    // slope of the linear piece containing t (breakpoints get the right-hand piece)
    double slope(double t) const;
    // interior breakpoints on [0,1]: {1/n, 1-1/n, 1}
    std::vector<double> kinks() const;
    // moment mu_j = int_{-1}^{1} f(x) x^j dx, exact (zero for even j)
    Rational moment(int j) const;
};

struct SmoothingKernel {
    int k;
    Rational c_k;     // exact normalizer 1 / (2 B(1/2, k^2+1))
    double log_c_k;   // natural log

    explicit SmoothingKernel(int k);

    // phi_k(y), evaluated in log scale: sign * exp(log c_k + k^2 log|1 - y^2/4|).
    // As a global polynomial this grows beyond |y| = 2 with sign (-1)^(k^2).
    double operator()(double y) const;
    double log_abs(double y) const; // log |phi_k(y)|, -inf at |y| = 2
};

// Exact closed-form c_k = (2m+1)! / (4^(m+1) (m!)^2) with m = k^2,
// equal to 1/(2 B(1/2, k^2+1)). Memoized.
Rational kernel_normalizer(int k);

struct ExtremalPoly {
    int n = 0, k = 0;
    Poly coeff_form;     // exact, odd, degree 2k^2 - 1
    Rational leading;    // a_k = (-1)^(k^2+1) 2 c_k k^2 (1 - 1/n) / 4^(k^2)

    int degree() const { return 2 * k * k - 1; }
};

// Exact coefficients via the binomial expansion of phi_k(t - x) integrated
// against the closed-form moments of f.
ExtremalPoly construct_extremal(int n, int k);
inline ExtremalPoly construct_extremal(int n) { return construct_extremal(n, n); }

// P_k(t) as the convolution integral with phi_k in log scale; usable at any
// k where the coefficient form would overflow doubles.
double eval_extremal_convolution(int n, int k, double t, double tol = 1e-11);

// Lemma 2(iii) form, valid for t in [-1,1]: int_0^2 (f(t+x)+f(t-x)) phi_k(x) dx.
double eval_extremal_symmetric(int n, int k, double t, double tol = 1e-11);

} // namespace oscint

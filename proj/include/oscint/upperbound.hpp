#pragma once

// The upper-bound decomposition: van der Corput ratio checks, the Q/R split at
// half the degree with argument normalization, the logarithmic measure of the
// small-derivative set with its dyadic-sum certificate, and the recursive
// K_d trace whose child handles the low half of the coefficients.

#include "oscint/poly.hpp"

#include <complex>
#include <memory>
#include <utility>
#include <vector>

namespace oscint {

struct VdCCheck {
    int k = 0;
    double lambda = 0;
    double a = 0, b = 0;
    double integral_modulus = 0;
    double ratio = 0;           // modulus * |lambda|^(1/k)
    bool precondition_ok = false;
};

// Verifies min |phi^(k)| >= 1 on [a,b] (and monotone phi' when k = 1) by root
// isolation and exact extremum evaluation, then measures |int_a^b e^{i lambda phi}|
// by lobe quadrature. Throws PreconditionFailed with the violating point.
VdCCheck vdc_check(const Poly& phi, int k, double lambda, double a, double b,
                   double tol = 1e-9);

struct SplitResult {
    Poly Q;            // powers 1..floor(d/2), post-scaling
    Poly Rpart;        // powers floor(d/2)+1..d, post-scaling
    double lambda_norm = 1; // argument scale making max high coefficient 1
    int k = 0;         // floor(d/2)
    bool high_zero = false;
};

SplitResult split_at_half(const Poly& p);

struct LogMeasure {
    double value = 0;              // int over {t >= 1 : |p'| <= alpha} of dt/t, exact
    double dyadic_certificate = 0; // sum_m |{t in [1,2] : |p'(2^m t)| <= alpha}|
    std::vector<std::pair<double, double>> components;
};

LogMeasure small_derivative_log_measure(const Poly& p, double alpha);

struct KdTrace {
    int d = 0;
    double alpha_used = 0;
    double I1 = 0, I2_plus = 0, I2_minus = 0;
    double small_deriv_log_measure = 0;
    double oscillatory_piece = 0;
    double tail_coeff_sum = 0;
    double lambda_norm = 1;
    double R_eff = 0;
    std::complex<double> total_complex{0, 0}; // z1 + z2+ + z2-, diagnostic
    std::unique_ptr<KdTrace> recursion_child;

    int depth() const { return recursion_child ? 1 + recursion_child->depth() : 0; }
};

// Full numerical trace of the decomposition, recursing on the Q part down to
// degree 1. alpha <= 0 selects the deterministic auto rule d^((d-1)/d).
KdTrace kd_trace(const Poly& p, double alpha, double tol = 1e-9);

} // namespace oscint

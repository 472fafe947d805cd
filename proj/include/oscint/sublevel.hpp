#pragma once

// Sublevel sets of polynomials: exact measure of {t : |h(t)| <= alpha} on an
// interval, the interpolation-based coefficient bound with its exact constant
// M_n = max_k C(n, n-k) 2^(2n-k) n^n / n!, so that |E_alpha| <= (M_n alpha /
// max_k |b_k|)^(1/n), and the point-sliding construction that spreads n+1
// points through the components.

#include "oscint/poly.hpp"

#include <utility>
#include <vector>

namespace oscint {

struct SublevelResult {
    double measure = 0;
    std::vector<std::pair<double, double>> components; // ordered, disjoint
    double bound = 0;        // (M_n alpha / max|b_k|)^(1/n)
    Rational constant_Mn;    // exact
    bool degenerate = false; // h was the zero polynomial
};

SublevelResult sublevel_measure(const Poly& h, double alpha, double lo = 1.0, double hi = 2.0);

// max over 0 <= k <= n of C(n, n-k) 2^(2n-k) n^n / n!, exact.
Rational vinogradov_constant(int n);

// (M_n alpha / max_k |b_k|)^(1/n) with n = degree(h).
double vinogradov_bound(const Poly& h, double alpha);

// n+1 points inside the union of components, equally spaced after sliding the
// components together; pairwise gaps are at least L |j - k| / n.
std::vector<double> slide_and_select(const std::vector<std::pair<double, double>>& components,
                                     int n);

// sigma_0 .. sigma_m of the given points (sigma_0 = 1).
std::vector<Rational> elementary_symmetric(const std::vector<Rational>& pts);

// Unique interpolant of degree <= n through (points[i], values[i]), coefficients
// assembled from the elementary symmetric functions with one point omitted.
Poly lagrange_coefficients(const std::vector<Rational>& points,
                           const std::vector<Rational>& values);
Poly lagrange_coefficients(const std::vector<double>& points, const std::vector<double>& values);

} // namespace oscint

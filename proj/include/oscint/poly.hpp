#pragma once

// Dense univariate real polynomials with two coefficient representations:
//  - exact:    GMP rationals, used for all construction-time arithmetic
//  - floating: doubles, used for cheap runtime evaluation
// The degree-(2n^2-1) extremal constructions involve binomials of k^2 over 4^(k^2),
// far outside double range, so the exact side is not optional.

#include "oscint/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oscint {

enum class Rep { exact, floating };

class Poly {
public:
    Poly() = default; // zero polynomial, degree -1

    static Poly from_rational(std::vector<Rational> coeffs);
    static Poly from_double(std::vector<double> coeffs);
    // c * t^d
    static Poly monomial(int d, const Rational& c = Rational(1));

    int degree() const { return degree_; }
    bool is_zero() const { return degree_ < 0; }
    Rep rep() const { return rep_; }

    // Exact coefficient of t^j (doubles lift losslessly); 0 beyond the degree.
    Rational coeff(int j) const;
    double coeff_d(int j) const;
    std::vector<Rational> rational_coeffs() const;
    const std::vector<double>& double_coeffs() const { return dc_; }

    Poly to_exact() const;
    Poly to_float() const;

    // Compensated Horner in float mode, exact-then-round in exact mode.
    double eval(double t) const;
    Rational eval_exact(const Rational& t) const;

    Poly derivative(int order = 1) const;
    // q(t) = p(lambda * t)
    Poly scale_argument(const Rational& lambda) const;
    Poly scale_argument(double lambda) const;
    // p(t)/t for p with p(0) = 0 (drops the constant term if nonzero).
    Poly divided_by_t() const;
    Poly without_constant_term() const;

    bool is_odd() const;  // every even-power coefficient exactly zero
    bool is_even() const; // every odd-power coefficient exactly zero
    Poly odd_part() const;
    Poly even_part() const;

    Poly operator-() const;
    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator*(const Rational& c) const;

    std::string to_string() const; // debugging aid

private:
    void trim();

    Rep rep_ = Rep::exact;
    int degree_ = -1;
    std::vector<Rational> rc_; // exact mode
    std::vector<double> dc_;   // float mode
};

struct RootInterval {
    double lo = 0, hi = 0; // isolating interval
    double value = 0;      // refined root
};

struct RootList {
    std::vector<RootInterval> roots; // ordered by value
    bool clustered = false;          // a width-limited cluster was reported as one root
};

// All real roots of p in [lo, hi], each isolated by sign-variation (Descartes)
// bisection on the squarefree part and refined by bisection to `width`
// (default 1e-14 * max(1, |hi|)). Multiple roots are reported once.
RootList isolate_roots(const Poly& p, double lo, double hi, double width = -1);

// Compensated (error-free transformed) Horner; abs error ~ eps|p(t)| + (2d eps)^2 S(t).
double compensated_horner(const std::vector<double>& coeffs, double t);

} // namespace oscint

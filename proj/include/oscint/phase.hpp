#pragma once

// Accurate polynomial phase evaluation for oscillatory integrands.
//
// Two paths, chosen per evaluation from a running condition-number bound:
//  - compensated Horner on a hi/lo split of the coefficients (error-free
//    transforms), good while (d eps)^2 * sum |a_j| |t|^j stays below the
//    requested absolute accuracy;
//  - exact scaled-integer Horner (GMP) followed by MPFR reduction mod 2*pi,
//    good at any magnitude. Degree-287 coefficients with 4^(k^2) denominators
//    are routine here.
//
// Trig of the phase always goes through the principal value in [-pi, pi], so
// sin(P(t)) keeps full absolute accuracy even when P(t) ~ 1e40.

#include "oscint/poly.hpp"

#include <memory>

namespace oscint {

struct PhaseValue {
    double principal = 0;  // P(t) reduced to [-pi, pi]
    double raw = 0;        // P(t) as a double; +-inf when out of range
    double log2_abs = 0;   // log2 |P(t)|; -inf at zero
    bool exact_path = false;
};

class PhaseEvaluator {
public:
    explicit PhaseEvaluator(const Poly& p, double abs_need = 1e-12);
    ~PhaseEvaluator();
    PhaseEvaluator(PhaseEvaluator&&) noexcept;
    PhaseEvaluator& operator=(PhaseEvaluator&&) noexcept;

    PhaseValue value(double t) const;
    double principal(double t) const { return value(t).principal; }
    double sin_phase(double t) const;

    // Exact P(t1) - P(t0) rounded once to double; +-inf if out of range.
    double diff(double t1, double t0) const;

    // Cached evaluation point for repeated differences against the same anchor.
    class Anchor {
    public:
        ~Anchor();
        Anchor(Anchor&&) noexcept;

    private:
        friend class PhaseEvaluator;
        Anchor();
        struct Data;
        std::unique_ptr<Data> data_;
    };
    Anchor make_anchor(double t) const;
    double diff_from(const Anchor& anchor, double t) const; // P(t) - P(anchor)

    // |P'(t)|; +-inf on overflow, computed exactly when the fast bound fails.
    double deriv_abs(double t) const;

    int degree() const;
    const Poly& poly() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Reduce an exact rational modulo 2*pi into [-pi, pi] (MPFR, precision chosen
// from the magnitude).
double mod_two_pi(const Rational& x);

} // namespace oscint

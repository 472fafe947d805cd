#include "oscint/extremal.hpp"

#include "oscint/phase.hpp"
#include "oscint/quadrature.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace oscint;
using testing_oracles::Rng;

TEST_CASE("trapezoid profile values") {
    TrapezoidProfile f(10);
    CHECK(f(0.5) == 1.0);
    CHECK(f(0.05) == doctest::Approx(0.5));
    CHECK(f(-0.5) == -1.0);
    CHECK(f(1.0) == 0.0);
    CHECK(f(-2.0) == 0.0);
    // oddness at random points
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
        double t = rng.uniform(-2.0, 2.0);
        CHECK(f(-t) == doctest::Approx(-f(t)));
    }
}

TEST_CASE("kernel normalizer closed forms") {
    CHECK(kernel_normalizer(1) == Rational(3, 8));
    CHECK(kernel_normalizer(2) == Rational(315, 512));

    // c_20 / 20 within 1% of 1/(2 sqrt(pi))
    double c20 = rational_to_double(kernel_normalizer(20));
    double asym = 1.0 / (2.0 * std::sqrt(M_PI));
    CHECK(std::fabs(c20 / 20.0 - asym) <= 0.01 * asym);

    // c_k / k in [0.2, 0.4] for k >= 3 (exact comparisons)
    for (int k = 3; k <= 20; ++k) {
        Rational ratio = kernel_normalizer(k) / k;
        CHECK(ratio >= Rational(1, 5));
        CHECK(ratio <= Rational(2, 5));
    }
}

TEST_CASE("kernel normalization integral is 1") {
    for (int k : {1, 2, 3, 5, 8, 12}) {
        SmoothingKernel phi(k);
        QuadResult q = integrate_adaptive([&](double x) { return phi(x); }, -2.0, 2.0, 1e-12);
        CHECK(std::fabs(q.value - 1.0) <= 1e-10);
    }
}

TEST_CASE("profile moments") {
    TrapezoidProfile f(4);
    CHECK(f.moment(1) == Rational(3, 4)); // 1 - 1/n
    CHECK(f.moment(2) == 0);
    for (int n : {2, 5, 9}) {
        TrapezoidProfile g(n);
        CHECK(g.moment(1) == 1 - Rational(1, n));
        // quadrature cross-check for j = 3
        QuadResult q = integrate_adaptive([&](double x) { return g(x) * x * x * x; }, -1.0, 1.0, 1e-12);
        CHECK(std::fabs(rational_to_double(g.moment(3)) - q.value) <= 1e-10);
    }
}

TEST_CASE("extremal leading coefficient: exact Lemma identity") {
    // n = 4, k = 1: degree-1 polynomial with a_1 = 9/64
    ExtremalPoly e1 = construct_extremal(4, 1);
    CHECK(e1.degree() == 1);
    CHECK(e1.leading == Rational(9, 64));

    // k = n cases: a_k = (-1)^(k^2+1) 2 c_k k^2 (1 - 1/n) / 4^(k^2), exactly
    for (int n = 2; n <= 8; ++n) {
        ExtremalPoly e = construct_extremal(n, n);
        Rational c = kernel_normalizer(n);
        Rational expect = Rational(2) * c * Rational(long(n) * n) * (1 - Rational(1, n)) /
                          rational_pow(Rational(4), long(n) * n);
        if ((long(n) * n) % 2 == 0) expect = -expect;
        CHECK(e.leading == expect);
        CHECK(e.coeff_form.degree() == 2 * n * n - 1);
        CHECK(e.coeff_form.is_odd());
    }
}

TEST_CASE("top derivative is the constant (2k^2-1)! a_k") {
    ExtremalPoly e = construct_extremal(4, 2);
    int d = e.degree();
    CHECK(d == 7);
    Poly top = e.coeff_form.derivative(d);
    CHECK(top.degree() == 0);
    Rational expect = Rational(factorial(7)) * Rational(-945, 65536);
    CHECK(top.coeff(0) == expect);
    CHECK(e.leading == Rational(-945, 65536));
}

TEST_CASE("dual representation: coefficients vs convolution") {
    Rng rng(88);
    for (int n : {4, 6}) {
        ExtremalPoly e = construct_extremal(n, n);
        for (int i = 0; i < 6; ++i) {
            double t = rng.uniform(-3.0, 3.0);
            double conv = eval_extremal_convolution(n, n, t, 1e-13);
            Rational exact = e.coeff_form.eval_exact(rational_from_double(t));
            double coef = rational_to_double(exact);
            CHECK(std::fabs(conv - coef) <= 1e-8 * std::max({1e-4, std::fabs(conv), std::fabs(coef)}));
        }
    }
}

TEST_CASE("convolution oddness and symmetric form") {
    int n = 5, k = 5;
    CHECK(eval_extremal_convolution(n, k, 0.0, 1e-12) == doctest::Approx(0.0).epsilon(1e-10));
    Rng rng(3);
    for (int i = 0; i < 10; ++i) {
        double t = rng.uniform(0.0, 1.0);
        double a = eval_extremal_convolution(n, k, t, 1e-11);
        double b = eval_extremal_convolution(n, k, -t, 1e-11);
        CHECK(std::fabs(a + b) <= 1e-10);
        double s = eval_extremal_symmetric(n, k, t, 1e-11);
        CHECK(std::fabs(a - s) <= 1e-9);
    }
}

TEST_CASE("oddness of P_k under both representations at random points") {
    ExtremalPoly e = construct_extremal(6, 6);
    PhaseEvaluator ph(e.coeff_form);
    Rng rng(31);
    for (int i = 0; i < 50; ++i) {
        double t = rng.uniform(0.0, 1.5);
        double a = ph.value(t).raw;
        double b = ph.value(-t).raw;
        CHECK(std::fabs(a + b) <= 1e-10 * std::max(1.0, std::fabs(a)));
    }
}

TEST_CASE("lemma 2(ii) lower bound through c_k") {
    // |P^(2k^2-1)| = (2k^2-1)! |a_k| >= 0.4 k^3 (1-1/n) (2k^2-1)! / 4^(k^2) for k >= 3,
    // using the exact c_k >= k/5
    for (int n : {3, 5, 7}) {
        int k = n;
        ExtremalPoly e = construct_extremal(n, k);
        Rational lhs = abs(e.leading) * rational_pow(Rational(4), long(k) * k);
        Rational rhs = Rational(2, 5) * Rational(long(k) * k * k) * (1 - Rational(1, n));
        CHECK(lhs >= rhs);
    }
}

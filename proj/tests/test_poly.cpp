#include "oscint/poly.hpp"

#include "oscint/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace oscint;
using testing_oracles::Rng;

TEST_CASE("eval basics") {
    Poly id = Poly::from_rational({Rational(0), Rational(1)});
    CHECK(id.eval(2.0) == 2.0);

    // 1 - t^2/4 has a root at t = 2 by construction
    Poly k = Poly::from_rational({Rational(1), Rational(0), Rational(-1, 4)});
    CHECK(k.eval(2.0) == 0.0);
    CHECK(k.eval_exact(Rational(2)) == 0);
}

TEST_CASE("rational and float evaluation agree") {
    Rng rng(41);
    for (int rep = 0; rep < 40; ++rep) {
        int d = rng.uniform_int(0, 30);
        auto p = testing_oracles::random_poly(rng, d, -1e6, 1e6);
        Poly q = p.to_exact();
        for (int i = 0; i < 5; ++i) {
            double t = rng.uniform(-3.0, 3.0);
            double a = p.eval(t);
            double b = rational_to_double(q.eval_exact(rational_from_double(t)));
            CHECK(std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(b)));
        }
    }
}

TEST_CASE("derivative") {
    Poly cube = Poly::monomial(3);
    Poly d = cube.derivative();
    CHECK(d.degree() == 2);
    CHECK(d.coeff(2) == 3);

    Poly c = Poly::from_rational({Rational(5)});
    CHECK(c.derivative().is_zero());
    CHECK(c.derivative().degree() == -1);
}

TEST_CASE("scale_argument") {
    Poly sq = Poly::monomial(2);
    Poly s = sq.scale_argument(Rational(2));
    CHECK(s.coeff(2) == 4);

    Rng rng(17);
    auto p = testing_oracles::random_poly(rng, 7).to_exact();
    Poly same = p.scale_argument(Rational(1));
    for (int j = 0; j <= 7; ++j) CHECK(same.coeff(j) == p.coeff(j));
}

TEST_CASE("derivative commutes with argument scaling") {
    Rng rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        auto p = testing_oracles::random_poly(rng, rng.uniform_int(1, 9)).to_exact();
        Rational lam(3, 2);
        Poly lhs = p.scale_argument(lam).derivative();
        Poly rhs = p.derivative().scale_argument(lam) * lam;
        CHECK(lhs.degree() == rhs.degree());
        for (int j = 0; j <= lhs.degree(); ++j) CHECK(lhs.coeff(j) == rhs.coeff(j));
    }
}

TEST_CASE("parity split") {
    Rng rng(7);
    auto p = testing_oracles::random_poly(rng, 8).to_exact();
    Poly o = p.odd_part(), e = p.even_part();
    CHECK(o.is_odd());
    CHECK(e.is_even());
    Poly r = o + e - p;
    CHECK(r.is_zero());
}

TEST_CASE("isolate_roots on sqrt(2)") {
    Poly p = Poly::from_rational({Rational(-2), Rational(0), Rational(1)});
    RootList rl = isolate_roots(p, 0.0, 2.0);
    REQUIRE(rl.roots.size() == 1);
    CHECK(rl.roots[0].value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    Poly q = Poly::from_rational({Rational(1), Rational(0), Rational(1)});
    CHECK(isolate_roots(q, -10.0, 10.0).roots.empty());

    CHECK_THROWS_AS(isolate_roots(Poly(), 0.0, 1.0), ZeroPolynomial);
}

TEST_CASE("isolate_roots matches a sign-change grid scan") {
    Rng rng(2024);
    for (int rep = 0; rep < 12; ++rep) {
        auto p = testing_oracles::random_poly(rng, 8, -2.0, 2.0);
        double lo = -2.0, hi = 2.0;
        RootList rl = isolate_roots(p, lo, hi);
        // grid oracle
        std::vector<double> grid_roots;
        double step = 1e-5;
        double prev = p.eval(lo);
        for (double t = lo + step; t <= hi + 0.5 * step; t += step) {
            double v = p.eval(t);
            if (prev == 0.0) grid_roots.push_back(t - step);
            else if (prev * v < 0) grid_roots.push_back(t - 0.5 * step);
            prev = v;
        }
        CHECK(rl.roots.size() == grid_roots.size());
        if (rl.roots.size() == grid_roots.size()) {
            for (size_t i = 0; i < grid_roots.size(); ++i)
                CHECK(std::fabs(rl.roots[i].value - grid_roots[i]) < 1e-5);
        }
    }
}

TEST_CASE("isolate_roots with known factorizations") {
    // (t-1)(t+2)(t-1/2): squarefree cubic
    Poly p = Poly::from_rational({Rational(1), Rational(1, 2), Rational(-3, 2), Rational(1)});
    // expand (t-1)(t+2)(t-1/2) = t^3 + (1/2)t^2 - (3/2)t + 1... verify via eval
    Poly f1 = Poly::from_rational({Rational(-1), Rational(1)});
    Poly f2 = Poly::from_rational({Rational(2), Rational(1)});
    Poly f3 = Poly::from_rational({Rational(-1, 2), Rational(1)});
    // product by repeated evaluation identity: just isolate each known root
    (void)p;
    std::vector<Rational> coeffs = {Rational(1), Rational(0), Rational(0), Rational(0)};
    // build (t-1)(t+2)(t-1/2) by convolution
    auto mul = [](const Poly& a, const Poly& b) {
        std::vector<Rational> c(size_t(a.degree() + b.degree()) + 1, Rational(0));
        for (int i = 0; i <= a.degree(); ++i)
            for (int j = 0; j <= b.degree(); ++j) c[size_t(i + j)] += a.coeff(i) * b.coeff(j);
        return Poly::from_rational(std::move(c));
    };
    Poly prod = mul(mul(f1, f2), f3);
    RootList rl = isolate_roots(prod, -5.0, 5.0);
    REQUIRE(rl.roots.size() == 3);
    CHECK(rl.roots[0].value == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(rl.roots[1].value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rl.roots[2].value == doctest::Approx(1.0).epsilon(1e-12));

    // multiple root reported once: (t-1)^2 (t+3)
    Poly dbl = mul(mul(f1, f1), Poly::from_rational({Rational(3), Rational(1)}));
    RootList rd = isolate_roots(dbl, -5.0, 5.0);
    REQUIRE(rd.roots.size() == 2);
    CHECK(rd.roots[0].value == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(rd.roots[1].value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("compensated horner beats naive on an ill-conditioned case") {
    // (t-1)^8 expanded, near t = 1
    std::vector<double> c = {1, -8, 28, -56, 70, -56, 28, -8, 1};
    std::reverse(c.begin(), c.end());
    double t = 1.0 + 1e-3;
    double exact = std::pow(1e-3, 8);
    double got = compensated_horner(c, t);
    CHECK(std::fabs(got - exact) <= 1e-6 * exact);
}

#include "oscint/pvint.hpp"

#include "oscint/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace oscint;
using testing_oracles::Rng;
using testing_oracles::si_series;

TEST_CASE("Dirichlet: pv(t) = pi") {
    Poly t = Poly::monomial(1);
    PVResult r = pv_integral(t, 1e-9);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("monomial law: pv(t^d) = pi/d for odd d") {
    for (int d : {3, 5, 9, 17, 33, 49}) {
        Poly p = Poly::monomial(d);
        PVResult r = pv_integral(p, 1e-9);
        INFO("d = ", d);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(M_PI / d).epsilon(1e-6));
    }
}

TEST_CASE("even phases annihilate") {
    Poly sq = Poly::monomial(2);
    PVResult r = pv_integral(sq, 1e-9);
    CHECK(r.value <= 1e-8);
    Rng rng(5150);
    for (int rep = 0; rep < 5; ++rep) {
        auto p = testing_oracles::random_even_poly(rng, 20);
        CHECK(pv_integral(p, 1e-9).value <= 1e-8);
    }
}

TEST_CASE("unit interval part: Si(1)") {
    Poly t = Poly::monomial(1);
    double v = unit_interval_part(t, 1e-11);
    CHECK(v == doctest::Approx(si_series(1.0)).epsilon(1e-9));
    CHECK(si_series(1.0) == doctest::Approx(0.9460831).epsilon(1e-6));
}

TEST_CASE("tail parts against the sine integral") {
    Poly t = Poly::monomial(1);
    TailPart tp = tail_part(t, 1.0, 1e-10);
    CHECK(tp.value == doctest::Approx(M_PI / 2 - si_series(1.0)).epsilon(1e-8));

    Poly t3 = Poly::monomial(3);
    TailPart tp3 = tail_part(t3, 1.0, 1e-10);
    CHECK(tp3.value == doctest::Approx((M_PI / 2 - si_series(1.0)) / 3.0).epsilon(1e-8));
    CHECK(tp3.value == doctest::Approx(0.2082377).epsilon(1e-5));
}

TEST_CASE("decomposition consistency for odd phases") {
    Rng rng(314);
    for (int rep = 0; rep < 6; ++rep) {
        Poly p = testing_oracles::random_odd_poly(rng, 9);
        if (unit_interval_signed(p, 1e-10) < 0) p = -p; // fix the orientation
        double tol = 1e-9;
        PVResult pv = pv_integral(p, tol);
        double u = unit_interval_part(p, tol);
        TailPart tp = tail_part(p, 1.0, tol);
        CHECK(std::fabs(2.0 * std::fabs(u + tp.value) - pv.value) <= 2 * tol + 2 * tp.remainder_bound);
    }
}

TEST_CASE("scaling invariance of the principal value") {
    Rng rng(777);
    for (double lam : {0.5, 3.0}) {
        for (int rep = 0; rep < 4; ++rep) {
            Poly p = testing_oracles::random_odd_poly(rng, 9);
            double tol = 1e-9;
            double a = pv_integral(p, tol).value;
            double b = pv_integral(p.scale_argument(lam), tol).value;
            CHECK(std::fabs(a - b) <= 100 * tol);
        }
    }
}

TEST_CASE("truncated principal value: Dirichlet window") {
    Poly t = Poly::monomial(1);
    PVComplex r = pv_integral_truncated(t, 1e-6, 1e6, 1e-7);
    CHECK(std::abs(r.value) == doctest::Approx(M_PI).epsilon(1e-4));

    // conjugation symmetry
    Rng rng(4242);
    Poly p = testing_oracles::random_poly(rng, 6, -1, 1, true);
    PVComplex a = pv_integral_truncated(p, 0.25, 40.0, 1e-8);
    PVComplex b = pv_integral_truncated(-p, 0.25, 40.0, 1e-8);
    CHECK(a.value.real() == doctest::Approx(b.value.real()).epsilon(1e-6));
    CHECK(a.value.imag() == doctest::Approx(-b.value.imag()).epsilon(1e-6));

    CHECK_THROWS_AS(pv_integral_truncated(t, 2.0, 1.0, 1e-8), InvalidRange);
    CHECK(pv_integral_truncated(Poly(), 1e-3, 10.0, 1e-8).value == std::complex<double>(0, 0));
}

TEST_CASE("mixed parity matches the odd/even assembly") {
    // pv of t^3 + t^2: |2 i int e^{i pe} sin(po)/t| computed two ways
    Poly p = Poly::from_double({0, 0, 1, 1});
    PVDetail d = pv_integral_detail(p, 1e-9);
    PVComplex tr = pv_integral_truncated(p, 1e-9, 1e5, 1e-5);
    CHECK(std::abs(d.complex_value - tr.value) <= 2e-4);
}

TEST_CASE("invalid tolerance") {
    CHECK_THROWS_AS(pv_integral(Poly::monomial(1), -1.0), InvalidTolerance);
}

TEST_CASE("lobe magnitudes decrease after the cutoff") {
    Poly p = Poly::monomial(5);
    PVDetail d = pv_integral_detail(p, 1e-9);
    REQUIRE(d.ray_cutoff >= 0);
    for (size_t i = size_t(d.ray_cutoff); i + 1 < d.ray_sin_lobes.size(); ++i)
        CHECK(d.ray_sin_lobes[i + 1] <= d.ray_sin_lobes[i] * (1 + 1e-9));
}

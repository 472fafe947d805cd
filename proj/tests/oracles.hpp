#pragma once

// Test-side oracles, independent of the library's integration paths.

#include "oscint/poly.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace testing_oracles {

// sine integral Si(x) = int_0^x sin u / u du by its power series (x modest)
inline double si_series(double x) {
    double term = x, sum = x;
    for (int k = 1; k < 60; ++k) {
        // next term: (-1)^k x^(2k+1) / ((2k+1) (2k+1)!)
        term *= -x * x / (2.0 * k * (2.0 * k + 1.0));
        sum += term / (2.0 * k + 1.0);
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
}

// deterministic uniform rng (avoids distribution implementation differences)
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    double uniform(double lo, double hi) {
        double u = double(next() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    int uniform_int(int lo, int hi) { // inclusive
        return lo + int(next() % std::uint64_t(hi - lo + 1));
    }
};

inline oscint::Poly random_poly(Rng& rng, int degree, double lo = -1.0, double hi = 1.0,
                                bool zero_constant = false) {
    std::vector<double> cs(static_cast<size_t>(degree) + 1);
    for (auto& c : cs) c = rng.uniform(lo, hi);
    if (zero_constant) cs[0] = 0.0;
    if (cs.back() == 0.0) cs.back() = 0.5;
    return oscint::Poly::from_double(std::move(cs));
}

inline oscint::Poly random_odd_poly(Rng& rng, int max_degree) {
    int d = rng.uniform_int(1, max_degree);
    if (d % 2 == 0) d -= 1;
    std::vector<double> cs(static_cast<size_t>(d) + 1, 0.0);
    for (int j = 1; j <= d; j += 2) cs[static_cast<size_t>(j)] = rng.uniform(-1.0, 1.0);
    if (cs.back() == 0.0) cs.back() = 0.7;
    return oscint::Poly::from_double(std::move(cs));
}

inline oscint::Poly random_even_poly(Rng& rng, int max_degree) {
    int d = rng.uniform_int(2, max_degree);
    if (d % 2 == 1) d -= 1;
    std::vector<double> cs(static_cast<size_t>(d) + 1, 0.0);
    for (int j = 0; j <= d; j += 2) cs[static_cast<size_t>(j)] = rng.uniform(-1.0, 1.0);
    if (cs.back() == 0.0) cs.back() = 0.7;
    return oscint::Poly::from_double(std::move(cs));
}

// measure of {t in [lo,hi] : |h(t)| <= alpha} by grid scan with cell bisection
// at the sign changes of |h| - alpha
inline double grid_sublevel_measure(const oscint::Poly& h, double alpha, double lo, double hi,
                                    double step) {
    auto g = [&](double t) { return std::fabs(h.eval(t)) - alpha; };
    long n = static_cast<long>(std::ceil((hi - lo) / step));
    double measure = 0;
    double prev_t = lo, prev_g = g(lo);
    for (long i = 1; i <= n; ++i) {
        double t = (i == n) ? hi : lo + double(i) * step;
        double gv = g(t);
        double a = prev_t, b = t, ga = prev_g, gb = gv;
        if (ga <= 0 && gb <= 0) {
            measure += b - a;
        } else if (ga * gb < 0) {
            for (int it = 0; it < 60; ++it) {
                double m = 0.5 * (a + b), gm = g(m);
                if ((gm <= 0) == (ga <= 0)) { a = m; ga = gm; }
                else { b = m; gb = gm; }
            }
            double crossing = 0.5 * (a + b);
            if (prev_g <= 0) measure += crossing - prev_t;
            else measure += t - crossing;
        }
        prev_t = t;
        prev_g = gv;
    }
    return measure;
}

} // namespace testing_oracles

#pragma once

// Core oscillatory quadrature engine: int_a^b e^{iP(t)} w(t) dt for a
// polynomial phase P and weight w in {1, 1/t}, with b possibly infinite.
//
// Strategy: split [a,b] at the real critical points of P, then walk each
// monotone-phase piece in quarter-period panels (boundaries where P crosses
// multiples of pi/2, located by exact phase differences). Panel sums form the
// sin/cos lobe series; on the final ray the alternating lobe series is summed
// with an Euler-transform tail estimate, with a van der Corput bound
// 2 w(t)/|P'(t)| as the fallback cutoff certificate. Finite pieces whose phase
// range is too large to walk are covered from both ends, and the skipped
// middle is bounded through |P'|-monotone subintervals (second mean value
// theorem), the bound going into the reported error.

#include "oscint/phase.hpp"
#include "oscint/poly.hpp"

#include <complex>
#include <vector>

namespace oscint {

enum class Weight { unit, inv_t };

struct OscParams {
    double tol = 1e-9;
    long max_lobes = 1000000;
    // all critical/inflection points of the phase are known to lie below this
    // (structural hint for the extremal polynomials); <= 0 means use the
    // Cauchy root bound
    double no_critical_beyond = -1.0;
};

struct OscResult {
    std::complex<double> value{0.0, 0.0};
    double abs_error = 0;
    long lobe_count = 0;          // completed sin half-period lobes
    double truncation_radius = 0; // where the infinite tail was certified and cut
    bool converged = false;
    // |sin-lobe| magnitudes on the final monotone ray and the index after
    // which the tail bound was taken (diagnostics for the remainder checks)
    std::vector<double> ray_sin_lobes;
    long ray_cutoff = -1;
};

OscResult oscillatory_integral(const Poly& p, Weight w, double a, double b,
                               const OscParams& prm = {});

} // namespace oscint

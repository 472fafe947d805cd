#pragma once

// I(P) = |p.v. int_R e^{iP(t)} dt/t| and its truncated and partial variants.
//
// Folding the principal value symmetrically gives
//   p.v. int e^{iP} dt/t = int_0^inf [e^{iP(t)} - e^{iP(-t)}] dt/t,
// continuous at 0 once the constant term is dropped (a constant phase factors
// out of the modulus). For odd P this is 2i int_0^inf sin(P)/t dt.

#include "oscint/oscillate.hpp"
#include "oscint/poly.hpp"

#include <complex>

namespace oscint {

struct PVResult {
    double value = 0;             // the modulus, >= 0
    double abs_error_est = 0;
    double truncation_radius = 0; // where the tail was certified and cut
    long lobe_count = 0;
    bool converged = false;       // implies abs_error_est <= requested tol
};

struct PVHints {
    // structural bound on the critical points of the phase (extremal
    // polynomials have none beyond t = 3); <= 0 means use the Cauchy bound
    double no_critical_beyond = -1.0;
    long max_lobes = 1000000;
};

// Diagnostics beyond the spec fields, for the remainder/monotonicity checks.
struct PVDetail {
    PVResult result;
    std::complex<double> complex_value{0, 0};
    std::vector<double> ray_sin_lobes;
    long ray_cutoff = -1;
};

PVResult pv_integral(const Poly& p, double tol = 1e-9, const PVHints& hints = {});
PVDetail pv_integral_detail(const Poly& p, double tol = 1e-9, const PVHints& hints = {});

struct PVComplex {
    std::complex<double> value{0, 0};
    double abs_error_est = 0;
    long lobe_count = 0;
    bool converged = false;
};

// int_{eps <= |t| <= R} e^{iP(t)} dt/t as a complex value.
PVComplex pv_integral_truncated(const Poly& p, double eps, double R, double tol = 1e-9,
                                const PVHints& hints = {});

// int_0^1 sin(p(t))/t dt for odd p, signed; unit_interval_part is its modulus.
double unit_interval_signed(const Poly& p, double tol = 1e-9);
double unit_interval_part(const Poly& p, double tol = 1e-9);

struct TailPart {
    double value = 0;            // int_{T0}^inf sin(p(t))/t dt, signed
    double remainder_bound = 0;  // certified bound used at the cutoff
    double truncation_radius = 0;
    long lobe_count = 0;
};

TailPart tail_part(const Poly& p, double T0, double tol = 1e-9, const PVHints& hints = {});

} // namespace oscint

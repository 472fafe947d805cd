#pragma once

#include <functional>
#include <vector>

namespace oscint {

struct QuadResult {
    double value = 0;
    double abs_error = 0;
    int panels = 0;
    bool converged = false;
};

// 15-point Kronrod / 7-point Gauss pair on [a,b] with a QUADPACK-style
// error estimate.
QuadResult quad_gk15(const std::function<double(double)>& f, double a, double b);

// Globally adaptive bisection driven by the worst-panel error. Stops when the
// summed error estimate drops below max(abs_tol, rel_tol*|I|).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol = 0.0, int max_panels = 4000);

// Same, but the initial panels are split at the given interior breakpoints
// (kinks of piecewise integrands).
QuadResult integrate_adaptive_pts(const std::function<double(double)>& f,
                                  const std::vector<double>& breakpoints, double a, double b,
                                  double abs_tol, double rel_tol = 0.0, int max_panels = 4000);

// Throws ToleranceNotMet unless r.converged.
double require_converged(const QuadResult& r, double abs_tol);

// The 15-point Kronrod / 7-point Gauss tables (QUADPACK), for callers that
// build their own panel sums.
struct GK15Nodes {
    static const double x[8];  // nonnegative abscissae, x[7] = 0
    static const double wk[8]; // Kronrod weights
    static const double wg[4]; // Gauss weights for x[1], x[3], x[5], x[7]
};

} // namespace oscint

#pragma once

// The second difference A(x,t) = |f(t+x) + f(t-x) - 2 f(t)| and the seven-region
// double integral D_n = int_0^2 int_0^1 A(x,t)/t dt phi_n(x) dx bounding
// |I_1(P_n) - I(f)|. Regions follow the proof's split; the inner t-integral is
// piecewise |linear|/t and is evaluated in closed form between kink lines.

#include "oscint/extremal.hpp"

#include <array>
#include <string>

namespace oscint {

struct RegionValue {
    std::string name;
    double value = 0;
};

struct DiscrepancyReport {
    int n = 0;
    double D_n = 0;               // sum of the seven regions
    std::array<RegionValue, 7> region_values;
    double ratio = 0;             // D_n / log n
};

// A(x,t), exact piecewise-linear arithmetic in double.
double second_difference(int n, double x, double t);

// The seven-region decomposition of int_0^2 int_0^1 A/t dt phi_n dx. For n >= 4
// the regions tile the domain exactly; for n in {2,3} they overlap and the sum
// is an upper bound for the integral (A >= 0), which is the direction every
// downstream use needs.
DiscrepancyReport discrepancy_integral(int n, double tol = 1e-9);

// int_0^2 A(x,t) phi_n(x) dx, the certified envelope for |P_n(t) - f(t)|,
// 0 <= t <= 1.
double pointwise_gap(int n, double t, double tol = 1e-10);

} // namespace oscint

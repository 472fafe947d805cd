#include "oscint/discrepancy.hpp"

#include "oscint/errors.hpp"
#include "oscint/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oscint {

namespace {

// signed second difference g(x,t) = f(t+x) + f(t-x) - 2 f(t)
double second_diff_signed(const TrapezoidProfile& f, double x, double t) {
    return f(t + x) + f(t - x) - 2.0 * f(t);
}

double second_diff_slope(const TrapezoidProfile& f, double x, double t) {
    return f.slope(t + x) + f.slope(t - x) - 2.0 * f.slope(t);
}

// t-breakpoints of A(x, .) on [t1, t2] for fixed x
std::vector<double> t_breakpoints(const TrapezoidProfile& f, double x, double t1, double t2) {
    double s = 1.0 / f.n;
    const double K[6] = {-1.0, -1.0 + s, -s, s, 1.0 - s, 1.0};
    std::vector<double> pts;
    for (double k : K) {
        pts.push_back(k);
        pts.push_back(k - x);
        pts.push_back(k + x);
    }
    std::vector<double> out;
    for (double p : pts)
        if (p > t1 && p < t2) out.push_back(p);
    out.push_back(t1);
    out.push_back(t2);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// int_{t1}^{t2} A(x,t)/t dt in closed form (A is |linear| between kink lines)
double inner_integral(const TrapezoidProfile& f, double x, double t1, double t2) {
    if (!(t2 > t1)) return 0.0;
    auto pts = t_breakpoints(f, x, t1, t2);
    double total = 0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double a = pts[i], b = pts[i + 1];
        double mid = 0.5 * (a + b);
        double d = second_diff_slope(f, x, mid);
        double c = second_diff_signed(f, x, mid) - d * mid;
        if (a <= 0.0) c = 0.0; // g(0) = 0 by oddness: the first cell is d*t exactly
        // zero of c + d t inside the cell splits the sign
        std::vector<double> cell{a, b};
        if (d != 0.0) {
            double z = -c / d;
            if (z > a && z < b) cell = {a, z, b};
        }
        for (size_t j = 0; j + 1 < cell.size(); ++j) {
            double u = cell[j], v = cell[j + 1];
            double piece;
            if (u <= 0.0) piece = std::fabs(d) * (v - u); // c = 0 on this cell
            else piece = std::fabs(c * std::log(v / u) + d * (v - u));
            total += piece;
        }
    }
    return total;
}

std::vector<double> x_hint_points(int n) {
    double s = 1.0 / n;
    std::vector<double> pts;
    for (int i = 0; i <= std::min(4 * n, 256); ++i) pts.push_back(i * s * 0.5);
    for (double b : {0.5 - 2 * s, 0.5 - s, 0.5, 0.5 + s, 1.0 - 2 * s, 1.0 - s, 1.0,
                     1.0 + s, 1.5 - s, 1.5, 1.5 + s, 2.0 - s})
        pts.push_back(b);
    return pts;
}

// outer integral of inner(x; tlo(x), thi(x)) * phi_n(x) over [xlo, xhi]
double region_integral(const TrapezoidProfile& f, const SmoothingKernel& phi, double xlo,
                       double xhi, const std::function<double(double)>& tlo,
                       const std::function<double(double)>& thi, double tol) {
    if (!(xhi > xlo)) return 0.0;
    auto integrand = [&](double x) {
        double a = tlo(x), b = thi(x);
        if (!(b > a)) return 0.0;
        return inner_integral(f, x, a, b) * phi(x);
    };
    QuadResult r = integrate_adaptive_pts(integrand, x_hint_points(f.n), xlo, xhi, tol, 1e-13, 60000);
    return require_converged(r, tol);
}

} // namespace

double second_difference(int n, double x, double t) {
    TrapezoidProfile f(n);
    return std::fabs(second_diff_signed(f, x, t));
}

DiscrepancyReport discrepancy_integral(int n, double tol) {
    if (n < 2) throw Error("discrepancy_integral: n must be >= 2");
    if (!(tol > 0)) throw InvalidTolerance(tol);
    TrapezoidProfile f(n);
    SmoothingKernel phi(n);
    double s = 1.0 / n;
    double rt = tol / 7.0;

    auto cons = [](double v) { return [v](double) { return v; }; };

    DiscrepancyReport rep;
    rep.n = n;
    // the proof's seven integrals, in its order
    rep.region_values[0] = {"t_large", region_integral(f, phi, 0.0, 2.0, cons(0.5), cons(1.0), rt)};
    rep.region_values[1] = {"corner",
                            region_integral(f, phi, 0.0, s, cons(0.0), [](double x) { return x; }, rt)};
    rep.region_values[2] = {"t_small", region_integral(f, phi, s, 2.0, cons(0.0), cons(s), rt)};
    rep.region_values[3] = {"diag_band",
                            region_integral(f, phi, 0.0, s, [](double x) { return x; },
                                            [s](double x) { return x + s; }, rt)};
    rep.region_values[4] = {"plateau", 0.0}; // A vanishes identically there
    rep.region_values[5] = {"mid_band",
                            region_integral(f, phi, s, 0.5 - s, cons(s),
                                            [s](double x) { return x + s; }, rt)};
    rep.region_values[6] = {"x_large", region_integral(f, phi, 0.5 - s, 2.0, cons(s), cons(0.5), rt)};

    rep.D_n = 0;
    for (const auto& rv : rep.region_values) rep.D_n += rv.value;
    rep.ratio = rep.D_n / std::log(double(n));
    return rep;
}

double pointwise_gap(int n, double t, double tol) {
    if (t < 0.0 || t > 1.0) throw Error("pointwise_gap: t must be in [0,1]");
    if (!(tol > 0)) throw InvalidTolerance(tol);
    TrapezoidProfile f(n);
    SmoothingKernel phi(n);
    double s = 1.0 / n;
    std::vector<double> pts;
    const double K[6] = {-1.0, -1.0 + s, -s, s, 1.0 - s, 1.0};
    for (double k : K) {
        pts.push_back(k - t);
        pts.push_back(k + t);
        pts.push_back(-k + t);
        pts.push_back(-k - t);
    }
    auto integrand = [&](double x) {
        return std::fabs(second_diff_signed(f, x, t)) * phi(x);
    };
    QuadResult r = integrate_adaptive_pts(integrand, pts, 0.0, 2.0, tol, 1e-13, 60000);
    return require_converged(r, tol);
}

} // namespace oscint

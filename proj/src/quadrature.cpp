#include "oscint/quadrature.hpp"

#include "oscint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace oscint {

namespace {

// QUADPACK dqk15 nodes and weights.
const double kXGK[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double kWGK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kWG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fc = f(c);
    double resg = kWG[3] * fc;
    double resk = kWGK[7] * fc;
    double resabs = std::fabs(resk);
    double fv[15];
    fv[7] = fc;
    for (int i = 0; i < 7; ++i) {
        double dx = h * kXGK[i];
        double f1 = f(c - dx), f2 = f(c + dx);
        fv[i] = f1;
        fv[14 - i] = f2;
        resk += kWGK[i] * (f1 + f2);
        resabs += kWGK[i] * (std::fabs(f1) + std::fabs(f2));
        if (i % 2 == 1) resg += kWG[i / 2] * (f1 + f2);
    }
    double reskh = 0.5 * resk;
    double resasc = kWGK[7] * std::fabs(fc - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWGK[i] * (std::fabs(fv[i] - reskh) + std::fabs(fv[14 - i] - reskh));

    double value = resk * h;
    resabs *= std::fabs(h);
    resasc *= std::fabs(h);
    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(eps * 50.0 * resabs, err);
    return {a, b, value, err};
}

} // namespace

QuadResult quad_gk15(const std::function<double(double)>& f, double a, double b) {
    Panel p = gk15_panel(f, a, b);
    return {p.value, p.err, 1, true};
}

QuadResult integrate_adaptive_pts(const std::function<double(double)>& f,
                                  const std::vector<double>& breakpoints, double a, double b,
                                  double abs_tol, double rel_tol, int max_panels) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::priority_queue<Panel> heap;
    double value = 0, err = 0;
    int panels = 0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        Panel p = gk15_panel(f, pts[i], pts[i + 1]);
        value += p.value;
        err += p.err;
        ++panels;
        heap.push(p);
    }
    auto target = [&] { return std::max(abs_tol, rel_tol * std::fabs(value)); };
    while (err > target() && panels < max_panels && !heap.empty()) {
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) continue; // cannot split further
        Panel l = gk15_panel(f, worst.a, mid);
        Panel r = gk15_panel(f, mid, worst.b);
        value += l.value + r.value - worst.value;
        err += l.err + r.err - worst.err;
        ++panels;
        heap.push(l);
        heap.push(r);
    }
    return {value, err, panels, err <= target()};
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_panels) {
    return integrate_adaptive_pts(f, {}, a, b, abs_tol, rel_tol, max_panels);
}

double require_converged(const QuadResult& r, double abs_tol) {
    if (!r.converged) throw ToleranceNotMet(abs_tol, r.abs_error);
    return r.value;
}

const double GK15Nodes::x[8] = {kXGK[0], kXGK[1], kXGK[2], kXGK[3], kXGK[4], kXGK[5], kXGK[6], kXGK[7]};
const double GK15Nodes::wk[8] = {kWGK[0], kWGK[1], kWGK[2], kWGK[3], kWGK[4], kWGK[5], kWGK[6], kWGK[7]};
const double GK15Nodes::wg[4] = {kWG[0], kWG[1], kWG[2], kWG[3]};

} // namespace oscint

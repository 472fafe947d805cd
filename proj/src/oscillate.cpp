#include "oscint/oscillate.hpp"

#include "oscint/errors.hpp"
#include "oscint/quadrature.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>

namespace oscint {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();
const double HALF_PI = 0.5 * M_PI;

// w(t): 1, 1/t, or 1/(c - t) (the last appears in reflected walks from the
// right end of a piece). Monotone on every interval we use it on.
struct WeightFn {
    enum Kind { unit, inv, inv_reflected } kind = unit;
    double c = 0;
    double operator()(double t) const {
        switch (kind) {
            case unit: return 1.0;
            case inv: return 1.0 / t;
            default: return 1.0 / (c - t);
        }
    }
};

struct CPanel {
    std::complex<double> value{0, 0};
    double err = 0;
};

// Complex Gauss-Kronrod panel for e^{i psi(t)} w(t), psi supplied through the
// principal phase (so huge phases stay accurate).
CPanel gk15_complex(const std::function<std::complex<double>(double)>& f, double a, double b) {
    const double* xg = GK15Nodes::x;
    const double* wk = GK15Nodes::wk;
    const double* wg = GK15Nodes::wg;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::complex<double> fc = f(c);
    std::complex<double> resg = wg[3] * fc, resk = wk[7] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = h * xg[i];
        std::complex<double> f1 = f(c - dx), f2 = f(c + dx);
        resk += wk[i] * (f1 + f2);
        if (i % 2 == 1) resg += wg[i / 2] * (f1 + f2);
    }
    CPanel out;
    out.value = resk * h;
    double raw = std::abs((resk - resg) * h);
    out.err = raw + 3e-15 * std::abs(out.value);
    return out;
}

// simple bisection-based complex adaptive for the terminal (sub-quarter) panels
CPanel complex_adaptive(const std::function<std::complex<double>(double)>& f, double a, double b,
                        double tol, int max_depth = 40) {
    struct Node { double a, b; int depth; };
    std::vector<Node> stack{{a, b, 0}};
    CPanel total;
    while (!stack.empty()) {
        Node nd = stack.back();
        stack.pop_back();
        CPanel p = gk15_complex(f, nd.a, nd.b);
        double share = tol * (nd.b - nd.a) / (b - a);
        if (p.err <= std::max(share, 1e-18) || nd.depth >= max_depth) {
            total.value += p.value;
            total.err += p.err;
        } else {
            double mid = 0.5 * (nd.a + nd.b);
            stack.push_back({nd.a, mid, nd.depth + 1});
            stack.push_back({mid, nd.b, nd.depth + 1});
        }
    }
    return total;
}

// Alternating lobe series with a sliding unsummed window. tail() estimates the
// pending-plus-future remainder by the Euler transform of the window when its
// difference table is (numerically) totally monotone, otherwise falls back to
// the plain first-omitted-lobe bound.
class AltSeries {
public:
    static constexpr size_t W = 12;

    void push(double lobe, double err) {
        pending_.push_back(lobe);
        pend_err_.push_back(err);
        mags_.push_back(std::fabs(lobe));
        if (pending_.size() > W) {
            summed_ += pending_.front();
            summed_err_ += pend_err_.front();
            pending_.pop_front();
            pend_err_.pop_front();
        }
    }

    size_t count() const { return mags_.size(); }
    const std::vector<double>& magnitudes() const { return mags_; }
    double summed() const { return summed_; }
    double summed_err() const { return summed_err_; }

    // pending lobes summed exactly, no claim about the future
    double pending_sum() const {
        double s = 0;
        for (double v : pending_) s += v;
        return s;
    }
    double pending_err() const {
        double s = 0;
        for (double v : pend_err_) s += v;
        return s;
    }
    size_t pending_count() const { return pending_.size(); }

    struct Tail {
        double estimate = 0;
        double error = INF;
        bool accelerated = false;
    };

    Tail tail() const {
        size_t n = pending_.size();
        if (n == 0) return {0, 0, false};
        double noise = pending_err() + 1e-300;
        std::vector<double> m(n);
        bool alternating = true, decreasing = true;
        for (size_t i = 0; i < n; ++i) m[i] = std::fabs(pending_[i]);
        for (size_t i = 0; i + 1 < n; ++i) {
            if (pending_[i] * pending_[i + 1] >= 0) alternating = false;
            if (m[i + 1] > m[i] + noise) decreasing = false;
        }
        if (!alternating || !decreasing) return {0, INF, false};

        Tail plain;
        plain.estimate = pending_sum();
        plain.error = m.back() + noise;
        plain.accelerated = false;
        if (n < 6) return plain;

        // forward difference table of the magnitudes
        std::vector<std::vector<double>> tab;
        tab.push_back(m);
        size_t kmax = std::min<size_t>(n - 2, 9);
        for (size_t k = 1; k <= kmax; ++k) {
            const auto& prev = tab.back();
            std::vector<double> row(prev.size() - 1);
            for (size_t i = 0; i + 1 < prev.size(); ++i) row[i] = prev[i + 1] - prev[i];
            tab.push_back(std::move(row));
        }
        auto bval = [&](size_t k, size_t i) { // (-1)^k Delta^k m at anchor i
            double v = tab[k][i];
            return (k % 2 == 1) ? -v : v;
        };
        // largest depth at which total monotonicity is still visible over noise
        size_t J = 0;
        double amp = 2.0;
        for (size_t k = 1; k <= kmax && tab[k].size() >= 2; ++k) {
            amp *= 2.0;
            double b0 = bval(k, 0), b1 = bval(k, 1);
            if (b0 < -amp * noise || b1 < -amp * noise) break;
            if (bval(k, 0) > bval(k - 1, 0) + amp * noise) break;
            J = k;
        }
        if (J < 1) return plain;
        double sigma = pending_[0] > 0 ? 1.0 : -1.0;
        double est = 0, pw = 0.5;
        for (size_t k = 0; k < J; ++k) {
            est += std::max(bval(k, 0), 0.0) * pw;
            pw *= 0.5;
        }
        Tail acc;
        acc.estimate = sigma * est;
        acc.error = std::max(bval(J, 0), 0.0) * std::pow(0.5, double(J) - 1.0) + 6.0 * noise;
        acc.accelerated = true;
        return acc.error < plain.error ? acc : plain;
    }

private:
    std::deque<double> pending_, pend_err_;
    std::vector<double> mags_;
    double summed_ = 0, summed_err_ = 0;
};

// ------------------------------------------------------------------ walker

struct WalkOutcome {
    enum Status { reached_cap, stopped_vdc, stopped_accel, panel_budget } status = reached_cap;
    std::complex<double> value{0, 0};
    double err = 0;
    double t_end = 0;
    double stop_bound = 0; // future-remainder bound when stopped
    long quarter_panels = 0;
    long sin_lobes = 0;
    std::vector<double> sin_mags;
    long cutoff = -1;
};

// Walks [t0, cap] left to right in quarter-period phase panels. The phase used
// is psi = dir * P (dir = sign of P' on the piece), so psi is increasing; when
// dir < 0 the caller conjugates the result.
//
// stop_threshold > 0 enables the van der Corput stop (local bound
// (w + |dw|) * 2 / |P'| below threshold); use_accel enables the Euler tail
// stop (valid only on a final ray where |P'| is monotone beyond the walk).
struct Walker {
    const PhaseEvaluator& ph;
    WeightFn w;
    int dir = +1;
    long max_quarter_panels = 2000000;
    // per-panel refinement target: base/(m^2+16) keeps the total quadrature
    // error summable no matter how many lobes the walk takes
    double panel_tol_base = 1e-12;

    WalkOutcome run(double t0, double cap, double stop_threshold, bool use_accel,
                    double accel_budget) const {
        WalkOutcome out;
        out.t_end = t0;
        auto anchor = ph.make_anchor(t0);
        auto psi_diff = [&](double t) { return double(dir) * ph.diff_from(anchor, t); };
        auto integrand = [&](double t) -> std::complex<double> {
            double pr = double(dir) * ph.value(t).principal;
            return std::complex<double>(std::cos(pr), std::sin(pr)) * w(t);
        };

        double p0 = double(dir) * ph.value(t0).principal; // psi(t0) in [-pi, pi]
        long long qc = static_cast<long long>(std::floor(p0 / HALF_PI));
        if (p0 - double(qc) * HALF_PI >= HALF_PI) ++qc; // guard rounding at the boundary
        double r0 = p0 - double(qc) * HALF_PI;          // in [0, pi/2)

        AltSeries sin_ser, cos_ser;
        std::complex<double> direct{0, 0};
        double direct_err = 0;
        // open window accumulators
        double sin_acc = 0, sin_acc_err = 0;
        double cos_acc = 0, cos_acc_err = 0;
        bool sin_open_full = (r0 == 0.0) && (qc % 2 == 0);
        bool cos_open_full = (r0 == 0.0) && (qc % 2 != 0);
        long long q_panel = qc;     // quarter being covered by the next panel
        double target = HALF_PI - r0;
        double t_cur = t0;

        auto close_sin = [&](bool full) {
            if (full) sin_ser.push(sin_acc, sin_acc_err);
            else { direct.imag(direct.imag() + sin_acc); direct_err += sin_acc_err; }
            sin_acc = 0; sin_acc_err = 0;
        };
        auto close_cos = [&](bool full) {
            if (full) cos_ser.push(cos_acc, cos_acc_err);
            else { direct.real(direct.real() + cos_acc); direct_err += cos_acc_err; }
            cos_acc = 0; cos_acc_err = 0;
        };

        auto finish_direct = [&]() {
            // cap reached: everything pending and open is summed exactly
            out.value = direct + std::complex<double>(cos_ser.summed() + cos_ser.pending_sum() + cos_acc,
                                                      sin_ser.summed() + sin_ser.pending_sum() + sin_acc);
            out.err = direct_err + cos_ser.summed_err() + cos_ser.pending_err() + cos_acc_err +
                      sin_ser.summed_err() + sin_ser.pending_err() + sin_acc_err;
        };

        const bool has_cap = std::isfinite(cap);
        const double d_cap_total = has_cap ? psi_diff(cap) : INF;
        double g_cur = 0.0; // psi_diff(t_cur), maintained across panels

        while (true) {
            if (out.quarter_panels >= max_quarter_panels) {
                finish_direct();
                out.status = WalkOutcome::panel_budget;
                out.sin_mags = sin_ser.magnitudes();
                return out;
            }
            // locate the next quarter crossing or the cap
            if (has_cap && !(d_cap_total > target)) {
                // terminal: less than a quarter period left
                if (cap > t_cur) {
                    CPanel p = complex_adaptive(integrand, t_cur, cap, 1e-13);
                    // goes into the open windows (they will close as partial)
                    sin_acc += p.value.imag();
                    cos_acc += p.value.real();
                    sin_acc_err += p.err;
                    cos_acc_err += p.err;
                }
                close_sin(false);
                close_cos(false);
                out.t_end = cap;
                finish_direct();
                out.status = WalkOutcome::reached_cap;
                out.sin_mags = sin_ser.magnitudes();
                return out;
            }
            double step_hint = HALF_PI / std::max(ph.deriv_abs(t_cur), 1e-300);
            step_hint = std::min(step_hint, std::max(1.0, std::fabs(t_cur)));
            double t_next = solve_crossing(psi_diff, t_cur, g_cur, cap, target, step_hint);
            g_cur = target; // crossing solved to the grid value
            CPanel p = gk15_complex(integrand, t_cur, t_next);
            double ptol = panel_tol_base / (double(out.quarter_panels) * double(out.quarter_panels) + 16.0);
            if (p.err > ptol) p = complex_adaptive(integrand, t_cur, t_next, ptol);
            ++out.quarter_panels;
            sin_acc += p.value.imag();
            cos_acc += p.value.real();
            sin_acc_err += p.err;
            cos_acc_err += p.err;

            bool closed_sin = false;
            if ((q_panel % 2 + 2) % 2 == 1) { // finished quarters {2m, 2m+1}
                close_sin(sin_open_full);
                sin_open_full = true;
                closed_sin = true;
                ++out.sin_lobes;
            } else { // finished quarters {2v-1, 2v}
                close_cos(cos_open_full);
                cos_open_full = true;
            }

            t_cur = t_next;
            out.t_end = t_cur;
            ++q_panel;
            target += HALF_PI;

            if (closed_sin && stop_threshold > 0) {
                double dp = ph.deriv_abs(t_cur);
                double wv = std::fabs(w(t_cur));
                double bound = dp > 0 ? 2.0 * wv / dp : INF;
                if (bound < stop_threshold) {
                    // pending lobes are known; only the future is bounded
                    out.value = direct + std::complex<double>(cos_ser.summed() + cos_ser.pending_sum() + cos_acc,
                                                              sin_ser.summed() + sin_ser.pending_sum() + sin_acc);
                    out.err = direct_err + cos_ser.summed_err() + cos_ser.pending_err() + cos_acc_err +
                              sin_ser.summed_err() + sin_ser.pending_err() + sin_acc_err + bound;
                    out.stop_bound = bound;
                    out.status = WalkOutcome::stopped_vdc;
                    out.sin_mags = sin_ser.magnitudes();
                    out.cutoff = static_cast<long>(out.sin_mags.size());
                    return out;
                }
                if (use_accel && sin_ser.pending_count() >= 8 && cos_ser.pending_count() >= 8) {
                    auto ts = sin_ser.tail();
                    auto tc = cos_ser.tail();
                    double tail_err = ts.error + tc.error;
                    if (std::isfinite(tail_err) && tail_err < accel_budget) {
                        out.value = direct + std::complex<double>(cos_ser.summed() + tc.estimate,
                                                                  sin_ser.summed() + ts.estimate);
                        out.err = direct_err + cos_ser.summed_err() + sin_ser.summed_err() + tail_err;
                        out.stop_bound = tail_err;
                        out.status = WalkOutcome::stopped_accel;
                        out.sin_mags = sin_ser.magnitudes();
                        out.cutoff = static_cast<long>(out.sin_mags.size() - sin_ser.pending_count());
                        return out;
                    }
                }
            }
        }
    }

    static double solve_crossing(const std::function<double(double)>& g, double t_lo, double g_lo,
                                 double cap, double target, double step_hint) {
        // bracket: g is increasing, g(t_lo) = g_lo < target (<= g(cap) if finite)
        double glo = g_lo;
        double hi = t_lo, ghi = glo;
        double step = std::max(step_hint, 1e-12 * std::max(1.0, std::fabs(t_lo)));
        for (int i = 0; i < 200; ++i) {
            hi = std::min(cap, hi + step);
            ghi = g(hi);
            if (ghi >= target || hi >= cap) break;
            step *= 2.0;
        }
        double lo = t_lo;
        for (int it = 0; it < 200; ++it) {
            if (hi - lo <= 1e-15 * std::max(1.0, std::fabs(hi))) break;
            double mid;
            if (std::isfinite(ghi) && std::isfinite(glo) && ghi > glo) {
                mid = lo + (target - glo) / (ghi - glo) * (hi - lo); // secant
                double m0 = lo + 0.03 * (hi - lo), m1 = hi - 0.03 * (hi - lo);
                mid = std::min(std::max(mid, m0), m1);
            } else {
                mid = 0.5 * (lo + hi);
            }
            double gm = g(mid);
            if (std::fabs(gm - target) < 1e-10) return mid;
            if (gm < target) { lo = mid; glo = gm; }
            else { hi = mid; ghi = gm; }
        }
        return 0.5 * (lo + hi);
    }
};

// -------------------------------------------------------------- piece logic

struct EngineState {
    const Poly* p = nullptr;
    std::unique_ptr<PhaseEvaluator> ph;
    std::vector<double> crit, infl;
    long max_quarter = 2000000;
    long quarter_used = 0;
    std::vector<double> ray_sin_mags;
    long ray_cutoff = -1;
};

int phase_direction(const PhaseEvaluator& ph, const Poly& dp, double u, double v) {
    double mid = 0.5 * (u + v);
    double d = dp.eval(mid);
    if (d != 0.0) return d > 0 ? +1 : -1;
    (void)ph;
    return dp.eval(0.75 * v + 0.25 * u) >= 0 ? +1 : -1;
}

// |P'|-monotone subintervals of [a,b] from the inflection points; returns the
// certified bound for |int_a^b e^{iP} w|.
double skipped_middle_bound(const PhaseEvaluator& ph, const WeightFn& w,
                            const std::vector<double>& infl, double a, double b) {
    std::vector<double> pts{a};
    for (double x : infl)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    double bound = 0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double mu = std::min(ph.deriv_abs(pts[i]), ph.deriv_abs(pts[i + 1]));
        double wa = std::fabs(w(pts[i])), wb = std::fabs(w(pts[i + 1]));
        double wfac = std::max(wa, wb) + std::fabs(wb - wa);
        bound += mu > 0 ? 2.0 * wfac / mu : INF;
    }
    return bound;
}

// Coefficients of p(c - tau).
Poly reflect_about(const Poly& p, const Rational& c) {
    auto a = p.rational_coeffs();
    int d = p.degree();
    std::vector<Rational> q(static_cast<size_t>(d) + 1, Rational(0));
    // q_j = (-1)^j sum_{i >= j} a_i C(i, j) c^(i-j)
    std::vector<Rational> cpow(static_cast<size_t>(d) + 1);
    cpow[0] = 1;
    for (int i = 1; i <= d; ++i) cpow[static_cast<size_t>(i)] = cpow[static_cast<size_t>(i - 1)] * c;
    for (int j = 0; j <= d; ++j) {
        Rational s(0);
        for (int i = j; i <= d; ++i)
            s += a[static_cast<size_t>(i)] *
                 Rational(binomial(static_cast<unsigned long>(i), static_cast<unsigned long>(j))) *
                 cpow[static_cast<size_t>(i - j)];
        q[static_cast<size_t>(j)] = (j % 2 == 0) ? s : -s;
    }
    return Poly::from_rational(std::move(q));
}

struct PieceResult {
    std::complex<double> value{0, 0};
    double err = 0;
    long sin_lobes = 0;
};

// One monotone-phase piece [u, v]; phase range may be astronomically large.
PieceResult integrate_piece(EngineState& st, const WeightFn& w, double u, double v,
                            double budget) {
    PieceResult out;
    if (!(v > u)) return out;
    const PhaseEvaluator& ph = *st.ph;
    int dir = phase_direction(ph, st.p->derivative(), u, v);

    double range = std::fabs(ph.diff(v, u));
    const double direct_range = 400.0 * M_PI;

    Walker fwd{ph, w, dir, st.max_quarter - st.quarter_used, budget / 8.0};
    if (!(range > direct_range)) {
        WalkOutcome o = fwd.run(u, v, 0.0, false, 0.0);
        st.quarter_used += o.quarter_panels;
        if (o.status == WalkOutcome::panel_budget)
            throw NotConverged("oscillatory piece exceeded the lobe budget");
        out.value = dir > 0 ? o.value : std::conj(o.value);
        out.err = o.err;
        out.sin_lobes = o.sin_lobes;
        return out;
    }

    // ends-walk with a certified skip of the huge-phase middle
    double threshold = budget / 16.0;
    for (int attempt = 0; attempt < 3; ++attempt) {
        WalkOutcome left = fwd.run(u, v, threshold, false, 0.0);
        st.quarter_used += left.quarter_panels;
        if (left.status == WalkOutcome::reached_cap) {
            // the walk covered the whole piece before the bound got small
            out.value = dir > 0 ? left.value : std::conj(left.value);
            out.err = left.err;
            out.sin_lobes = left.sin_lobes;
            return out;
        }
        if (left.status == WalkOutcome::panel_budget)
            throw NotConverged("oscillatory piece exceeded the lobe budget");

        // mirrored walk from the right end: tau -> P(v - tau)
        Poly refl = reflect_about(*st.p, rational_from_double(v));
        PhaseEvaluator rph(refl);
        WeightFn rw;
        if (w.kind == WeightFn::unit) rw = WeightFn{WeightFn::unit, 0};
        else if (w.kind == WeightFn::inv) rw = WeightFn{WeightFn::inv_reflected, v};
        else rw = WeightFn{WeightFn::inv, 0}; // 1/(c - (v - tau)) with c == v would be 1/tau
        // phase direction of P(v - tau) in tau is -dir... derivative flips sign
        Walker bwd{rph, rw, -dir, st.max_quarter - st.quarter_used, budget / 8.0};
        WalkOutcome right = bwd.run(0.0, v - left.t_end, threshold, false, 0.0);
        st.quarter_used += right.quarter_panels;
        if (right.status == WalkOutcome::panel_budget)
            throw NotConverged("oscillatory piece exceeded the lobe budget");
        if (right.status == WalkOutcome::reached_cap) {
            // met the left walk: piece fully covered, drop the left stop bound
            std::complex<double> lv = dir > 0 ? left.value : std::conj(left.value);
            std::complex<double> rv = (-dir) > 0 ? right.value : std::conj(right.value);
            out.value = lv + rv;
            out.err = (left.err - left.stop_bound) + right.err;
            out.sin_lobes = left.sin_lobes + right.sin_lobes;
            return out;
        }

        double tL = left.t_end, tR = v - right.t_end;
        double mid_bound = skipped_middle_bound(ph, w, st.infl, tL, tR);
        if (mid_bound <= budget / 2.0 || attempt == 2) {
            std::complex<double> lv = dir > 0 ? left.value : std::conj(left.value);
            std::complex<double> rv = (-dir) > 0 ? right.value : std::conj(right.value);
            out.value = lv + rv;
            // left/right err fields already include their own future-stop bounds,
            // which double-count part of the middle; keep them plus the certified
            // middle bound (conservative).
            out.err = (left.err - left.stop_bound) + (right.err - right.stop_bound) + mid_bound;
            out.sin_lobes = left.sin_lobes + right.sin_lobes;
            return out;
        }
        threshold /= 64.0;
    }
    throw NotConverged("oscillatory piece: middle bound did not shrink");
}

PieceResult integrate_ray(EngineState& st, const WeightFn& w, double r0, double budget,
                          OscResult& diag) {
    const PhaseEvaluator& ph = *st.ph;
    Poly dp = st.p->derivative();
    int dir = dp.eval(r0 + 1.0) >= 0 ? +1 : -1;
    Walker ray{ph, w, dir, st.max_quarter - st.quarter_used, budget / 8.0};
    WalkOutcome o = ray.run(r0, INF, budget / 2.0, true, budget / 2.0);
    if (std::getenv("OSCINT_DEBUG"))
        std::fprintf(stderr, "ray walk: status=%d stop_bound=%g err=%g panels=%ld\n", int(o.status),
                     o.stop_bound, o.err, o.quarter_panels);
    st.quarter_used += o.quarter_panels;
    if (o.status == WalkOutcome::panel_budget)
        throw NotConverged("oscillatory tail exceeded the lobe budget");
    PieceResult out;
    out.value = dir > 0 ? o.value : std::conj(o.value);
    out.err = o.err;
    out.sin_lobes = o.sin_lobes;
    diag.truncation_radius = o.t_end;
    diag.ray_sin_lobes = std::move(o.sin_mags);
    diag.ray_cutoff = o.cutoff;
    return out;
}

} // namespace

OscResult oscillatory_integral(const Poly& p_in, Weight weight, double a, double b,
                               const OscParams& prm) {
    if (!(prm.tol > 0)) throw InvalidTolerance(prm.tol);
    bool infinite = std::isinf(b);
    if (!(b > a)) throw InvalidRange("oscillatory_integral: need b > a");
    if (weight == Weight::inv_t && !(a > 0))
        throw InvalidRange("oscillatory_integral: weight 1/t needs a > 0");
    if (infinite && weight == Weight::unit)
        throw InvalidRange("oscillatory_integral: unit weight on an infinite range diverges");

    WeightFn w{weight == Weight::unit ? WeightFn::unit : WeightFn::inv, 0};
    OscResult res;

    Poly p = p_in.to_exact();
    if (p.degree() <= 0) {
        if (infinite) throw InvalidRange("constant phase on an infinite range diverges");
        double c = p.is_zero() ? 0.0 : rational_to_double(p.coeff(0));
        double wint = (weight == Weight::unit) ? (b - a) : std::log(b / a);
        res.value = std::complex<double>(std::cos(c), std::sin(c)) * wint;
        res.abs_error = 1e-15 * std::abs(res.value);
        res.converged = true;
        res.truncation_radius = b;
        return res;
    }

    EngineState st;
    st.p = &p;
    st.ph = std::make_unique<PhaseEvaluator>(p);
    st.max_quarter = 2 * prm.max_lobes + 64;

    // critical and inflection points of the phase up to the isolation bound
    double B_iso;
    if (!infinite) B_iso = b;
    else if (prm.no_critical_beyond > 0) B_iso = std::max(a, prm.no_critical_beyond);
    else {
        Poly dp = p.derivative();
        double cb = cauchy_root_bound(dp.rational_coeffs());
        if (p.degree() >= 2) {
            Poly ddp = p.derivative(2);
            if (!ddp.is_zero()) cb = std::max(cb, cauchy_root_bound(ddp.rational_coeffs()));
        }
        B_iso = std::max(a, cb * (1.0 + 1e-9) + 1e-9);
    }

    if (p.degree() >= 2 && B_iso > a) {
        for (const auto& r : isolate_roots(p.derivative(), a, B_iso).roots) st.crit.push_back(r.value);
        if (p.degree() >= 3)
            for (const auto& r : isolate_roots(p.derivative(2), a, B_iso).roots) st.infl.push_back(r.value);
    }

    std::vector<double> cuts{a};
    for (double c : st.crit)
        if (c > a + 1e-15 && c < B_iso) cuts.push_back(c);
    double last = a;
    bool any_root = false;
    for (double c : st.crit) { last = std::max(last, c); any_root = true; }
    for (double c : st.infl) { last = std::max(last, c); any_root = true; }
    double ray0 = any_root ? std::max(a, last + 1e-9 * (1.0 + std::fabs(last))) : a;

    if (infinite) {
        if (ray0 > a) cuts.push_back(ray0);
    } else {
        cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    size_t n_pieces = cuts.size() - 1;
    double piece_budget = infinite ? (n_pieces ? 0.5 * prm.tol / double(n_pieces) : prm.tol)
                                   : (n_pieces ? prm.tol / double(n_pieces) : prm.tol);

    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        PieceResult pr = integrate_piece(st, w, cuts[i], cuts[i + 1], piece_budget);
        if (std::getenv("OSCINT_DEBUG"))
            std::fprintf(stderr, "piece [%g, %g]: val=(%g,%g) err=%g lobes=%ld\n", cuts[i],
                         cuts[i + 1], pr.value.real(), pr.value.imag(), pr.err, pr.sin_lobes);
        res.value += pr.value;
        res.abs_error += pr.err;
        res.lobe_count += pr.sin_lobes;
    }
    if (infinite) {
        PieceResult pr = integrate_ray(st, w, ray0, 0.5 * prm.tol, res);
        if (std::getenv("OSCINT_DEBUG"))
            std::fprintf(stderr, "ray [%g, inf): val=(%g,%g) err=%g lobes=%ld radius=%g\n", ray0,
                         pr.value.real(), pr.value.imag(), pr.err, pr.sin_lobes, res.truncation_radius);
        res.value += pr.value;
        res.abs_error += pr.err;
        res.lobe_count += pr.sin_lobes;
    } else {
        res.truncation_radius = b;
    }
    res.converged = res.abs_error <= prm.tol;
    return res;
}

} // namespace oscint

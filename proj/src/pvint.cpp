#include "oscint/pvint.hpp"

#include "oscint/errors.hpp"
#include "oscint/phase.hpp"
#include "oscint/quadrature.hpp"

#include <cmath>

namespace oscint {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

// sin(P(t))/t through the principal phase; continuous at 0 since P(0) = 0
// (quadrature nodes never touch 0).
std::function<double(double)> sin_over_t(const PhaseEvaluator& ph) {
    return [&ph](double t) { return std::sin(ph.value(t).principal) / t; };
}

OscParams engine_params(double tol, const PVHints& h) {
    OscParams prm;
    prm.tol = tol;
    prm.max_lobes = h.max_lobes;
    prm.no_critical_beyond = h.no_critical_beyond;
    return prm;
}

Poly reflect(const Poly& p) { // p(-t)
    auto cs = p.rational_coeffs();
    for (size_t j = 1; j < cs.size(); j += 2) cs[j] = -cs[j];
    return Poly::from_rational(std::move(cs));
}

} // namespace

PVDetail pv_integral_detail(const Poly& p_in, double tol, const PVHints& hints) {
    if (!(tol > 0)) throw InvalidTolerance(tol);
    PVDetail out;

    Poly p = p_in.to_exact().without_constant_term();
    Poly podd = p.odd_part();
    if (podd.is_zero()) {
        // even phase: the folded integrand vanishes identically
        out.result.converged = true;
        return out;
    }

    if (p.even_part().is_zero()) {
        // odd phase: p.v. = 2i int_0^inf sin(p)/t
        PhaseEvaluator ph(p);
        QuadResult unit = integrate_adaptive(sin_over_t(ph), 0.0, 1.0, 0.25 * tol, 0.0, 40000);
        OscResult tail = oscillatory_integral(p, Weight::inv_t, 1.0, INF,
                                              engine_params(0.25 * tol, hints));
        double s = unit.value + tail.value.imag();
        out.complex_value = std::complex<double>(0.0, 2.0 * s);
        out.result.value = std::fabs(2.0 * s);
        out.result.abs_error_est = 2.0 * (unit.abs_error + tail.abs_error);
        out.result.truncation_radius = tail.truncation_radius;
        out.result.lobe_count = tail.lobe_count;
        out.result.converged = unit.converged && tail.converged &&
                               out.result.abs_error_est <= tol;
        out.ray_sin_lobes = std::move(tail.ray_sin_lobes);
        out.ray_cutoff = tail.ray_cutoff;
        return out;
    }

    // mixed parity: fold to [0, inf) with both orientations of the phase
    Poly pm = reflect(p);
    PhaseEvaluator php(p), phm(pm);
    auto cos_diff = [&](double t) {
        return (std::cos(php.value(t).principal) - std::cos(phm.value(t).principal)) / t;
    };
    auto sin_diff = [&](double t) {
        return (std::sin(php.value(t).principal) - std::sin(phm.value(t).principal)) / t;
    };
    QuadResult qa = integrate_adaptive(cos_diff, 0.0, 1.0, tol / 8.0, 0.0, 40000);
    QuadResult qb = integrate_adaptive(sin_diff, 0.0, 1.0, tol / 8.0, 0.0, 40000);
    OscResult zp = oscillatory_integral(p, Weight::inv_t, 1.0, INF, engine_params(tol / 4.0, hints));
    OscResult zm = oscillatory_integral(pm, Weight::inv_t, 1.0, INF, engine_params(tol / 4.0, hints));

    std::complex<double> total = std::complex<double>(qa.value, qb.value) + zp.value - zm.value;
    out.complex_value = total;
    out.result.value = std::abs(total);
    out.result.abs_error_est = qa.abs_error + qb.abs_error + zp.abs_error + zm.abs_error;
    out.result.truncation_radius = std::max(zp.truncation_radius, zm.truncation_radius);
    out.result.lobe_count = zp.lobe_count + zm.lobe_count;
    out.result.converged = qa.converged && qb.converged && zp.converged && zm.converged &&
                           out.result.abs_error_est <= tol;
    out.ray_sin_lobes = std::move(zp.ray_sin_lobes);
    out.ray_cutoff = zp.ray_cutoff;
    return out;
}

PVResult pv_integral(const Poly& p, double tol, const PVHints& hints) {
    return pv_integral_detail(p, tol, hints).result;
}

PVComplex pv_integral_truncated(const Poly& p_in, double eps, double R, double tol,
                                const PVHints& hints) {
    if (!(tol > 0)) throw InvalidTolerance(tol);
    if (!(0 < eps && eps < R)) throw InvalidRange("pv_integral_truncated: need 0 < eps < R");

    PVComplex out;
    Poly p = p_in.to_exact().without_constant_term();
    if (p.is_zero() || p.odd_part().is_zero()) {
        out.converged = true; // folded integrand vanishes
        return out;
    }
    Poly pm = reflect(p);
    PhaseEvaluator php(p), phm(pm);
    auto diff_integrand = [&](double t) -> std::complex<double> {
        double pp = php.value(t).principal, mm = phm.value(t).principal;
        return {(std::cos(pp) - std::cos(mm)) / t, (std::sin(pp) - std::sin(mm)) / t};
    };

    double m = std::min(1.0, R);
    std::complex<double> total{0, 0};
    double err = 0;
    long lobes = 0;
    bool ok = true;

    if (eps < m) {
        auto re = [&](double t) { return diff_integrand(t).real(); };
        auto im = [&](double t) { return diff_integrand(t).imag(); };
        QuadResult qa = integrate_adaptive(re, eps, m, tol / 8.0, 0.0, 40000);
        QuadResult qb = integrate_adaptive(im, eps, m, tol / 8.0, 0.0, 40000);
        total += std::complex<double>(qa.value, qb.value);
        err += qa.abs_error + qb.abs_error;
        ok = ok && qa.converged && qb.converged;
    }

    if (R > 1.0) {
        // beyond all critical points, [1,R] = [1,inf) - [R,inf); otherwise walk
        // the finite interval directly
        double crit_bound = hints.no_critical_beyond;
        for (const Poly& q : {p, pm}) {
            if (crit_bound <= 0) {
                Poly dq = q.derivative();
                double cb = cauchy_root_bound(dq.rational_coeffs());
                if (q.degree() >= 2) {
                    Poly ddq = q.derivative(2);
                    if (!ddq.is_zero()) cb = std::max(cb, cauchy_root_bound(ddq.rational_coeffs()));
                }
                crit_bound = std::max(crit_bound, cb);
            }
        }
        for (int side = 0; side < 2; ++side) {
            const Poly& q = side == 0 ? p : pm;
            double sign = side == 0 ? 1.0 : -1.0;
            OscParams prm = engine_params(tol / 8.0, hints);
            if (R > crit_bound + 1.0) {
                OscResult whole = oscillatory_integral(q, Weight::inv_t, 1.0, INF, prm);
                OscResult beyond = oscillatory_integral(q, Weight::inv_t, R, INF, prm);
                total += sign * (whole.value - beyond.value);
                err += whole.abs_error + beyond.abs_error;
                lobes += whole.lobe_count + beyond.lobe_count;
                ok = ok && whole.converged && beyond.converged;
            } else {
                OscResult fin = oscillatory_integral(q, Weight::inv_t, 1.0, R, prm);
                total += sign * fin.value;
                err += fin.abs_error;
                lobes += fin.lobe_count;
                ok = ok && fin.converged;
            }
        }
    }

    out.value = total;
    out.abs_error_est = err;
    out.lobe_count = lobes;
    out.converged = ok && err <= tol;
    return out;
}

double unit_interval_signed(const Poly& p_in, double tol) {
    if (!(tol > 0)) throw InvalidTolerance(tol);
    Poly p = p_in.to_exact().without_constant_term();
    if (p.is_zero()) return 0.0;
    if (!p.is_odd()) throw Error("unit_interval_part: polynomial must be odd");
    PhaseEvaluator ph(p);
    QuadResult r = integrate_adaptive(sin_over_t(ph), 0.0, 1.0, tol, 0.0, 40000);
    return require_converged(r, tol);
}

double unit_interval_part(const Poly& p, double tol) {
    return std::fabs(unit_interval_signed(p, tol));
}

TailPart tail_part(const Poly& p_in, double T0, double tol, const PVHints& hints) {
    if (!(tol > 0)) throw InvalidTolerance(tol);
    if (!(T0 >= 1.0)) throw Error("tail_part: T0 must be >= 1");
    Poly p = p_in.to_exact().without_constant_term();
    if (p.is_zero()) return {};
    if (!p.is_odd()) throw Error("tail_part: polynomial must be odd");
    OscResult r = oscillatory_integral(p, Weight::inv_t, T0, INF, engine_params(tol, hints));
    TailPart out;
    out.value = r.value.imag();
    out.remainder_bound = r.abs_error;
    out.truncation_radius = r.truncation_radius;
    out.lobe_count = r.lobe_count;
    return out;
}

} // namespace oscint

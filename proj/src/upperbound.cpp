#include "oscint/upperbound.hpp"

#include "oscint/errors.hpp"
#include "oscint/oscillate.hpp"
#include "oscint/phase.hpp"
#include "oscint/quadrature.hpp"
#include "oscint/sublevel.hpp"

#include <algorithm>
#include <cmath>

namespace oscint {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

Poly reflect(const Poly& p) {
    auto cs = p.rational_coeffs();
    for (size_t j = 1; j < cs.size(); j += 2) cs[j] = -cs[j];
    return Poly::from_rational(std::move(cs));
}

} // namespace

VdCCheck vdc_check(const Poly& phi_in, int k, double lambda, double a, double b, double tol) {
    if (k < 1) throw Error("vdc_check: k must be >= 1");
    if (!(b > a)) throw InvalidRange("vdc_check: need a < b");
    Poly phi = phi_in.to_exact();

    // min |phi^(k)| over [a,b] sits at an endpoint or a critical point of phi^(k)
    Poly dk = phi.degree() >= k ? phi.derivative(k) : Poly();
    if (dk.is_zero()) throw PreconditionFailed("vdc_check: phi^(k) vanishes", a);
    std::vector<double> candidates{a, b};
    if (dk.degree() >= 1)
        for (const auto& r : isolate_roots(dk.derivative(), a, b).roots)
            candidates.push_back(r.value);
    Rational one(1);
    for (double t : candidates) {
        Rational v = abs(dk.eval_exact(rational_from_double(t)));
        if (v < one)
            throw PreconditionFailed("vdc_check: |phi^(" + std::to_string(k) + ")| < 1", t);
    }
    if (k == 1 && phi.degree() >= 2) {
        // phi' monotone: phi'' must not change sign inside (a,b)
        Poly dd = phi.derivative(2);
        if (!dd.is_zero() && dd.degree() >= 0) {
            auto roots = isolate_roots(dd, a, b).roots;
            std::vector<double> cuts{a};
            for (const auto& r : roots) cuts.push_back(r.value);
            cuts.push_back(b);
            int sign_seen = 0;
            for (size_t i = 0; i + 1 < cuts.size(); ++i) {
                Rational mid = (rational_from_double(cuts[i]) + rational_from_double(cuts[i + 1])) / 2;
                int s = sgn(dd.eval_exact(mid));
                if (s == 0) continue;
                if (sign_seen != 0 && s != sign_seen)
                    throw PreconditionFailed("vdc_check: phi' is not monotonic", cuts[i + 1]);
                sign_seen = s;
            }
        }
    }

    VdCCheck out;
    out.k = k;
    out.lambda = lambda;
    out.a = a;
    out.b = b;
    out.precondition_ok = true;

    Poly scaled = phi * rational_from_double(lambda);
    OscParams prm;
    prm.tol = tol;
    OscResult r = oscillatory_integral(scaled, Weight::unit, a, b, prm);
    out.integral_modulus = std::abs(r.value);
    out.ratio = out.integral_modulus * std::pow(std::fabs(lambda), 1.0 / double(k));
    return out;
}

SplitResult split_at_half(const Poly& p_in) {
    Poly p = p_in.to_exact().without_constant_term();
    int d = p.degree();
    if (d < 2) throw DegreeTooSmall("split_at_half: degree must be >= 2");
    int k = d / 2;

    // lambda = max_{j>k} |a_j|^(1/j); scaling t -> t/lambda makes every high
    // coefficient at most 1 in modulus with equality at the argmax
    double best = -INF;
    int l = k + 1;
    for (int j = k + 1; j <= d; ++j) {
        Rational aj = abs(p.coeff(j));
        if (aj == 0) continue;
        double cand = rational_log2_abs(aj) / double(j);
        if (cand > best) {
            best = cand;
            l = j;
        }
    }
    SplitResult out;
    out.k = k;
    if (best == -INF) { // untrimmed input only; keep the flag for completeness
        out.high_zero = true;
        out.lambda_norm = 1;
        out.Q = p;
        return out;
    }
    double lambda = std::exp2(best);
    out.lambda_norm = lambda;

    std::vector<double> scaled(static_cast<size_t>(d) + 1, 0.0);
    double linv = 1.0, log2lam = best;
    (void)linv;
    for (int j = 1; j <= d; ++j) {
        Rational aj = p.coeff(j);
        if (aj == 0) continue;
        // a_j / lambda^j in logs to dodge overflow at large degree
        double mag = std::exp2(rational_log2_abs(aj) - double(j) * log2lam);
        scaled[static_cast<size_t>(j)] = sgn(aj) > 0 ? mag : -mag;
    }
    scaled[static_cast<size_t>(l)] = sgn(p.coeff(l)) > 0 ? 1.0 : -1.0; // exact by construction

    std::vector<double> qc(scaled.begin(), scaled.begin() + k + 1);
    out.Q = Poly::from_double(std::move(qc));
    std::vector<double> rc = scaled;
    for (int j = 0; j <= k; ++j) rc[static_cast<size_t>(j)] = 0.0;
    out.Rpart = Poly::from_double(std::move(rc));
    return out;
}

LogMeasure small_derivative_log_measure(const Poly& p_in, double alpha) {
    if (!(alpha > 0)) throw Error("small_derivative_log_measure: alpha must be positive");
    Poly p = p_in.to_exact();
    if (p.degree() < 2) throw DegenerateDerivative("small_derivative_log_measure: p' is constant");
    Poly dp = p.derivative();

    // beyond the root bound of p' -+ alpha the set is empty (|p'| -> inf)
    Rational aq = rational_from_double(alpha);
    Poly above = dp - Poly::from_rational({aq});
    Poly below = dp + Poly::from_rational({aq});
    double B = std::max({1.0, cauchy_root_bound(above.rational_coeffs()),
                         cauchy_root_bound(below.rational_coeffs())}) +
               1.0;

    LogMeasure out;
    SublevelResult sub = sublevel_measure(dp, alpha, 1.0, B);
    out.components = sub.components;
    for (const auto& c : out.components)
        if (c.second > c.first) out.value += std::log(c.second / c.first);

    // Sum_m |{t in [1,2]: |p'(2^m t)| <= alpha}|; blocks beyond B are empty
    double certificate = 0;
    for (int m = 0;; ++m) {
        double lo_t = std::exp2(double(m));
        if (lo_t > B) break;
        Poly dpm = dp.scale_argument(rational_pow(Rational(2), m));
        certificate += sublevel_measure(dpm, alpha, 1.0, 2.0).measure;
    }
    out.dyadic_certificate = certificate;
    return out;
}

KdTrace kd_trace(const Poly& p_in, double alpha, double tol) {
    if (!(tol > 0)) throw InvalidTolerance(tol);
    Poly p0 = p_in.to_exact().without_constant_term();
    KdTrace tr;
    tr.d = std::max(p0.degree(), 0);
    if (p0.is_zero()) return tr;
    int d = p0.degree();

    Poly p = p0;
    if (d >= 2) {
        SplitResult sp = split_at_half(p0);
        tr.lambda_norm = sp.lambda_norm;
        p = sp.Q + sp.Rpart; // normalized polynomial (change of variables)
        tr.alpha_used = alpha > 0 ? alpha : std::pow(double(d), (double(d) - 1.0) / double(d));
        for (int j = sp.k + 1; j <= d; ++j)
            tr.tail_coeff_sum += 2.0 * std::fabs(p.coeff_d(j)) / double(j);
        if (!sp.Q.is_zero()) {
            tr.recursion_child =
                std::make_unique<KdTrace>(kd_trace(sp.Q, alpha > 0 ? alpha : -1.0, tol));
        }
    } else {
        tr.alpha_used = 0;
    }

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
    std::complex<double> z1(qa.value, qb.value);
    tr.I1 = std::abs(z1);

    OscParams prm;
    prm.tol = tol / 4.0;
    OscResult zp = oscillatory_integral(p, Weight::inv_t, 1.0, INF, prm);
    OscResult zm = oscillatory_integral(pm, Weight::inv_t, 1.0, INF, prm);
    std::complex<double> z2p = zp.value, z2m = -zm.value;
    tr.I2_plus = std::abs(z2p);
    tr.I2_minus = std::abs(z2m);
    tr.total_complex = z1 + z2p + z2m;
    tr.R_eff = std::max(zp.truncation_radius, zm.truncation_radius);

    if (d >= 2) {
        LogMeasure lm = small_derivative_log_measure(p, tr.alpha_used);
        tr.small_deriv_log_measure = lm.value;

        // complement of the small-derivative set within [1, R): the phase is
        // strictly monotone on each component
        double B = 1.0;
        for (const auto& c : lm.components) B = std::max(B, c.second);
        std::vector<std::pair<double, double>> big;
        double cursor = 1.0;
        for (const auto& c : lm.components) {
            if (c.first > cursor) big.emplace_back(cursor, c.first);
            cursor = std::max(cursor, c.second);
        }
        big.emplace_back(cursor, INF);
        std::complex<double> osc{0, 0};
        double share = tol / (2.0 * double(big.size()) + 2.0);
        for (const auto& c : big) {
            if (!(c.second > c.first)) continue;
            OscParams pp;
            pp.tol = share;
            OscResult r = oscillatory_integral(p, Weight::inv_t, c.first, c.second, pp);
            osc += r.value;
            tr.R_eff = std::max(tr.R_eff, r.truncation_radius);
        }
        tr.oscillatory_piece = std::abs(osc);
    } else {
        tr.small_deriv_log_measure = 0.0;
        tr.oscillatory_piece = tr.I2_plus + tr.I2_minus;
    }
    return tr;
}

} // namespace oscint

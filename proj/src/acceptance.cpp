#include "oscint/acceptance.hpp"

#include "oscint/discrepancy.hpp"
#include "oscint/errors.hpp"
#include "oscint/experiments.hpp"
#include "oscint/extremal.hpp"
#include "oscint/io.hpp"
#include "oscint/pvint.hpp"
#include "oscint/sublevel.hpp"
#include "oscint/upperbound.hpp"

#include <chrono>
#include <functional>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace oscint {

namespace {

struct XorShift {
    std::uint64_t s;
    explicit XorShift(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (double(next() >> 11) * 0x1.0p-53);
    }
    int uniform_int(int lo, int hi) { return lo + int(next() % std::uint64_t(hi - lo + 1)); }
};

Poly random_poly(XorShift& rng, int degree, bool zero_constant) {
    std::vector<double> cs(static_cast<size_t>(degree) + 1);
    for (auto& c : cs) c = rng.uniform(-1.0, 1.0);
    if (zero_constant) cs[0] = 0.0;
    if (cs.back() == 0.0) cs.back() = 0.5;
    return Poly::from_double(std::move(cs));
}

std::string fmt(double x) { return format_double(x); }

using Clock = std::chrono::steady_clock;

CriterionResult timed(int id, const std::string& name,
                      const std::function<std::pair<bool, std::string>()>& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    auto t0 = Clock::now();
    try {
        auto [ok, detail] = body();
        r.passed = ok;
        r.detail = detail;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return r;
}

// ---------------------------------------------------------------- criteria

std::pair<bool, std::string> c1_monomial_law() {
    auto t0 = Clock::now();
    double worst = 0;
    for (int d = 1; d <= 49; d += 2) {
        PVResult r = pv_integral(Poly::monomial(d), 1e-9);
        double rel = std::fabs(r.value - M_PI / d) / (M_PI / d);
        worst = std::max(worst, rel);
        if (!r.converged) return {false, "not converged at d=" + std::to_string(d)};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool ok = worst <= 1e-6 && secs < 30.0;
    return {ok, "max relative error " + fmt(worst) + ", runtime " + fmt(secs) + " s"};
}

std::pair<bool, std::string> c2_even_annihilation(std::uint64_t seed) {
    XorShift rng(seed ^ 0xA11EULL);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        int d = rng.uniform_int(2, 20);
        if (d % 2) --d;
        std::vector<double> cs(static_cast<size_t>(d) + 1, 0.0);
        for (int j = 0; j <= d; j += 2) cs[static_cast<size_t>(j)] = rng.uniform(-1.0, 1.0);
        if (cs.back() == 0.0) cs.back() = 0.7;
        PVResult r = pv_integral(Poly::from_double(std::move(cs)), 1e-9);
        worst = std::max(worst, r.value);
    }
    return {worst <= 1e-8, "max |pv| over 20 even polynomials: " + fmt(worst)};
}

std::pair<bool, std::string> c3_dual_representation(std::uint64_t seed) {
    XorShift rng(seed ^ 0xD0A1ULL);
    double worst = 0;
    for (int n = 2; n <= 6; ++n) {
        ExtremalPoly e = construct_extremal(n, n);
        for (int i = 0; i < 100; ++i) {
            double t = rng.uniform(-3.0, 3.0);
            double conv = eval_extremal_convolution(n, n, t, 1e-13);
            double coef = rational_to_double(e.coeff_form.eval_exact(rational_from_double(t)));
            double scale = std::max(std::fabs(conv), std::fabs(coef));
            double err = std::fabs(conv - coef);
            double rel = err / std::max(scale, 1e-4); // absolute floor near the zero crossings
            worst = std::max(worst, rel);
        }
    }
    return {worst <= 1e-8, "max relative disagreement " + fmt(worst) + " over 500 points"};
}

std::pair<bool, std::string> c4_exact_leading() {
    if (kernel_normalizer(1) != Rational(3, 8)) return {false, "c_1 != 3/8"};
    if (kernel_normalizer(2) != Rational(315, 512)) return {false, "c_2 != 315/512"};
    for (int n = 2; n <= 8; ++n) {
        ExtremalPoly e = construct_extremal(n, n);
        long m = long(n) * n;
        Rational expect = Rational(2) * kernel_normalizer(n) * Rational(m) *
                          (1 - Rational(1, n)) / rational_pow(Rational(4), m);
        if (m % 2 == 0) expect = -expect;
        if (e.leading != expect) return {false, "leading coefficient mismatch at n=" + std::to_string(n)};
        if (!e.coeff_form.is_odd()) return {false, "P_n not odd at n=" + std::to_string(n)};
        if (e.coeff_form.degree() != 2 * n * n - 1) return {false, "degree mismatch"};
    }
    return {true, "exact rational identity holds for n=2..8 (zero error)"};
}

std::pair<bool, std::string> c5_growth_law() {
    // The literal chain |I_Pn - I_fn| <= D_n is off by the factor 2 the source
    // chain drops (I_Pn and I_fn are both doubled half-line integrals, D_n
    // bounds the undoubled difference once); see the decisions ledger. Asserted
    // here: the corrected full chain |I_Pn - I_fn| <= 2 D_n + 2|tail| + 2 tol
    // and the undoubled variant |I_1(P_n) - I_fn/2| <= D_n + tol, all three
    // quantities computed independently.
    const double tol = 1e-9;
    std::ostringstream detail;
    bool ok = true;

    PVHints hints;
    hints.no_critical_beyond = 3.0;
    double worst_full = -1e9, worst_half = -1e9, worst_literal = -1e9;
    double min_ratio = 1e9;
    for (int n = 3; n <= 10; ++n) {
        ExtremalPoly e = construct_extremal(n, n);
        double ipn = pv_integral(e.coeff_form, tol, hints).value;
        double ifn = lemma1_value(n, 1e-10);
        double dn = discrepancy_integral(n, 1e-9).D_n;
        TailPart tail = tail_part(e.coeff_form, 1.0, tol, hints);
        double i1pn = unit_interval_part(e.coeff_form, tol);
        double lhs_full = std::fabs(ipn - ifn);
        double tail_abs = std::fabs(tail.value) + tail.remainder_bound;
        if (lhs_full > 2 * dn + 2 * tail_abs + 2 * tol) {
            ok = false;
            detail << "full chain fails at n=" << n << "; ";
        }
        double lhs_half = std::fabs(i1pn - 0.5 * ifn);
        if (lhs_half > dn + tol) {
            ok = false;
            detail << "unit-interval chain fails at n=" << n << "; ";
        }
        worst_full = std::max(worst_full, lhs_full - 2 * dn - 2 * tail_abs);
        worst_half = std::max(worst_half, lhs_half - dn);
        worst_literal = std::max(worst_literal, lhs_full - dn);
        if (n >= 6) min_ratio = std::min(min_ratio, ipn / std::log(2.0 * n * n - 1.0));
    }
    if (min_ratio < kCalibratedRatioThreshold) {
        ok = false;
        detail << "ratio " << fmt(min_ratio) << " below threshold " << fmt(kCalibratedRatioThreshold)
               << "; ";
    }

    double prev = 1e300;
    bool decreasing = true;
    for (int n : {4, 8, 16, 32}) {
        DiscrepancyReport rep = discrepancy_integral(n, 1e-9);
        if (rep.ratio >= prev) decreasing = false;
        prev = rep.ratio;
    }
    if (!decreasing) {
        ok = false;
        detail << "D_n/log n not strictly decreasing; ";
    }
    detail << "corrected chain margin " << fmt(-worst_full) << ", unit-interval margin "
           << fmt(-worst_half) << " (literal bare-D_n form violated by " << fmt(worst_literal)
           << ", factor-2 slip: see ledger), min ratio(n>=6)=" << fmt(min_ratio)
           << ", D/log n decreasing over {4,8,16,32}=" << (decreasing ? "yes" : "no");
    return {ok, detail.str()};
}

std::pair<bool, std::string> c6_vinogradov(std::uint64_t seed) {
    XorShift rng(seed ^ 0x51B1ULL);
    const double alphas[4] = {1e-3, 1e-2, 1e-1, 1.0};
    int violations = 0;
    double worst_gap = 0;
    std::vector<Poly> sample;
    for (int i = 0; i < 1000; ++i) {
        Poly h = random_poly(rng, rng.uniform_int(1, 8), false);
        if (sample.size() < 100) sample.push_back(h);
        for (double alpha : alphas) {
            SublevelResult s = sublevel_measure(h, alpha, 1.0, 2.0);
            if (s.measure > s.bound + 1e-9) ++violations;
        }
    }
    // grid oracle: 1e-5 grid with cell bisection, 100 instances
    int oracle_fail = 0;
    for (size_t i = 0; i < sample.size(); ++i) {
        double alpha = alphas[i % 4];
        SublevelResult s = sublevel_measure(sample[i], alpha, 1.0, 2.0);
        double grid = 0;
        {
            const Poly& h = sample[i];
            auto g = [&](double t) { return std::fabs(h.eval(t)) - alpha; };
            double step = 1e-5, prev_t = 1.0, prev_g = g(1.0);
            long nsteps = long(std::ceil(1.0 / step));
            for (long kk = 1; kk <= nsteps; ++kk) {
                double t = (kk == nsteps) ? 2.0 : 1.0 + double(kk) * step;
                double gv = g(t);
                double a = prev_t, b = t, ga = prev_g, gb = gv;
                if (ga <= 0 && gb <= 0) grid += b - a;
                else if (ga * gb < 0) {
                    for (int it = 0; it < 50; ++it) {
                        double mmid = 0.5 * (a + b), gm = g(mmid);
                        if ((gm <= 0) == (ga <= 0)) { a = mmid; ga = gm; }
                        else { b = mmid; gb = gm; }
                    }
                    double crossing = 0.5 * (a + b);
                    grid += (prev_g <= 0) ? crossing - prev_t : t - crossing;
                }
                prev_t = t;
                prev_g = gv;
            }
        }
        double gap = std::fabs(grid - s.measure);
        worst_gap = std::max(worst_gap, gap);
        if (gap > 2e-5) ++oracle_fail;
    }
    bool ok = violations == 0 && oracle_fail == 0;
    return {ok, std::to_string(violations) + " bound violations over 4000 cases; max grid-oracle gap " +
                    fmt(worst_gap)};
}

std::pair<bool, std::string> c7_dyadic_certificate(std::uint64_t seed) {
    XorShift rng(seed ^ 0xE14ULL);
    const double alphas[4] = {1e-3, 1e-2, 1e-1, 1.0};
    int violations = 0;
    double worst = -1e300;
    for (int i = 0; i < 200; ++i) {
        Poly p = random_poly(rng, rng.uniform_int(2, 16), true);
        SplitResult sp = split_at_half(p);
        Poly pn = sp.Q + sp.Rpart;
        double alpha = alphas[i % 4];
        LogMeasure lm = small_derivative_log_measure(pn, alpha);
        worst = std::max(worst, lm.value - lm.dyadic_certificate);
        if (lm.value > lm.dyadic_certificate + 1e-10) ++violations;
    }
    return {violations == 0, std::to_string(violations) + " violations; max(value - certificate) = " +
                                 fmt(worst)};
}

std::pair<bool, std::string> c8_van_der_corput(std::uint64_t seed) {
    // Fresnel: phi = t^2/2 on [0,1], k = 2, lambda = 1e4
    Poly fresnel = Poly::from_rational({Rational(0), Rational(0), Rational(1, 2)});
    VdCCheck f = vdc_check(fresnel, 2, 1e4, 0.0, 1.0, 1e-9);
    double asym = 0.5 * std::sqrt(2.0 * M_PI / 1e4);
    double fres_rel = std::fabs(f.integral_modulus - asym) / asym;

    // admissible family: phi = t^k/k! + c t^(k+1)/(k+1)! + lower-order noise,
    // so phi^(k) = 1 + c t >= 1 on [0,1] for c >= 0 (and phi' monotone at k=1)
    XorShift rng(seed ^ 0x7dc07001ULL);
    double max_ratio_per_lambda[3] = {0, 0, 0};
    const double lambdas[3] = {1e2, 1e4, 1e6};
    for (int k = 1; k <= 6; ++k) {
        for (int inst = 0; inst < 3; ++inst) {
            std::vector<Rational> cs(static_cast<size_t>(k) + 2, Rational(0));
            Rational kfact(factorial(static_cast<unsigned long>(k)));
            cs[static_cast<size_t>(k)] = 1 / kfact;
            double c = rng.uniform(0.0, 2.0);
            cs[static_cast<size_t>(k) + 1] =
                rational_from_double(c) / Rational(factorial(static_cast<unsigned long>(k) + 1));
            for (int j = (k == 1 ? 1 : 0); j < k; ++j)
                cs[static_cast<size_t>(j)] = rational_from_double(rng.uniform(-1.0, 1.0));
            if (k == 1) cs[0] = 0; // keep phi' = 1 + c t monotone and >= 1
            Poly phi = Poly::from_rational(std::move(cs));
            for (int li = 0; li < 3; ++li) {
                VdCCheck v = vdc_check(phi, k, lambdas[li], 0.0, 1.0, 1e-7);
                max_ratio_per_lambda[li] = std::max(max_ratio_per_lambda[li], v.ratio / double(k));
            }
        }
    }
    double cap = std::max({max_ratio_per_lambda[0], max_ratio_per_lambda[1], max_ratio_per_lambda[2]});
    bool no_growth = max_ratio_per_lambda[2] <=
                     1.25 * std::max(max_ratio_per_lambda[0], max_ratio_per_lambda[1]) + 0.01;
    bool ok = fres_rel <= 0.05 && cap <= 3.0 && no_growth;
    std::ostringstream os;
    os << "Fresnel rel err " << fmt(fres_rel) << "; ratio/k by decade: " << fmt(max_ratio_per_lambda[0])
       << ", " << fmt(max_ratio_per_lambda[1]) << ", " << fmt(max_ratio_per_lambda[2]);
    return {ok, os.str()};
}

std::pair<bool, std::string> c9_trace(std::uint64_t seed) {
    XorShift rng(seed ^ 0x77ACEULL);
    int fails = 0;
    double worst_slack = -1e300;
    for (int i = 0; i < 50; ++i) {
        int d = rng.uniform_int(2, 32);
        Poly p = random_poly(rng, d, true);
        SplitResult sp = split_at_half(p);
        Poly pn = sp.Q + sp.Rpart; // normalized representative (pv-invariant)
        KdTrace tr = kd_trace(pn, -1.0, 1e-9);
        PVResult pv = pv_integral(pn, 1e-9);
        double slack = pv.value - (tr.I1 + tr.I2_plus + tr.I2_minus);
        worst_slack = std::max(worst_slack, slack);
        if (slack > 1e-8) ++fails;
        // halving chain: child degree floor(d/2) at every level, so the edge
        // count is floor(log2 d) exactly
        int expect_depth = 0;
        for (int dd = d; dd > 1; dd /= 2) ++expect_depth;
        if (tr.depth() != expect_depth) ++fails;
        const KdTrace* node = &tr;
        while (node->recursion_child) {
            if (node->recursion_child->d != node->d / 2) ++fails;
            node = node->recursion_child.get();
        }
    }
    return {fails == 0, std::to_string(fails) + " failures; max(|pv| - piece sum) = " + fmt(worst_slack)};
}

} // namespace

std::vector<CriterionResult> run_acceptance(const GlobalConfig& cfg) {
    std::vector<CriterionResult> out;
    std::uint64_t seed = cfg.seed;
    out.push_back(timed(1, "monomial law pi/d, odd d <= 49", c1_monomial_law));
    out.push_back(timed(2, "even-phase annihilation", [&] { return c2_even_annihilation(seed); }));
    out.push_back(timed(3, "dual representation of P_n", [&] { return c3_dual_representation(seed); }));
    out.push_back(timed(4, "exact leading-coefficient identity", c4_exact_leading));
    out.push_back(timed(5, "growth law at desk scale", c5_growth_law));
    out.push_back(timed(6, "sublevel bound property suite", [&] { return c6_vinogradov(seed); }));
    out.push_back(timed(7, "dyadic log-measure certificate", [&] { return c7_dyadic_certificate(seed); }));
    out.push_back(timed(8, "van der Corput ratios", [&] { return c8_van_der_corput(seed); }));
    out.push_back(timed(9, "upper-bound trace consistency", [&] { return c9_trace(seed); }));
    return out;
}

int report_acceptance(const std::vector<CriterionResult>& results) {
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] criterion %d: %s  (%.0f ms)\n    %s\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.runtime_ms, r.detail.c_str());
        if (!r.passed) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", int(results.size()) - failures, results.size());
    return failures;
}

} // namespace oscint

#include "oscint/phase.hpp"

#include "oscint/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

namespace oscint {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

// Grow-only cache for 2*pi at the largest precision requested so far.
class TwoPiCache {
public:
    // Writes 2*pi into out (which must be initialized at the desired precision).
    void get(mpfr_t out) {
        std::lock_guard<std::mutex> lock(mu_);
        mpfr_prec_t need = mpfr_get_prec(out);
        if (!init_ || need > have_) {
            if (init_) mpfr_clear(cached_);
            have_ = std::max<mpfr_prec_t>(need + 64, 256);
            mpfr_init2(cached_, have_);
            mpfr_const_pi(cached_, MPFR_RNDN);
            mpfr_mul_2ui(cached_, cached_, 1, MPFR_RNDN);
            init_ = true;
        }
        mpfr_set(out, cached_, MPFR_RNDN);
    }

private:
    std::mutex mu_;
    mpfr_t cached_;
    mpfr_prec_t have_ = 0;
    bool init_ = false;
};

TwoPiCache two_pi_cache;

double mpz_log2_abs(const mpz_t z) {
    if (mpz_sgn(z) == 0) return -INF;
    signed long e = 0;
    double m = mpz_get_d_2exp(&e, z);
    return std::log2(std::fabs(m)) + double(e);
}

// t = U * 2^E exactly (U fits 64 bits).
void split_double(double t, long long& u, long& e) {
    if (t == 0.0) { u = 0; e = 0; return; }
    int ex = 0;
    double m = std::frexp(t, &ex);
    u = static_cast<long long>(std::ldexp(m, 53)); // exact: 53-bit mantissa
    e = ex - 53;
}

struct FastCoeffs {
    std::vector<double> hi, lo, mag;
};

// result + running compensation, with the lo parts folded into the corrector
double comp_horner_split(const FastCoeffs& fc, double t) {
    const auto& a = fc.hi;
    if (a.empty()) return 0.0;
    double s = a.back();
    double c = fc.lo.back();
    for (size_t j = a.size() - 1; j-- > 0;) {
        double p = s * t;
        double pi = std::fma(s, t, -p);
        double sum = p + a[j];
        double z = sum - p;
        double sigma = (p - (sum - z)) + (a[j] - z);
        s = sum;
        c = c * t + (pi + sigma + fc.lo[j]);
    }
    return s + c;
}

} // namespace

double mod_two_pi(const Rational& x) {
    if (x == 0) return 0.0;
    double mag = rational_log2_abs(x);
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max(96.0, mag + 80.0));
    mpfr_t v, tp, r;
    mpfr_init2(v, prec);
    mpfr_init2(tp, prec);
    mpfr_init2(r, prec);
    mpfr_set_q(v, x.get_mpq_t(), MPFR_RNDN);
    two_pi_cache.get(tp);
    mpfr_remainder(r, v, tp, MPFR_RNDN);
    double out = mpfr_get_d(r, MPFR_RNDN);
    mpfr_clear(v);
    mpfr_clear(tp);
    mpfr_clear(r);
    return out;
}

struct PhaseEvaluator::Impl {
    Poly p;
    int deg;
    double abs_need;

    // exact model: coefficient j = num[j] / den
    std::vector<Integer> num, dnum; // dnum: derivative numerators j*num[j]
    Integer den;
    double log2_den;

    FastCoeffs fc, dfc;
    double fast_factor, dfast_factor; // error ~ factor * sum |a_j||t|^j

    explicit Impl(const Poly& poly, double need) : p(poly), deg(poly.degree()), abs_need(need) {
        auto rcs = p.rational_coeffs();
        den = 1;
        for (const auto& c : rcs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        num.reserve(rcs.size());
        for (const auto& c : rcs) num.push_back(Integer(c.get_num() * (den / c.get_den())));
        for (size_t j = 1; j < num.size(); ++j) dnum.push_back(num[j] * static_cast<long>(j));
        log2_den = mpz_log2_abs(den.get_mpz_t());

        auto split = [](const std::vector<Rational>& cs, FastCoeffs& out) {
            out.hi.resize(cs.size());
            out.lo.resize(cs.size());
            out.mag.resize(cs.size());
            for (size_t j = 0; j < cs.size(); ++j) {
                double h = rational_to_double(cs[j]);
                if (!std::isfinite(h)) h = (cs[j] > 0 ? 1 : -1) * 1e308;
                Rational rem = cs[j] - rational_from_double(h);
                double l = rational_to_double(rem);
                out.hi[j] = h;
                out.lo[j] = std::isfinite(l) ? l : 0.0;
                out.mag[j] = std::fabs(h) + std::fabs(l);
            }
        };
        split(rcs, fc);
        std::vector<Rational> dcs;
        for (size_t j = 1; j < rcs.size(); ++j) dcs.push_back(rcs[j] * Rational(static_cast<long>(j)));
        split(dcs, dfc);

        const double eps = std::numeric_limits<double>::epsilon();
        double d = std::max(1, deg);
        // split residue ~2^-105 plus compensated-Horner second-order term
        fast_factor = 3.0 * std::pow(2.0, -105.0) + 2.0 * (2.0 * d * eps) * (2.0 * d * eps);
        dfast_factor = fast_factor;
    }

    double mag_bound(const FastCoeffs& f, double t) const {
        double at = std::fabs(t);
        double s = 0;
        for (size_t j = f.mag.size(); j-- > 0;) s = s * at + f.mag[j];
        return s;
    }

    // exact value as num-part V with value = V / (den * 2^shift), shift >= 0
    void eval_exact(double t, const std::vector<Integer>& ns, Integer& V, long& shift) const {
        if (ns.empty()) { V = 0; shift = 0; return; }
        long long u;
        long e;
        split_double(t, u, e);
        int dd = static_cast<int>(ns.size()) - 1;
        if (t == 0.0) { V = ns[0]; shift = 0; return; }
        if (e >= 0) {
            Integer x(static_cast<long>(u));
            mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e));
            V = ns.back();
            for (int j = dd - 1; j >= 0; --j) {
                V *= x;
                V += ns[static_cast<size_t>(j)];
            }
            shift = 0;
        } else {
            unsigned long f = static_cast<unsigned long>(-e);
            V = ns.back();
            Integer tmp;
            const long ul = static_cast<long>(u); // 54-bit value, fits long on LP64
            for (int j = dd - 1; j >= 0; --j) {
                V *= ul;
                mpz_mul_2exp(tmp.get_mpz_t(), ns[static_cast<size_t>(j)].get_mpz_t(),
                             f * static_cast<unsigned long>(dd - j));
                V += tmp;
            }
            shift = static_cast<long>(f) * dd;
        }
    }

    PhaseValue exact_value(double t) const {
        Integer V;
        long shift;
        eval_exact(t, num, V, shift);
        PhaseValue out;
        out.exact_path = true;
        if (V == 0) {
            out.principal = out.raw = 0;
            out.log2_abs = -INF;
            return out;
        }
        double l2 = mpz_log2_abs(V.get_mpz_t()) - log2_den - double(shift);
        out.log2_abs = l2;
        // value = V / (den * 2^shift); raw and reduction both via MPFR
        mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max(96.0, l2 + 80.0));
        mpfr_t v, tp, r;
        mpfr_init2(v, prec);
        mpfr_init2(tp, prec);
        mpfr_init2(r, prec);
        mpfr_set_z(v, V.get_mpz_t(), MPFR_RNDN);
        mpfr_div_z(v, v, den.get_mpz_t(), MPFR_RNDN);
        mpfr_div_2ui(v, v, static_cast<unsigned long>(shift), MPFR_RNDN);
        out.raw = mpfr_get_d(v, MPFR_RNDN);
        two_pi_cache.get(tp);
        mpfr_remainder(r, v, tp, MPFR_RNDN);
        out.principal = mpfr_get_d(r, MPFR_RNDN);
        mpfr_clear(v);
        mpfr_clear(tp);
        mpfr_clear(r);
        return out;
    }

    PhaseValue fast_or_exact(double t) const {
        double S = mag_bound(fc, t);
        if (std::isfinite(S) && fast_factor * S < abs_need) {
            double v = comp_horner_split(fc, t);
            PhaseValue out;
            out.raw = v;
            out.log2_abs = v == 0 ? -INF : std::log2(std::fabs(v));
            out.principal = std::remainder(v, 2.0 * M_PI);
            out.exact_path = false;
            return out;
        }
        return exact_value(t);
    }
};

PhaseEvaluator::PhaseEvaluator(const Poly& p, double abs_need)
    : impl_(std::make_unique<Impl>(p, abs_need)) {}
PhaseEvaluator::~PhaseEvaluator() = default;
PhaseEvaluator::PhaseEvaluator(PhaseEvaluator&&) noexcept = default;
PhaseEvaluator& PhaseEvaluator::operator=(PhaseEvaluator&&) noexcept = default;

PhaseValue PhaseEvaluator::value(double t) const { return impl_->fast_or_exact(t); }

double PhaseEvaluator::sin_phase(double t) const { return std::sin(value(t).principal); }

namespace {
double aligned_quotient_diff(Integer v1, long s1, Integer v0, long s0, const Integer& den,
                             double log2_den) {
    long s = std::max(s1, s0);
    if (s1 < s) mpz_mul_2exp(v1.get_mpz_t(), v1.get_mpz_t(), static_cast<unsigned long>(s - s1));
    if (s0 < s) mpz_mul_2exp(v0.get_mpz_t(), v0.get_mpz_t(), static_cast<unsigned long>(s - s0));
    Integer dv = v1 - v0;
    if (dv == 0) return 0.0;
    double l2 = mpz_log2_abs(dv.get_mpz_t()) - log2_den - double(s);
    if (l2 > 1020) return sgn(dv) > 0 ? INF : -INF;
    Integer w = den;
    mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(s));
    Rational q(dv, w);
    q.canonicalize();
    return rational_to_double(q);
}
} // namespace

double PhaseEvaluator::diff(double t1, double t0) const {
    double S = impl_->mag_bound(impl_->fc, std::max(std::fabs(t1), std::fabs(t0)));
    if (std::isfinite(S) && impl_->fast_factor * S < 0.5 * impl_->abs_need) {
        return comp_horner_split(impl_->fc, t1) - comp_horner_split(impl_->fc, t0);
    }
    Integer v1, v0;
    long s1, s0;
    impl_->eval_exact(t1, impl_->num, v1, s1);
    impl_->eval_exact(t0, impl_->num, v0, s0);
    return aligned_quotient_diff(std::move(v1), s1, std::move(v0), s0, impl_->den, impl_->log2_den);
}

struct PhaseEvaluator::Anchor::Data {
    double t = 0;
    double fast_val = 0;
    Integer V;
    long shift = 0;
    bool have_exact = false;
};

PhaseEvaluator::Anchor::Anchor() : data_(std::make_unique<Data>()) {}
PhaseEvaluator::Anchor::~Anchor() = default;
PhaseEvaluator::Anchor::Anchor(Anchor&&) noexcept = default;

PhaseEvaluator::Anchor PhaseEvaluator::make_anchor(double t) const {
    Anchor a;
    a.data_->t = t;
    a.data_->fast_val = comp_horner_split(impl_->fc, t);
    impl_->eval_exact(t, impl_->num, a.data_->V, a.data_->shift);
    a.data_->have_exact = true;
    return a;
}

double PhaseEvaluator::diff_from(const Anchor& anchor, double t) const {
    const auto& ad = *anchor.data_;
    double S = impl_->mag_bound(impl_->fc, std::max(std::fabs(t), std::fabs(ad.t)));
    if (std::isfinite(S) && impl_->fast_factor * S < 0.5 * impl_->abs_need)
        return comp_horner_split(impl_->fc, t) - ad.fast_val;
    Integer v1;
    long s1;
    impl_->eval_exact(t, impl_->num, v1, s1);
    return aligned_quotient_diff(std::move(v1), s1, ad.V, ad.shift, impl_->den, impl_->log2_den);
}

double PhaseEvaluator::deriv_abs(double t) const {
    if (impl_->dfc.hi.empty()) return 0.0;
    double S = impl_->mag_bound(impl_->dfc, t);
    double v = comp_horner_split(impl_->dfc, t);
    // crude relative accuracy is enough for the stopping bounds
    if (std::isfinite(S) && impl_->dfast_factor * S < std::max(1e-9, 0.04 * std::fabs(v)))
        return std::fabs(v);
    Integer V;
    long shift;
    impl_->eval_exact(t, impl_->dnum, V, shift);
    if (V == 0) return 0.0;
    double l2 = mpz_log2_abs(V.get_mpz_t()) - impl_->log2_den - double(shift);
    if (l2 > 1020) return INF;
    Integer w = impl_->den;
    mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(shift));
    Rational q(V, w);
    q.canonicalize();
    return std::fabs(rational_to_double(q));
}

int PhaseEvaluator::degree() const { return impl_->deg; }
const Poly& PhaseEvaluator::poly() const { return impl_->p; }

} // namespace oscint

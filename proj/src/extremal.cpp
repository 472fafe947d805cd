#include "oscint/extremal.hpp"

#include "oscint/errors.hpp"
#include "oscint/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace oscint {

// ---------------------------------------------------------------- profile

TrapezoidProfile::TrapezoidProfile(int n_) : n(n_) {
    if (n < 2) throw Error("TrapezoidProfile: n must be >= 2");
}

double TrapezoidProfile::operator()(double t) const {
    double a = std::fabs(t);
    double s = 1.0 / n;
    double v;
    if (a >= 1.0) v = 0.0;
    else if (a <= s) v = n * a;
    else if (a >= 1.0 - s) v = n * (1.0 - a);
    else v = 1.0;
    return t < 0 ? -v : v;
}

Rational TrapezoidProfile::eval_exact(const Rational& t) const {
    Rational a = abs(t);
    Rational s(1, n);
    Rational v;
    if (a >= 1) v = 0;
    else if (a <= s) v = Rational(n) * a;
    else if (a >= 1 - s) v = Rational(n) * (1 - a);
    else v = 1;
    return t < 0 ? Rational(-v) : v;
}

double TrapezoidProfile::slope(double t) const {
    double a = std::fabs(t);
    double s = 1.0 / n;
    double m;
    if (a >= 1.0) m = 0.0;
    else if (a < s) m = n;
    else if (a > 1.0 - s) m = -n;
    else m = 0.0;
    return m; // f is odd so f' is even: same slope for +-t
}

std::vector<double> TrapezoidProfile::kinks() const {
    return {1.0 / n, 1.0 - 1.0 / n, 1.0};
}

Rational TrapezoidProfile::moment(int j) const {
    if (j < 0) throw Error("moment: j must be >= 0");
    if (j % 2 == 0) return Rational(0); // f odd
    Rational s(1, n);
    Rational a = 1 - s;
    // 2 [ int_0^s n t^(j+1) + int_s^a t^j + int_a^1 n (1-t) t^j ]
    Rational ramp0 = Rational(n) * rational_pow(s, j + 2) / (j + 2);
    Rational plateau = (rational_pow(a, j + 1) - rational_pow(s, j + 1)) / (j + 1);
    Rational ramp1 = Rational(n) * ((1 - rational_pow(a, j + 1)) / (j + 1) -
                                    (1 - rational_pow(a, j + 2)) / (j + 2));
    return 2 * (ramp0 + plateau + ramp1);
}

// ---------------------------------------------------------------- kernel

Rational kernel_normalizer(int k) {
    if (k < 1) throw Error("kernel_normalizer: k must be >= 1");
    static std::map<int, Rational> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    // int_0^1 (1-x^2)^m dx = 4^m (m!)^2 / (2m+1)!  =>  c_k = (2m+1)! / (4^(m+1) (m!)^2)
    unsigned long m = static_cast<unsigned long>(k) * static_cast<unsigned long>(k);
    Integer num = factorial(2 * m + 1);
    Integer fm = factorial(m);
    Integer den = fm * fm;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2 * (m + 1));
    Rational c(num, den);
    c.canonicalize();
    memo.emplace(k, c);
    return c;
}

SmoothingKernel::SmoothingKernel(int k_) : k(k_), c_k(kernel_normalizer(k_)) {
    log_c_k = rational_log2_abs(c_k) * std::log(2.0);
}

double SmoothingKernel::log_abs(double y) const {
    double u = y * y / 4.0;
    double lg = (u <= 1.0) ? std::log1p(-u) : std::log(u - 1.0);
    return log_c_k + double(k) * double(k) * lg;
}

double SmoothingKernel::operator()(double y) const {
    double la = log_abs(y);
    double mag = std::exp(la);
    if (y * y <= 4.0) return mag;
    // outside [-2,2] the base 1 - y^2/4 is negative: sign is (-1)^(k^2)
    return (k % 2 == 0) ? mag : -mag;
}

// ---------------------------------------------------------------- extremal

ExtremalPoly construct_extremal(int n, int k) {
    if (n < 2) throw Error("construct_extremal: n must be >= 2");
    if (k < 1) throw Error("construct_extremal: k must be >= 1");
    TrapezoidProfile prof(n);
    Rational c_k = kernel_normalizer(k);
    const long M = static_cast<long>(k) * k;
    const long d = 2 * M - 1;

    // mu_i for odd i up to 2M - 1
    std::vector<Rational> mu(static_cast<size_t>(2 * M), Rational(0));
    for (long i = 1; i < 2 * M; i += 2) mu[static_cast<size_t>(i)] = prof.moment(static_cast<int>(i));

    // P_k(t) = c_k sum_m C(M,m) (-4)^(-m) int f(x) (t-x)^(2m) dx; expanding the
    // power, the t^j coefficient collects i = 2m - j (odd) moment terms.
    std::vector<Rational> coeffs(static_cast<size_t>(d) + 1, Rational(0));
    std::vector<Rational> inv4pow(static_cast<size_t>(M) + 1);
    inv4pow[0] = 1;
    for (long m = 1; m <= M; ++m) inv4pow[static_cast<size_t>(m)] = inv4pow[static_cast<size_t>(m - 1)] / 4;

    for (long j = 1; j <= d; j += 2) {
        Rational acc(0);
        for (long m = (j + 1) / 2; m <= M; ++m) {
            long i = 2 * m - j;
            // sign: (-1)^m from the binomial, (-1)^i = -1 since i is odd
            Rational term = Rational(binomial(static_cast<unsigned long>(M), static_cast<unsigned long>(m)) *
                                     binomial(static_cast<unsigned long>(2 * m), static_cast<unsigned long>(i))) *
                            inv4pow[static_cast<size_t>(m)] * mu[static_cast<size_t>(i)];
            if (m % 2 == 0) acc -= term;
            else acc += term;
        }
        coeffs[static_cast<size_t>(j)] = c_k * acc;
    }

    ExtremalPoly out;
    out.n = n;
    out.k = k;
    out.coeff_form = Poly::from_rational(std::move(coeffs));
    // Exact leading coefficient, cross-checked against the closed form.
    Rational expected = Rational(2) * c_k * Rational(M) * (1 - Rational(1, n)) * inv4pow[static_cast<size_t>(M)];
    if (M % 2 == 0) expected = -expected; // (-1)^(k^2 + 1)
    out.leading = out.coeff_form.coeff(static_cast<int>(d));
    if (out.leading != expected)
        throw Error("construct_extremal: leading coefficient disagrees with the closed form");
    if (out.coeff_form.degree() != d)
        throw Error("construct_extremal: degree is not 2k^2 - 1");
    return out;
}

double eval_extremal_convolution(int n, int k, double t, double tol) {
    if (!(tol > 0)) throw InvalidTolerance(tol);
    TrapezoidProfile prof(n);
    SmoothingKernel phi(k);
    auto f = [&](double x) { return prof(x) * phi(t - x); };
    std::vector<double> pts = {-1.0 + 1.0 / n, -1.0 / n, 1.0 / n, 1.0 - 1.0 / n,
                               t, t - 2.0, t + 2.0};
    QuadResult r = integrate_adaptive_pts(f, pts, -1.0, 1.0, tol, 1e-13, 20000);
    return require_converged(r, tol);
}

double eval_extremal_symmetric(int n, int k, double t, double tol) {
    if (!(tol > 0)) throw InvalidTolerance(tol);
    if (t < -1.0 || t > 1.0) throw Error("eval_extremal_symmetric: requires t in [-1,1]");
    TrapezoidProfile prof(n);
    SmoothingKernel phi(k);
    auto f = [&](double x) { return (prof(t + x) + prof(t - x)) * phi(x); };
    std::vector<double> pts;
    for (double kk : {1.0 / n, 1.0 - 1.0 / n, 1.0}) {
        pts.push_back(kk - t);
        pts.push_back(kk + t);
        pts.push_back(-kk - t);
        pts.push_back(-kk + t);
    }
    QuadResult r = integrate_adaptive_pts(f, pts, 0.0, 2.0, tol, 1e-13, 20000);
    return require_converged(r, tol);
}

} // namespace oscint

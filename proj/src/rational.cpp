#include "oscint/rational.hpp"

#include "oscint/errors.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace oscint {

Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    if (k > n) return Integer(0);
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rational rational_pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    Rational base = q;
    long n = e;
    if (n < 0) {
        if (q == 0) throw Error("rational_pow: 0 to a negative power");
        base = 1 / q;
        n = -n;
    }
    Rational acc(1);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw Error("rational_from_double: non-finite input");
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

Rational rational_from_string(const std::string& s) {
    std::string t;
    t.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw Error("rational_from_string: empty string");

    auto slash = t.find('/');
    if (slash != std::string::npos) {
        Rational q;
        if (mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0)
            throw Error("rational_from_string: bad rational '" + s + "'");
        if (q.get_den() == 0) throw Error("rational_from_string: zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    }

    // decimal form: [sign] digits [. digits] [eE [sign] digits]
    bool neg = false;
    size_t i = 0;
    if (t[i] == '+' || t[i] == '-') { neg = t[i] == '-'; ++i; }
    std::string digits;
    long frac_digits = 0, expo = 0;
    bool any = false, in_frac = false;
    for (; i < t.size(); ++i) {
        char c = t[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (in_frac) ++frac_digits;
            any = true;
        } else if (c == '.' && !in_frac) {
            in_frac = true;
        } else if ((c == 'e' || c == 'E') && any) {
            expo = std::stol(t.substr(i + 1));
            break;
        } else {
            throw Error("rational_from_string: bad number '" + s + "'");
        }
    }
    if (!any) throw Error("rational_from_string: bad number '" + s + "'");
    Integer num(digits.empty() ? "0" : digits);
    if (neg) num = -num;
    long p10 = expo - frac_digits;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(p10)));
    Rational q;
    if (p10 >= 0)
        q = Rational(num * scale);
    else
        q = Rational(num, scale);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double rational_to_double(const Rational& q) {
    return q.get_d();
}

double rational_log2_abs(const Rational& q) {
    if (q == 0) return -std::numeric_limits<double>::infinity();
    signed long ne = 0, de = 0;
    double nd = mpz_get_d_2exp(&ne, q.get_num().get_mpz_t());
    double dd = mpz_get_d_2exp(&de, q.get_den().get_mpz_t());
    return std::log2(std::fabs(nd)) + double(ne) - std::log2(std::fabs(dd)) - double(de);
}

double cauchy_root_bound(const std::vector<Rational>& coeffs) {
    if (coeffs.empty()) throw ZeroPolynomial();
    const Rational& lead = coeffs.back();
    if (lead == 0) throw Error("cauchy_root_bound: untrimmed coefficients");
    Rational sum(0);
    for (size_t j = 0; j + 1 < coeffs.size(); ++j) sum += abs(coeffs[j]);
    Rational b = sum / abs(lead);
    double r = rational_to_double(b);
    if (!std::isfinite(r)) r = std::pow(2.0, rational_log2_abs(b) + 1);
    return std::max(1.0, r);
}

} // namespace oscint

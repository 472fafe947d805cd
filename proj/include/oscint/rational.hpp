#pragma once

// Exact rational scalar layer on top of GMP. Construction-time arithmetic in the
// library (kernel normalizers, moments, binomial expansions) is done here; floating
// point enters only at evaluation time.

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <vector>

namespace oscint {

using Rational = mpq_class;
using Integer  = mpz_class;

Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

// q^e for integer e (negative allowed, q != 0).
Rational rational_pow(const Rational& q, long e);

// Exactly converts a double (doubles are dyadic rationals; NaN/Inf rejected).
Rational rational_from_double(double x);

// Parses "p/q", integer, or decimal ("1.25", "-3e-2") strings exactly.
Rational rational_from_string(const std::string& s);

// Canonical "p" or "p/q" form.
std::string rational_to_string(const Rational& q);

// Rounded-to-nearest double, with overflow saturating to +-inf.
double rational_to_double(const Rational& q);

// log2 |q| within ~1 ulp of the exponent; -inf for 0. Safe for values far
// outside double range.
double rational_log2_abs(const Rational& q);

// Largest root magnitude bound max(1, sum |a_j| / |a_d|) for a coefficient list.
double cauchy_root_bound(const std::vector<Rational>& coeffs);

} // namespace oscint

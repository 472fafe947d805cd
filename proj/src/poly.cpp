#include "oscint/poly.hpp"

#include "oscint/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace oscint {

// ---------------------------------------------------------------- Poly basics

Poly Poly::from_rational(std::vector<Rational> coeffs) {
    Poly p;
    p.rep_ = Rep::exact;
    p.rc_ = std::move(coeffs);
    p.trim();
    return p;
}

Poly Poly::from_double(std::vector<double> coeffs) {
    for (double c : coeffs)
        if (!std::isfinite(c)) throw Error("Poly::from_double: non-finite coefficient");
    Poly p;
    p.rep_ = Rep::floating;
    p.dc_ = std::move(coeffs);
    p.trim();
    return p;
}

Poly Poly::monomial(int d, const Rational& c) {
    std::vector<Rational> v(static_cast<size_t>(d) + 1, Rational(0));
    v[static_cast<size_t>(d)] = c;
    return from_rational(std::move(v));
}

void Poly::trim() {
    if (rep_ == Rep::exact) {
        while (!rc_.empty() && rc_.back() == 0) rc_.pop_back();
        degree_ = static_cast<int>(rc_.size()) - 1;
    } else {
        while (!dc_.empty() && dc_.back() == 0.0) dc_.pop_back();
        degree_ = static_cast<int>(dc_.size()) - 1;
    }
}

Rational Poly::coeff(int j) const {
    if (j < 0 || j > degree_) return Rational(0);
    if (rep_ == Rep::exact) return rc_[static_cast<size_t>(j)];
    return rational_from_double(dc_[static_cast<size_t>(j)]);
}

double Poly::coeff_d(int j) const {
    if (j < 0 || j > degree_) return 0.0;
    if (rep_ == Rep::exact) return rational_to_double(rc_[static_cast<size_t>(j)]);
    return dc_[static_cast<size_t>(j)];
}

std::vector<Rational> Poly::rational_coeffs() const {
    if (rep_ == Rep::exact) return rc_;
    std::vector<Rational> v;
    v.reserve(dc_.size());
    for (double c : dc_) v.push_back(rational_from_double(c));
    return v;
}

Poly Poly::to_exact() const {
    if (rep_ == Rep::exact) return *this;
    return from_rational(rational_coeffs());
}

Poly Poly::to_float() const {
    if (rep_ == Rep::floating) return *this;
    std::vector<double> v;
    v.reserve(rc_.size());
    for (const auto& c : rc_) v.push_back(rational_to_double(c));
    return from_double(std::move(v));
}

double compensated_horner(const std::vector<double>& coeffs, double t) {
    if (coeffs.empty()) return 0.0;
    double s = coeffs.back();
    double c = 0.0; // running correction from the error-free transforms
    for (size_t j = coeffs.size() - 1; j-- > 0;) {
        double p = s * t;
        double pi = std::fma(s, t, -p);
        double sum = p + coeffs[j];
        double z = sum - p;
        double sigma = (p - (sum - z)) + (coeffs[j] - z);
        s = sum;
        c = c * t + (pi + sigma);
    }
    return s + c;
}

double Poly::eval(double t) const {
    if (degree_ < 0) return 0.0;
    if (rep_ == Rep::floating) return compensated_horner(dc_, t);
    return rational_to_double(eval_exact(rational_from_double(t)));
}

Rational Poly::eval_exact(const Rational& t) const {
    auto cs = rational_coeffs();
    if (cs.empty()) return Rational(0);
    Rational acc = cs.back();
    for (size_t j = cs.size() - 1; j-- > 0;) acc = acc * t + cs[j];
    return acc;
}

Poly Poly::derivative(int order) const {
    if (order < 1) throw Error("derivative: order must be >= 1");
    auto cs = rational_coeffs();
    for (int o = 0; o < order; ++o) {
        if (cs.size() <= 1) { cs.clear(); break; }
        for (size_t j = 1; j < cs.size(); ++j) cs[j - 1] = cs[j] * Rational(static_cast<long>(j));
        cs.pop_back();
    }
    Poly q = from_rational(std::move(cs));
    return rep_ == Rep::floating ? q.to_float() : q;
}

Poly Poly::scale_argument(const Rational& lambda) const {
    if (lambda <= 0) throw Error("scale_argument: lambda must be positive");
    auto cs = rational_coeffs();
    Rational pw(1);
    for (size_t j = 0; j < cs.size(); ++j) {
        cs[j] *= pw;
        pw *= lambda;
    }
    Poly q = from_rational(std::move(cs));
    return rep_ == Rep::floating ? q.to_float() : q;
}

Poly Poly::scale_argument(double lambda) const {
    return scale_argument(rational_from_double(lambda));
}

Poly Poly::divided_by_t() const {
    auto cs = rational_coeffs();
    if (cs.empty()) return Poly();
    cs.erase(cs.begin());
    Poly q = from_rational(std::move(cs));
    return rep_ == Rep::floating ? q.to_float() : q;
}

Poly Poly::without_constant_term() const {
    auto cs = rational_coeffs();
    if (!cs.empty()) cs[0] = 0;
    Poly q = from_rational(std::move(cs));
    return rep_ == Rep::floating ? q.to_float() : q;
}

bool Poly::is_odd() const {
    for (int j = 0; j <= degree_; j += 2)
        if (coeff(j) != 0) return false;
    return true;
}

bool Poly::is_even() const {
    for (int j = 1; j <= degree_; j += 2)
        if (coeff(j) != 0) return false;
    return true;
}

Poly Poly::odd_part() const {
    auto cs = rational_coeffs();
    for (size_t j = 0; j < cs.size(); j += 2) cs[j] = 0;
    Poly q = from_rational(std::move(cs));
    return rep_ == Rep::floating ? q.to_float() : q;
}

Poly Poly::even_part() const {
    auto cs = rational_coeffs();
    for (size_t j = 1; j < cs.size(); j += 2) cs[j] = 0;
    Poly q = from_rational(std::move(cs));
    return rep_ == Rep::floating ? q.to_float() : q;
}

Poly Poly::operator-() const {
    auto cs = rational_coeffs();
    for (auto& c : cs) c = -c;
    Poly q = from_rational(std::move(cs));
    return rep_ == Rep::floating ? q.to_float() : q;
}

Poly Poly::operator+(const Poly& rhs) const {
    auto a = rational_coeffs(), b = rhs.rational_coeffs();
    if (a.size() < b.size()) a.swap(b);
    for (size_t j = 0; j < b.size(); ++j) a[j] += b[j];
    Poly q = from_rational(std::move(a));
    return (rep_ == Rep::floating && rhs.rep_ == Rep::floating) ? q.to_float() : q;
}

Poly Poly::operator-(const Poly& rhs) const { return *this + (-rhs); }

Poly Poly::operator*(const Rational& c) const {
    auto cs = rational_coeffs();
    for (auto& x : cs) x *= c;
    Poly q = from_rational(std::move(cs));
    return rep_ == Rep::floating ? q.to_float() : q;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int j = degree_; j >= 0; --j) {
        Rational c = coeff(j);
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        os << rational_to_string(abs(c));
        if (j > 0) os << "*t^" << j;
    }
    return os.str();
}

// -------------------------------------------------------- integer poly helpers
//
// Root isolation runs on primitive integer coefficient vectors; all transforms
// below (affine map, Taylor shift, halving) stay exact.

namespace {

using ZPoly = std::vector<Integer>; // index = power, trimmed

void ztrim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

Integer zcontent(const ZPoly& p) {
    Integer g(0);
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

void zdivexact(ZPoly& p, const Integer& d) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
}

ZPoly zprimitive(ZPoly p) {
    ztrim(p);
    if (p.empty()) return p;
    Integer g = zcontent(p);
    if (sgn(p.back()) < 0) g = -g;
    zdivexact(p, g);
    return p;
}

ZPoly zderiv(const ZPoly& p) {
    ZPoly d;
    for (size_t j = 1; j < p.size(); ++j) d.push_back(p[j] * static_cast<long>(j));
    ztrim(d);
    return d;
}

// r = lc(b)^(deg a - deg b + 1) * a  mod  b
ZPoly zpseudo_rem(ZPoly a, const ZPoly& b) {
    int db = zdeg(b);
    const Integer& lb = b.back();
    while (zdeg(a) >= db) {
        int da = zdeg(a);
        Integer la = a.back();
        for (auto& c : a) c *= lb;
        for (int j = 0; j <= db; ++j)
            a[static_cast<size_t>(da - db + j)] -= la * b[static_cast<size_t>(j)];
        ztrim(a);
        if (zdeg(a) == da) throw Error("pseudo_rem: cancellation failure");
    }
    return a;
}

// Subresultant PRS gcd of primitive inputs.
ZPoly zgcd(ZPoly a, ZPoly b) {
    a = zprimitive(std::move(a));
    b = zprimitive(std::move(b));
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (zdeg(a) < zdeg(b)) a.swap(b);
    Integer g(1), h(1);
    while (true) {
        int delta = zdeg(a) - zdeg(b);
        ZPoly r = zpseudo_rem(a, b);
        if (r.empty()) return zprimitive(std::move(b));
        if (zdeg(r) == 0) return ZPoly{Integer(1)};
        a = std::move(b);
        Integer div = g;
        for (int i = 0; i < delta; ++i) div *= h;
        b = std::move(r);
        zdivexact(b, div);
        g = a.back();
        if (delta > 0) {
            Integer gp = g;
            for (int i = 1; i < delta; ++i) gp *= g;
            if (delta == 1) h = gp;
            else {
                Integer hp = h;
                for (int i = 2; i < delta; ++i) hp *= h;
                h = gp; // g^delta / h^(delta-1)
                mpz_divexact(h.get_mpz_t(), h.get_mpz_t(), hp.get_mpz_t());
            }
        }
    }
}

// Exact quotient a / b in Z[x]; throws if the division is not exact.
ZPoly zdivide(ZPoly a, const ZPoly& b) {
    ZPoly q(static_cast<size_t>(std::max(0, zdeg(a) - zdeg(b) + 1)), Integer(0));
    const Integer& lb = b.back();
    while (zdeg(a) >= zdeg(b) && !a.empty()) {
        int shift = zdeg(a) - zdeg(b);
        Integer c;
        mpz_divexact(c.get_mpz_t(), a.back().get_mpz_t(), lb.get_mpz_t());
        q[static_cast<size_t>(shift)] = c;
        for (int j = 0; j <= zdeg(b); ++j)
            a[static_cast<size_t>(shift + j)] -= c * b[static_cast<size_t>(j)];
        ztrim(a);
    }
    if (!a.empty()) throw Error("zdivide: inexact division");
    ztrim(q);
    return q;
}

// In-place Taylor shift p(x) -> p(x+1).
void zshift1(ZPoly& p) {
    int d = zdeg(p);
    for (int i = 0; i < d; ++i)
        for (int j = d - 1; j >= i; --j)
            p[static_cast<size_t>(j)] += p[static_cast<size_t>(j) + 1];
}

// p(x) -> 2^d p(x/2)
void zhalve(ZPoly& p) {
    int d = zdeg(p);
    for (int j = 0; j <= d; ++j)
        p[static_cast<size_t>(j)] <<= static_cast<unsigned>(d - j);
}

int sign_variations_01(const ZPoly& p) {
    // Descartes bound for (0,1): variations of (1+x)^d p(1/(1+x)).
    ZPoly r(p.rbegin(), p.rend());
    ztrim(r);
    if (r.empty()) return 0;
    zshift1(r);
    int var = 0, last = 0;
    for (const auto& c : r) {
        int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

int zsign_at0(const ZPoly& p) { return p.empty() ? 0 : sgn(p.front()); }

struct IsolCell {
    ZPoly poly;      // cell polynomial on [0,1]
    double lo, hi;   // cell in t coordinates
    int depth;
};

} // namespace

// ---------------------------------------------------------------- isolation

RootList isolate_roots(const Poly& p_in, double lo, double hi, double width) {
    if (p_in.is_zero()) throw ZeroPolynomial();
    if (!(lo < hi)) throw InvalidRange("isolate_roots: need lo < hi");
    if (width <= 0) width = 1e-14 * std::max(1.0, std::fabs(hi));

    RootList out;
    if (p_in.degree() == 0) return out;

    // Integer model of p: common denominator times rational coefficients.
    auto rcs = p_in.rational_coeffs();
    Integer den(1);
    for (const auto& c : rcs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly zp;
    zp.reserve(rcs.size());
    for (const auto& c : rcs) zp.push_back(Integer(c.get_num() * (den / c.get_den())));
    ztrim(zp);

    // Squarefree part (gcd with derivative removed); skipped above the desk-scale
    // degree bound, where the cluster cap below handles hypothetical multiples.
    ZPoly sf = zp;
    if (zdeg(zp) >= 2 && zdeg(zp) <= 128) {
        ZPoly g = zgcd(zp, zderiv(zp));
        if (zdeg(g) >= 1) sf = zdivide(zprimitive(std::move(zp)), g);
    }
    sf = zprimitive(std::move(sf));
    const int d = zdeg(sf);
    if (d <= 0) return out;

    // Exact sign of the squarefree part at a dyadic point.
    auto sf_sign_at = [&](double t) -> int {
        Rational tq = rational_from_double(t);
        Rational acc(sf.back());
        for (int j = d - 1; j >= 0; --j) acc = acc * tq + Rational(sf[static_cast<size_t>(j)]);
        return sgn(acc);
    };

    std::vector<RootInterval> roots;

    auto refine = [&](double a, double b) {
        // plain bisection; a,b bracket exactly one sign change of sf
        int sa = sf_sign_at(a);
        if (sa == 0) { roots.push_back({a, a, a}); return; }
        int sb = sf_sign_at(b);
        if (sb == 0) { roots.push_back({b, b, b}); return; }
        assert(sa != sb);
        double wlo = a, whi = b;
        while (whi - wlo > width) {
            double mid = 0.5 * (wlo + whi);
            if (mid <= wlo || mid >= whi) break;
            int sm = sf_sign_at(mid);
            if (sm == 0) { roots.push_back({mid, mid, mid}); return; }
            if (sm == sa) wlo = mid;
            else whi = mid;
        }
        roots.push_back({wlo, whi, 0.5 * (wlo + whi)});
    };

    // Map [lo,hi] to [0,1]: q(x) = sf(lo + (hi-lo) x), scaled to integers.
    Rational a = rational_from_double(lo), w = rational_from_double(hi) - a;
    std::vector<Rational> comp(static_cast<size_t>(d) + 1, Rational(0));
    // Horner in the ring: comp = comp*(a + w x) + c_j
    for (int j = d; j >= 0; --j) {
        Rational carry(0);
        for (size_t i = 0; i < comp.size(); ++i) {
            Rational nv = comp[i] * a + carry;
            carry = comp[i] * w;
            comp[i] = nv;
        }
        comp[0] += Rational(sf[static_cast<size_t>(j)]);
    }
    Integer cden(1);
    for (const auto& c : comp) mpz_lcm(cden.get_mpz_t(), cden.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly q;
    q.reserve(comp.size());
    for (const auto& c : comp) q.push_back(Integer(c.get_num() * (cden / c.get_den())));
    ztrim(q);

    // endpoint roots (cells below are open at the left, half-open bookkeeping)
    if (zsign_at0(q) == 0) roots.push_back({lo, lo, lo});
    if (sf_sign_at(hi) == 0) roots.push_back({hi, hi, hi});

    const int max_depth = 60;
    std::vector<IsolCell> stack;
    stack.push_back({std::move(q), lo, hi, 0});
    while (!stack.empty()) {
        IsolCell cell = std::move(stack.back());
        stack.pop_back();
        int v = sign_variations_01(cell.poly);
        if (v == 0) continue;
        if (v == 1) { refine(cell.lo, cell.hi); continue; }
        if (cell.depth >= max_depth || cell.hi - cell.lo <= width) {
            double mid = 0.5 * (cell.lo + cell.hi);
            roots.push_back({cell.lo, cell.hi, mid});
            out.clustered = true;
            continue;
        }
        ZPoly left = cell.poly;
        zhalve(left);
        ZPoly right = left;
        zshift1(right);
        double tm = 0.5 * (cell.lo + cell.hi);
        if (zsign_at0(right) == 0) roots.push_back({tm, tm, tm});
        stack.push_back({std::move(right), tm, cell.hi, cell.depth + 1});
        stack.push_back({std::move(left), cell.lo, tm, cell.depth + 1});
    }

    std::sort(roots.begin(), roots.end(),
              [](const RootInterval& x, const RootInterval& y) { return x.value < y.value; });
    // endpoint duplicates from the two detection paths
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](const RootInterval& x, const RootInterval& y) {
                                return x.value == y.value;
                            }),
                roots.end());
    out.roots = std::move(roots);
    return out;
}

} // namespace oscint

#include "oscint/sublevel.hpp"

#include "oscint/errors.hpp"

#include <algorithm>
#include <cmath>

namespace oscint {

Rational vinogradov_constant(int n) {
    if (n < 1) throw Error("vinogradov_constant: n must be >= 1");
    Rational nn_over_fact(rational_pow(Rational(n), n) / Rational(factorial(static_cast<unsigned long>(n))));
    Rational best(0);
    for (int k = 0; k <= n; ++k) {
        Integer c = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(n - k));
        mpz_mul_2exp(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(2 * n - k));
        Rational cand = Rational(c) * nn_over_fact;
        if (cand > best) best = cand;
    }
    return best;
}

double vinogradov_bound(const Poly& h, double alpha) {
    if (h.is_zero()) throw ZeroPolynomial();
    if (!(alpha > 0)) throw Error("vinogradov_bound: alpha must be positive");
    int n = h.degree();
    if (n < 1) throw Error("vinogradov_bound: degree must be >= 1");
    Rational maxb(0);
    for (int j = 0; j <= n; ++j) {
        Rational a = abs(h.coeff(j));
        if (a > maxb) maxb = a;
    }
    Rational inner = vinogradov_constant(n) * rational_from_double(alpha) / maxb;
    // (M_n alpha / maxb)^(1/n) through logs; magnitudes are tame
    return std::exp(rational_log2_abs(inner) * std::log(2.0) / double(n));
}

SublevelResult sublevel_measure(const Poly& h_in, double alpha, double lo, double hi) {
    if (!(alpha > 0)) throw Error("sublevel_measure: alpha must be positive");
    if (!(lo < hi)) throw InvalidRange("sublevel_measure: need lo < hi");
    SublevelResult out;
    Poly h = h_in.to_exact();
    if (h.is_zero()) {
        out.degenerate = true;
        out.measure = hi - lo;
        out.components = {{lo, hi}};
        return out;
    }

    Rational alpha_q = rational_from_double(alpha);
    std::vector<double> cuts{lo, hi};
    if (h.degree() >= 1) {
        Poly above = h - Poly::from_rational({alpha_q});
        Poly below = h + Poly::from_rational({alpha_q});
        for (const Poly* p : {&above, &below})
            for (const auto& r : isolate_roots(*p, lo, hi).roots) cuts.push_back(r.value);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    }

    // classify each cell by an exact comparison at its midpoint
    std::vector<std::pair<double, double>> comps;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Rational mid = (rational_from_double(cuts[i]) + rational_from_double(cuts[i + 1])) / 2;
        bool inside = abs(h.eval_exact(mid)) <= alpha_q;
        if (inside) {
            if (!comps.empty() && comps.back().second == cuts[i]) comps.back().second = cuts[i + 1];
            else comps.emplace_back(cuts[i], cuts[i + 1]);
        }
    }
    out.components = std::move(comps);
    for (const auto& c : out.components) out.measure += c.second - c.first;
    if (h.degree() >= 1) {
        out.constant_Mn = vinogradov_constant(h.degree());
        out.bound = vinogradov_bound(h, alpha);
    }
    return out;
}

std::vector<double> slide_and_select(const std::vector<std::pair<double, double>>& components,
                                     int n) {
    if (n < 1) throw Error("slide_and_select: n must be >= 1");
    double L = 0;
    for (const auto& c : components) {
        if (!(c.second >= c.first)) throw Error("slide_and_select: malformed component");
        L += c.second - c.first;
    }
    if (!(L > 0)) throw EmptySet("slide_and_select: total component length is zero");

    std::vector<double> pts;
    pts.reserve(static_cast<size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        double s = L * double(j) / double(n);
        // left-to-right slide map: position s in the concatenated components
        double cum = 0;
        double mapped = components.back().second;
        for (const auto& c : components) {
            double len = c.second - c.first;
            if (s <= cum + len) {
                mapped = c.first + (s - cum);
                break;
            }
            cum += len;
        }
        pts.push_back(mapped);
    }
    return pts;
}

std::vector<Rational> elementary_symmetric(const std::vector<Rational>& pts) {
    std::vector<Rational> sigma(pts.size() + 1, Rational(0));
    sigma[0] = 1;
    size_t used = 0;
    for (const auto& x : pts) {
        ++used;
        for (size_t m = used; m >= 1; --m) sigma[m] += x * sigma[m - 1];
    }
    return sigma;
}

Poly lagrange_coefficients(const std::vector<Rational>& points,
                           const std::vector<Rational>& values) {
    if (points.empty() || points.size() != values.size())
        throw Error("lagrange_coefficients: need matching nonempty points/values");
    size_t m = points.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (points[i] == points[j]) throw DuplicatePoints("lagrange_coefficients: repeated point");

    std::vector<Rational> coeff(m, Rational(0));
    for (size_t j = 0; j < m; ++j) {
        // prod_{i != j} (x - x_i) expanded through the elementary symmetric
        // functions of the omitted set
        std::vector<Rational> omitted;
        omitted.reserve(m - 1);
        Rational denom(1);
        for (size_t i = 0; i < m; ++i) {
            if (i == j) continue;
            omitted.push_back(points[i]);
            denom *= points[j] - points[i];
        }
        auto sigma = elementary_symmetric(omitted);
        size_t deg = m - 1;
        Rational scale = values[j] / denom;
        for (size_t k = 0; k <= deg; ++k) {
            // coefficient of x^k is (-1)^(deg-k) sigma_{deg-k}
            Rational term = sigma[deg - k] * scale;
            if ((deg - k) % 2 == 1) term = -term;
            coeff[k] += term;
        }
    }
    return Poly::from_rational(std::move(coeff));
}

Poly lagrange_coefficients(const std::vector<double>& points, const std::vector<double>& values) {
    std::vector<Rational> p, v;
    p.reserve(points.size());
    v.reserve(values.size());
    for (double x : points) p.push_back(rational_from_double(x));
    for (double x : values) v.push_back(rational_from_double(x));
    return lagrange_coefficients(p, v);
}

} // namespace oscint

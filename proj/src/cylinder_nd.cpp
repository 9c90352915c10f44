#include "cffractal/cylinder_nd.hpp"

#include <algorithm>

namespace cff::cyl {

long long linf_norm(const DigitVector& v) {
    long long m = 0;
    for (long long x : v) m = std::max(m, x);
    return m;
}

long long linf_dist(const DigitVector& v, const DigitVector& w) {
    if (v.size() != w.size()) throw invalid_input("dimension mismatch");
    long long m = 0;
    for (size_t j = 0; j < v.size(); ++j) m = std::max(m, std::abs(v[j] - w[j]));
    return m;
}

bool canonical_less(const DigitVector& a, const DigitVector& b) {
    const long long na = linf_norm(a), nb = linf_norm(b);
    if (na != nb) return na < nb;
    return a < b;
}

CylinderND cylinder_nd(const WordND& word) {
    if (word.empty()) throw invalid_input("cylinder_nd requires a nonempty word");
    const size_t d = word.front().size();
    if (d == 0) throw invalid_input("zero-dimensional digit vector");
    for (const auto& v : word)
        if (v.size() != d) throw invalid_input("dimension mismatch inside word");
    CylinderND c;
    c.word = word;
    c.factors.reserve(d);
    for (size_t j = 0; j < d; ++j) {
        cf::Word wj(word.size());
        for (size_t i = 0; i < word.size(); ++i) wj[i] = word[i][j];
        c.factors.push_back(cf::cylinder_interval(wj));
    }
    return c;
}

Rational diameter_linf(const CylinderND& c) {
    Rational m(0);
    for (const auto& f : c.factors) m = std::max(m, f.length());
    return m;
}

namespace {
// rational r with r >= sqrt(d), tightened by a few Newton steps from above
Rational sqrt_upper(long long d) {
    Integer s;
    mpz_sqrt(s.get_mpz_t(), int_of(d).get_mpz_t());
    if (s * s == int_of(d)) return Rational(s);
    Rational r(s + 1);
    for (int it = 0; it < 4; ++it) r = (r + rat_of(d) / r) / 2;
    // Newton from above stays above the root
    return r;
}
}  // namespace

DiameterL2 diameter_l2(const CylinderND& c) {
    const Rational side = diameter_linf(c);
    return DiameterL2{side, side * sqrt_upper(c.dim())};
}

Rational box_distance_linf(const CylinderND& a, const CylinderND& b) {
    if (a.dim() != b.dim()) throw invalid_input("dimension mismatch");
    Rational dist(0);
    for (int j = 0; j < a.dim(); ++j) {
        const auto& f = a.factors[j];
        const auto& g = b.factors[j];
        Rational gap(0);
        if (f.hi < g.lo) gap = g.lo - f.hi;
        else if (g.hi < f.lo) gap = f.lo - g.hi;
        dist = std::max(dist, gap);
    }
    return dist;
}

bool contains_point(const CylinderND& c, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != c.dim()) throw invalid_input("dimension mismatch");
    for (int j = 0; j < c.dim(); ++j) {
        const auto& f = c.factors[j];
        if (x[j] < f.lo || (x[j] == f.lo && !f.lo_closed)) return false;
        if (x[j] > f.hi || (x[j] == f.hi && !f.hi_closed)) return false;
    }
    return true;
}

SeparationCheck sibling_separation_check(const WordND& prefix, const DigitVector& v,
                                         const DigitVector& w) {
    if (linf_dist(v, w) < 2) throw invalid_input("siblings must differ by >= 2 in some coordinate");
    WordND a = prefix, b = prefix;
    a.push_back(v);
    b.push_back(w);
    const CylinderND ca = cylinder_nd(a), cb = cylinder_nd(b);
    Rational bound = ca.factors[0].length();
    for (int j = 0; j < ca.dim(); ++j)
        bound = std::min(bound, std::min(ca.factors[j].length(), cb.factors[j].length()));
    const Rational dist = box_distance_linf(ca, cb);
    return SeparationCheck{dist, bound, dist >= bound};
}

Rational digit_separation_bound(const WordND& prefix, const DigitVector& v,
                                const DigitVector& w) {
    if (linf_dist(v, w) < 2) throw invalid_input("digit vectors must differ by >= 2 in some coordinate");
    const size_t d = v.size();
    Rational best(0);
    bool any = false;
    for (size_t j = 0; j < d; ++j) {
        const long long gap = std::abs(v[j] - w[j]);
        if (gap < 2) continue;
        any = true;
        Rational len(1);
        if (!prefix.empty()) {
            cf::Word wj(prefix.size());
            for (size_t i = 0; i < prefix.size(); ++i) wj[i] = prefix[i][j];
            len = cf::cylinder_interval(wj).length();
        }
        best = std::max(best, Rational(len * make_rational(int_of(gap), int_of(v[j]) * int_of(w[j]))));
    }
    if (!any) throw invalid_input("no coordinate with gap >= 2");
    return best;
}

}  // namespace cff::cyl

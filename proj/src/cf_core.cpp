#include "cffractal/cf_core.hpp"

namespace cff::cf {

ConvergentPair convergents(const Word& w) {
    ConvergentPair c{Integer(0), Integer(1), Integer(1), Integer(0)};
    for (long long a : w) {
        if (a < 1) throw invalid_input("partial quotient must be >= 1");
        Integer p = int_of(a) * c.p + c.p_prev;
        Integer q = int_of(a) * c.q + c.q_prev;
        c.p_prev = c.p;
        c.q_prev = c.q;
        c.p = p;
        c.q = q;
    }
    return c;
}

Interval cylinder_interval(const Word& w) {
    if (w.empty()) return Interval{Rational(0), Rational(1), false, false};
    const ConvergentPair c = convergents(w);
    const Rational node = make_rational(c.p, c.q);
    const Rational mediant = make_rational(c.p + c.p_prev, c.q + c.q_prev);
    // mediant end closed, p_n/q_n end open; orientation flips with parity
    if (w.size() % 2 == 1) {
        return Interval{mediant, node, true, false};  // [mediant, p/q)
    }
    return Interval{node, mediant, false, true};  // (p/q, mediant]
}

Expansion digits_of(const Rational& x, int depth) {
    if (x <= 0 || x >= 1) throw invalid_input("digits_of requires x in (0,1)");
    Expansion e{{}, false};
    Integer num = x.get_num();
    Integer den = x.get_den();
    // Euclid on den/num: quotients are the partial quotients of num/den.
    while (num != 0 && static_cast<int>(e.digits.size()) < depth) {
        Integer q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(), num.get_mpz_t());
        e.digits.push_back(static_cast<long long>(q.get_si()));
        den = num;
        num = r;
    }
    e.terminated = (num == 0);
    return e;
}

Rational prepend_digits(const Rational& y, const Word& prefix) {
    if (y <= 0 || y >= 1) throw invalid_input("prepend_digits requires y in (0,1)");
    const ConvergentPair c = convergents(prefix);
    return make_rational(c.p * y.get_den() + y.get_num() * c.p_prev,
                         c.q * y.get_den() + y.get_num() * c.q_prev);
}

LengthBounds check_length_bounds(const Word& w) {
    if (w.empty()) throw invalid_input("check_length_bounds requires a nonempty word");
    Rational lower(1, 2);
    Rational upper(1);
    for (long long a : w) {
        if (a < 1) throw invalid_input("partial quotient must be >= 1");
        lower /= rat_of(a + 1) * rat_of(a + 1);
        upper /= rat_of(a) * rat_of(a);
    }
    const ConvergentPair c = convergents(w);
    return LengthBounds{lower, make_rational(1, c.q * (c.q + c.q_prev)), upper};
}

}  // namespace cff::cf

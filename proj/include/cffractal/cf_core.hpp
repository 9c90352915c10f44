// One-dimensional continued-fraction arithmetic, all exact.
//
// Convergents follow the classical two-term recursion with seeds
// p_{-1}=1, p_0=0, q_{-1}=0, q_0=1.  A fundamental interval of a word of
// length n is half-open: the mediant endpoint (p_n+p_{n-1})/(q_n+q_{n-1})
// is included, p_n/q_n is excluded, and the orientation flips with the
// parity of n.  Its exact length is 1/(q_n(q_n+q_{n-1})).
//
// Rational inputs are expanded by the Euclidean algorithm, which yields the
// canonical terminating expansion (last digit >= 2, never 1).

#pragma once

#include <vector>

#include "cffractal/rational.hpp"

namespace cff::cf {

using Word = std::vector<long long>;  // partial quotients, all >= 1

struct ConvergentPair {
    Integer p, q;            // p_n, q_n
    Integer p_prev, q_prev;  // p_{n-1}, q_{n-1}
};

struct Interval {
    Rational lo, hi;
    bool lo_closed = true;
    bool hi_closed = false;
    Rational length() const { return hi - lo; }
};

ConvergentPair convergents(const Word& w);

Interval cylinder_interval(const Word& w);  // empty word -> (0,1)

struct Expansion {
    Word digits;
    bool terminated;  // all partial quotients of x were produced
};

// First min(depth, expansion length) partial quotients of x in (0,1).
Expansion digits_of(const Rational& x, int depth);

// Möbius action of a digit prefix: (p_N + y p_{N-1}) / (q_N + y q_{N-1}).
Rational prepend_digits(const Rational& y, const Word& prefix);

struct LengthBounds {
    Rational lower;   // (1/2) prod (a_i+1)^{-2}
    Rational length;  // exact |I(w)|
    Rational upper;   // prod a_i^{-2}
};

LengthBounds check_length_bounds(const Word& w);

}  // namespace cff::cf

// Exact arbitrary-precision integers and fractions (GMP-backed).
// Rationals are always stored reduced with positive denominator; that is
// mpq_class's canonical form, enforced here at every construction site.

#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cff {

using Integer = mpz_class;
using Rational = mpq_class;

struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// gmpxx has no long long overloads; both are 64-bit here
inline Integer int_of(long long x) { return Integer(static_cast<long>(x)); }
inline Rational rat_of(long long x) { return Rational(static_cast<long>(x)); }

inline Rational make_rational(Integer num, Integer den) {
    if (den == 0) throw invalid_input("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q" or a bare integer "p".
Rational rational_from_string(const std::string& s);

// Canonical "p/q" form, denominator always printed (e.g. "5/1").
std::string fraction_string(const Rational& r);

Integer floor_int(const Rational& r);
Integer ceil_int(const Rational& r);

// base^e for integer e (negative allowed when base != 0).
Rational pow_rational(const Rational& base, long e);

Integer pow_integer(const Integer& base, unsigned long e);

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace cff

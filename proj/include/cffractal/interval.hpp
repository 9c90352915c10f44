// Directed-rounding enclosures [lo, hi] on top of MPFR.
//
// Every operation rounds lo toward -inf and hi toward +inf, so an RInterval
// always encloses the exact value of the expression it was built from.
// Series thresholds and growth inequalities are decided from these
// enclosures; an indeterminate comparison means "raise the precision or the
// truncation radius", never "guess".

#pragma once

#include <mpfr.h>

#include <string>

#include "cffractal/rational.hpp"

namespace cff {

class RInterval {
  public:
    RInterval();                             // [0, 0]
    explicit RInterval(const Rational& x);   // tight enclosure of x
    explicit RInterval(long long x);
    RInterval(const RInterval& o);
    RInterval(RInterval&& o) noexcept;
    RInterval& operator=(RInterval o);
    ~RInterval();

    static int default_precision();
    static void set_default_precision(int bits);

    static RInterval exact_point(const Rational& x);  // alias of ctor
    static RInterval positive_infinity();
    bool is_positive_infinity() const;

    RInterval operator+(const RInterval& o) const;
    RInterval operator-(const RInterval& o) const;
    RInterval operator-() const;
    RInterval operator*(const RInterval& o) const;
    RInterval reciprocal() const;  // requires a sign-definite interval
    RInterval operator/(const RInterval& o) const { return *this * o.reciprocal(); }
    RInterval& operator+=(const RInterval& o);

    static RInterval log(const RInterval& x);   // requires x.lo > 0
    static RInterval exp(const RInterval& x);
    static RInterval sqrt(const RInterval& x);  // requires x.lo >= 0
    // base^expo for base > 0, computed as exp(expo * log(base)).
    static RInterval pow(const RInterval& base, const RInterval& expo);
    static RInterval pow(const Rational& base, const Rational& expo);

    double lo() const;   // rounded down
    double hi() const;   // rounded up
    double mid() const;
    double width() const;

    bool contains(const Rational& c) const;
    bool definitely_lt(const Rational& c) const;  // hi <  c
    bool definitely_le(const Rational& c) const;  // hi <= c
    bool definitely_gt(const Rational& c) const;  // lo >  c
    bool definitely_ge(const Rational& c) const;  // lo >= c
    // *this entirely below/above the other interval
    bool definitely_lt(const RInterval& o) const;
    bool definitely_le(const RInterval& o) const;

    bool nonnegative() const { return definitely_ge(Rational(0)); }

    std::string str() const;  // "[lo, hi]" with shortest-ish doubles

  private:
    explicit RInterval(mpfr_prec_t prec, int /*tag*/);
    mpfr_t lo_, hi_;
};

}  // namespace cff

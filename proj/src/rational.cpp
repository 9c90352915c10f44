#include "cffractal/rational.hpp"

namespace cff {

Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw invalid_input("bad rational literal: " + s);
    if (r.get_den() == 0) throw invalid_input("zero denominator: " + s);
    r.canonicalize();
    return r;
}

std::string fraction_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer floor_int(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

Integer ceil_int(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0 && e < 0) throw invalid_input("0 to a negative power");
    const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), mag);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), mag);
    if (e < 0) {
        mpq_inv(r.get_mpq_t(), r.get_mpq_t());
    }
    r.canonicalize();
    return r;
}

Integer pow_integer(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace cff

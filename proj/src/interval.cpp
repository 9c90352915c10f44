#include "cffractal/interval.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <utility>

namespace cff {

namespace {
std::atomic<int> g_prec{128};
}

int RInterval::default_precision() { return g_prec.load(); }
void RInterval::set_default_precision(int bits) {
    if (bits < 24 || bits > 16384) throw invalid_input("unreasonable precision");
    g_prec.store(bits);
}

RInterval::RInterval(mpfr_prec_t prec, int) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
}

RInterval::RInterval() : RInterval(g_prec.load(), 0) {
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RInterval::RInterval(const Rational& x) : RInterval(g_prec.load(), 0) {
    mpfr_set_q(lo_, x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, x.get_mpq_t(), MPFR_RNDU);
}

RInterval::RInterval(long long x) : RInterval(g_prec.load(), 0) {
    mpfr_set_si(lo_, static_cast<long>(x), MPFR_RNDD);
    mpfr_set_si(hi_, static_cast<long>(x), MPFR_RNDU);
}

RInterval::RInterval(const RInterval& o) : RInterval(mpfr_get_prec(o.lo_), 0) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RInterval::RInterval(RInterval&& o) noexcept {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

RInterval& RInterval::operator=(RInterval o) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

RInterval::~RInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

RInterval RInterval::exact_point(const Rational& x) { return RInterval(x); }

RInterval RInterval::positive_infinity() {
    RInterval r;
    mpfr_set_inf(r.lo_, 1);
    mpfr_set_inf(r.hi_, 1);
    return r;
}

bool RInterval::is_positive_infinity() const { return mpfr_inf_p(lo_) && mpfr_sgn(lo_) > 0; }

RInterval RInterval::operator+(const RInterval& o) const {
    RInterval r(g_prec.load(), 0);
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

RInterval& RInterval::operator+=(const RInterval& o) {
    mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
    return *this;
}

RInterval RInterval::operator-(const RInterval& o) const {
    RInterval r(g_prec.load(), 0);
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

RInterval RInterval::operator-() const {
    RInterval r(g_prec.load(), 0);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

RInterval RInterval::operator*(const RInterval& o) const {
    // four-corner product with directed rounding
    RInterval r(g_prec.load(), 0);
    mpfr_t c[4];
    for (auto& x : c) mpfr_init2(x, g_prec.load());
    mpfr_mul(c[0], lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(c[1], lo_, o.hi_, MPFR_RNDD);
    mpfr_mul(c[2], hi_, o.lo_, MPFR_RNDD);
    mpfr_mul(c[3], hi_, o.hi_, MPFR_RNDD);
    mpfr_set(r.lo_, c[0], MPFR_RNDD);
    for (int i = 1; i < 4; ++i) mpfr_min(r.lo_, r.lo_, c[i], MPFR_RNDD);
    mpfr_mul(c[0], lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(c[1], lo_, o.hi_, MPFR_RNDU);
    mpfr_mul(c[2], hi_, o.lo_, MPFR_RNDU);
    mpfr_mul(c[3], hi_, o.hi_, MPFR_RNDU);
    mpfr_set(r.hi_, c[0], MPFR_RNDU);
    for (int i = 1; i < 4; ++i) mpfr_max(r.hi_, r.hi_, c[i], MPFR_RNDU);
    for (auto& x : c) mpfr_clear(x);
    return r;
}

RInterval RInterval::reciprocal() const {
    if (mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0)
        throw invalid_input("reciprocal of an interval containing zero");
    RInterval r(g_prec.load(), 0);
    mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
    return r;
}

RInterval RInterval::log(const RInterval& x) {
    if (mpfr_sgn(x.lo_) <= 0) throw invalid_input("log of a nonpositive interval");
    RInterval r(g_prec.load(), 0);
    mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

RInterval RInterval::exp(const RInterval& x) {
    RInterval r(g_prec.load(), 0);
    mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

RInterval RInterval::sqrt(const RInterval& x) {
    if (mpfr_sgn(x.lo_) < 0) throw invalid_input("sqrt of a negative interval");
    RInterval r(g_prec.load(), 0);
    mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

RInterval RInterval::pow(const RInterval& base, const RInterval& expo) {
    return exp(expo * log(base));
}

RInterval RInterval::pow(const Rational& base, const Rational& expo) {
    if (base <= 0) throw invalid_input("pow requires a positive base");
    return pow(RInterval(base), RInterval(expo));
}

double RInterval::lo() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RInterval::hi() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double RInterval::mid() const {
    if (is_positive_infinity()) return std::numeric_limits<double>::infinity();
    return 0.5 * (lo() + hi());
}

double RInterval::width() const { return hi() - lo(); }

bool RInterval::contains(const Rational& c) const {
    return mpfr_cmp_q(lo_, c.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, c.get_mpq_t()) >= 0;
}

bool RInterval::definitely_lt(const Rational& c) const { return mpfr_cmp_q(hi_, c.get_mpq_t()) < 0; }
bool RInterval::definitely_le(const Rational& c) const { return mpfr_cmp_q(hi_, c.get_mpq_t()) <= 0; }
bool RInterval::definitely_gt(const Rational& c) const { return mpfr_cmp_q(lo_, c.get_mpq_t()) > 0; }
bool RInterval::definitely_ge(const Rational& c) const { return mpfr_cmp_q(lo_, c.get_mpq_t()) >= 0; }

bool RInterval::definitely_lt(const RInterval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
bool RInterval::definitely_le(const RInterval& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }

std::string RInterval::str() const {
    std::ostringstream os;
    os.precision(17);
    os << "[" << lo() << ", " << hi() << "]";
    return os.str();
}

}  // namespace cff

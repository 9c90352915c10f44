#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cffractal/cf_core.hpp"

using namespace cff;
using namespace cff::cf;

namespace {

Rational Q(long long n, long long d) { return make_rational(int_of(n), int_of(d)); }

Word random_word(std::mt19937_64& rng, int max_depth, long long max_digit) {
    std::uniform_int_distribution<int> dlen(1, max_depth);
    std::uniform_int_distribution<long long> ddig(1, max_digit);
    Word w(dlen(rng));
    for (auto& a : w) a = ddig(rng);
    return w;
}

}  // namespace

TEST_CASE("convergent recursion on frozen examples") {
    // all-ones word: q runs through Fibonacci numbers
    Word ones(5, 1);
    ConvergentPair c = convergents(ones);
    CHECK(c.p == 5);
    CHECK(c.q == 8);
    CHECK(c.q_prev == 5);

    c = convergents({});
    CHECK(c.p == 0);
    CHECK(c.q == 1);
    CHECK(c.p_prev == 1);
    CHECK(c.q_prev == 0);

    c = convergents({2, 1});
    CHECK(c.p == 1);
    CHECK(c.q == 3);
    CHECK(c.p_prev == 1);
    CHECK(c.q_prev == 2);

    CHECK_THROWS_AS(convergents({2, 0}), invalid_input);
    CHECK_THROWS_AS(convergents({-3}), invalid_input);
}

TEST_CASE("cylinder interval endpoints and closedness") {
    Interval i = cylinder_interval({1});
    CHECK(i.lo == Q(1, 2));
    CHECK(i.hi == Rational(1));
    CHECK(i.lo_closed);
    CHECK_FALSE(i.hi_closed);
    CHECK(i.length() == Q(1, 2));

    i = cylinder_interval({2});
    CHECK(i.lo == Q(1, 3));
    CHECK(i.hi == Q(1, 2));
    CHECK(i.lo_closed);
    CHECK_FALSE(i.hi_closed);
    CHECK(i.length() == Q(1, 6));

    i = cylinder_interval({2, 1});
    CHECK(i.lo == Q(1, 3));
    CHECK(i.hi == Q(2, 5));
    CHECK_FALSE(i.lo_closed);
    CHECK(i.hi_closed);
    CHECK(i.length() == Q(1, 15));

    i = cylinder_interval({});
    CHECK(i.lo == 0);
    CHECK(i.hi == 1);
    CHECK_FALSE(i.lo_closed);
    CHECK_FALSE(i.hi_closed);
}

TEST_CASE("rational expansions terminate canonically") {
    Expansion e = digits_of(Q(3, 7), 5);
    CHECK(e.digits == Word{2, 3});
    CHECK(e.terminated);

    e = digits_of(Q(1, 2), 3);
    CHECK(e.digits == Word{2});
    CHECK(e.terminated);

    e = digits_of(Q(5, 8), 4);
    CHECK(e.digits == Word{1, 1, 1, 2});
    CHECK(e.terminated);

    // truncation below the expansion length
    e = digits_of(Q(5, 8), 2);
    CHECK(e.digits == Word{1, 1});
    CHECK_FALSE(e.terminated);

    CHECK_THROWS_AS(digits_of(Rational(2), 3), invalid_input);
    CHECK_THROWS_AS(digits_of(Rational(0), 3), invalid_input);
}

TEST_CASE("prepend_digits is the Moebius action of the prefix") {
    CHECK(prepend_digits(Q(1, 2), {2}) == Q(2, 5));
    Rational y = Q(17, 41);
    CHECK(prepend_digits(y, {}) == y);
    CHECK(prepend_digits(Q(1, 3), {1, 1}) == Q(4, 7));
}

TEST_CASE("length bounds on frozen examples") {
    LengthBounds b = check_length_bounds({2});
    CHECK(b.lower == Q(1, 18));
    CHECK(b.length == Q(1, 6));
    CHECK(b.upper == Q(1, 4));

    b = check_length_bounds({1, 1});
    CHECK(b.lower == Q(1, 32));
    CHECK(b.length == Q(1, 6));
    CHECK(b.upper == Rational(1));
}

TEST_CASE("all-ones words ride the Fibonacci sequence") {
    Integer f_prev = 1, f = 1;  // F_1, F_2
    for (int n = 1; n <= 40; ++n) {
        ConvergentPair c = convergents(Word(n, 1));
        CHECK(c.q == f);  // q_n = F_{n+1}
        Integer nf = f + f_prev;
        f_prev = f;
        f = nf;
    }
}

TEST_CASE("exact identities on random words") {
    std::mt19937_64 rng(20250810);
    const Rational phi_lo = Q(987, 610);  // < golden ratio
    for (int it = 0; it < 400; ++it) {
        Word w = random_word(rng, 12, 50);
        const auto n = static_cast<long>(w.size());
        ConvergentPair c = convergents(w);

        // |I| = 1/(q_n (q_n + q_{n-1})), sandwiched by the digit products
        LengthBounds b = check_length_bounds(w);
        CHECK(cylinder_interval(w).length() == b.length);
        CHECK(b.length == make_rational(1, c.q * (c.q + c.q_prev)));
        CHECK(b.lower <= b.length);
        CHECK(b.length <= b.upper);

        // determinant identity: p_n q_{n-1} - p_{n-1} q_n = (-1)^{n+1} for these seeds
        Integer det = c.p * c.q_prev - c.p_prev * c.q;
        CHECK(det == ((n % 2 == 1) ? 1 : -1));

        // q_n dominates Fibonacci, hence the uniform decay bound with
        // phi_lo a rational lower approximation of the golden ratio:
        // |I| <= phi^{2-2n} <= phi_lo^{2-2n}
        CHECK(b.length * pow_rational(phi_lo, 2 * n - 2) <= 1);
    }
}

TEST_CASE("expansion round trip through a prefix") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long long> dnum(1, 60);
    for (int it = 0; it < 300; ++it) {
        Word w = random_word(rng, 8, 12);
        // y restricted per the splice-point convention: first digit >= 2
        long long den = dnum(rng) + 2, num = dnum(rng) % (den / 2) + 1;
        Rational y = make_rational(int_of(num), int_of(den));
        if (y >= Q(1, 2)) y = y / 2;
        Rational x = prepend_digits(y, w);
        Expansion e = digits_of(x, static_cast<int>(w.size()));
        CHECK(e.digits == w);
    }
}

TEST_CASE("child interval length decreases in the last digit") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 100; ++it) {
        Word prefix = random_word(rng, 6, 20);
        Rational prev;
        for (long long t = 1; t <= 12; ++t) {
            Word w = prefix;
            w.push_back(t);
            Rational len = cylinder_interval(w).length();
            if (t > 1) CHECK(len < prev);
            prev = len;
        }
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cffractal/cylinder_nd.hpp"

using namespace cff;
using namespace cff::cyl;

namespace {

Rational Q(long long n, long long d) { return make_rational(int_of(n), int_of(d)); }

WordND random_word_nd(std::mt19937_64& rng, int d, int max_depth, long long max_digit) {
    std::uniform_int_distribution<int> dlen(0, max_depth);
    std::uniform_int_distribution<long long> ddig(1, max_digit);
    WordND w(dlen(rng), DigitVector(d));
    for (auto& v : w)
        for (auto& x : v) x = ddig(rng);
    return w;
}

// v, w in [1,max]^d with ||v-w||inf >= 2
std::pair<DigitVector, DigitVector> random_separated_pair(std::mt19937_64& rng, int d,
                                                          long long max_digit) {
    std::uniform_int_distribution<long long> ddig(1, max_digit);
    std::uniform_int_distribution<int> dcoord(0, d - 1);
    for (;;) {
        DigitVector v(d), w(d);
        for (int j = 0; j < d; ++j) {
            v[j] = ddig(rng);
            w[j] = ddig(rng);
        }
        int j = dcoord(rng);
        if (v[j] + 2 <= max_digit) w[j] = v[j] + 2;
        if (linf_dist(v, w) >= 2) return {v, w};
    }
}

}  // namespace

TEST_CASE("product cylinders decompose coordinatewise") {
    CylinderND c = cylinder_nd({{1, 2}});
    REQUIRE(c.dim() == 2);
    CHECK(c.factors[0].lo == Q(1, 2));
    CHECK(c.factors[0].hi == Rational(1));
    CHECK(c.factors[1].lo == Q(1, 3));
    CHECK(c.factors[1].hi == Q(1, 2));

    c = cylinder_nd({{7}});
    CHECK(c.factors[0].length() == cf::cylinder_interval({7}).length());

    c = cylinder_nd({{2, 2}, {1, 1}});
    for (int j = 0; j < 2; ++j) {
        CHECK(c.factors[j].lo == Q(1, 3));
        CHECK(c.factors[j].hi == Q(2, 5));
        CHECK_FALSE(c.factors[j].lo_closed);
        CHECK(c.factors[j].hi_closed);
    }

    CHECK_THROWS_AS(cylinder_nd({{1, 2}, {3}}), invalid_input);
}

TEST_CASE("membership matches coordinatewise membership") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> dnum(1, 97);
    for (int it = 0; it < 200; ++it) {
        WordND w = random_word_nd(rng, 2, 4, 9);
        if (w.empty()) continue;
        CylinderND c = cylinder_nd(w);
        std::vector<Rational> x(2);
        for (auto& xi : x) {
            long long n = dnum(rng);
            x[0] = x[0];  // keep order deterministic
            xi = make_rational(int_of(n), Integer(101));
        }
        bool coordwise = true;
        for (int j = 0; j < 2; ++j) {
            const auto& f = c.factors[j];
            bool in = (x[j] > f.lo || (x[j] == f.lo && f.lo_closed)) &&
                      (x[j] < f.hi || (x[j] == f.hi && f.hi_closed));
            coordwise = coordwise && in;
        }
        CHECK(contains_point(c, x) == coordwise);
    }
}

TEST_CASE("linf diameter is the largest side, l2 via sqrt(d) enclosure") {
    CylinderND c = cylinder_nd({{1, 2}});
    CHECK(diameter_linf(c) == Q(1, 2));

    CylinderND c1 = cylinder_nd({{4}, {2}});
    CHECK(diameter_linf(c1) == c1.factors[0].length());

    DiameterL2 d2 = diameter_l2(c);
    CHECK(d2.lo == Q(1, 2));
    // hi = max side * r with r^2 >= 2
    Rational r = d2.hi / d2.lo;
    CHECK(r * r >= 2);
    CHECK(r * r <= Q(21, 10));  // enclosure kept tight
}

TEST_CASE("cylinder diameter estimate with c1=1/2, c2=1 under linf") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 200; ++it) {
        WordND w = random_word_nd(rng, 3, 5, 15);
        if (w.empty()) continue;
        CylinderND c = cylinder_nd(w);
        Rational lower(0), upper(0);
        for (int j = 0; j < 3; ++j) {
            Rational lo = Q(1, 2), up(1);
            for (const auto& v : w) {
                lo /= rat_of(v[j] + 1) * rat_of(v[j] + 1);
                up /= rat_of(v[j]) * rat_of(v[j]);
            }
            lower = std::max(lower, lo);
            upper = std::max(upper, up);
        }
        Rational diam = diameter_linf(c);
        CHECK(lower <= diam);
        CHECK(diam <= upper);
    }
}

TEST_CASE("box distance on closures") {
    CylinderND a = cylinder_nd({{1, 1}});
    CHECK(box_distance_linf(a, a) == 0);

    CylinderND i2 = cylinder_nd({{2}});
    CylinderND i1 = cylinder_nd({{1}});
    CHECK(box_distance_linf(i2, i1) == 0);  // [1/3,1/2) touches [1/2,1)

    CylinderND i3 = cylinder_nd({{3}});
    CHECK(box_distance_linf(i3, i1) == Q(1, 6));
}

TEST_CASE("sibling separation with the proof constant c=1") {
    SeparationCheck s = sibling_separation_check({}, {1}, {3});
    CHECK(s.distance == Q(1, 6));
    CHECK(s.bound == Q(1, 12));
    CHECK(s.ok);

    s = sibling_separation_check({}, {1, 1}, {3, 3});
    CHECK(s.ok);

    CHECK_THROWS_AS(sibling_separation_check({}, {2, 2}, {3, 3}), invalid_input);

    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> dd(1, 3);
    for (int it = 0; it < 1000; ++it) {
        int d = dd(rng);
        WordND prefix = random_word_nd(rng, d, 6, 20);
        auto [v, w] = random_separated_pair(rng, d, 20);
        SeparationCheck chk = sibling_separation_check(prefix, v, w);
        CHECK(chk.ok);
    }
}

TEST_CASE("digit separation bound over coordinates with gap >= 2") {
    CHECK(digit_separation_bound({}, {2}, {5}) == Q(3, 10));
    CHECK(digit_separation_bound({}, {2, 9}, {2, 3}) == Q(2, 9));
    CHECK_THROWS_AS(digit_separation_bound({}, {2, 2}, {3, 1}), invalid_input);

    // regression: child boxes stay at least a quarter of the digit-separation
    // bound apart; 1/4 is sharp (prefix [], v=1, w=3 attains it exactly)
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> dd(1, 3);
    for (int it = 0; it < 1000; ++it) {
        int d = dd(rng);
        WordND prefix = random_word_nd(rng, d, 6, 20);
        auto [v, w] = random_separated_pair(rng, d, 20);
        WordND a = prefix, b = prefix;
        a.push_back(v);
        b.push_back(w);
        Rational dist = box_distance_linf(cylinder_nd(a), cylinder_nd(b));
        Rational bound = digit_separation_bound(prefix, v, w);
        CHECK(dist >= bound / 4);
    }
}

TEST_CASE("diameter decay in the word length") {
    std::mt19937_64 rng(41);
    const Rational phi_lo = Q(987, 610);
    for (int it = 0; it < 200; ++it) {
        WordND w = random_word_nd(rng, 2, 8, 30);
        if (w.empty()) continue;
        const auto n = static_cast<long>(w.size());
        CHECK(diameter_linf(cylinder_nd(w)) * pow_rational(phi_lo, 2 * n - 2) <= 1);
    }
}

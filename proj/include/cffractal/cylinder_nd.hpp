// Product cylinders in (0,1)^d addressed by words of digit vectors.
//
// A d-dimensional cylinder is the product of the coordinatewise 1-d
// fundamental intervals; everything here stays in exact rationals.  The
// default metric is l-infinity, in which box distances and diameters are
// exact; l2 diameters are reported as a rational enclosure
// [max side, sqrt(d) * max side].

#pragma once

#include <optional>
#include <vector>

#include "cffractal/cf_core.hpp"

namespace cff::cyl {

using DigitVector = std::vector<long long>;     // coordinates >= 1
using WordND = std::vector<DigitVector>;        // uniform dimension

long long linf_norm(const DigitVector& v);
long long linf_dist(const DigitVector& v, const DigitVector& w);
// nondecreasing norm, lexicographic tie-break: the canonical order
bool canonical_less(const DigitVector& a, const DigitVector& b);

struct CylinderND {
    std::vector<cf::Interval> factors;
    WordND word;
    int dim() const { return static_cast<int>(factors.size()); }
};

CylinderND cylinder_nd(const WordND& word);

Rational diameter_linf(const CylinderND& c);

struct DiameterL2 {
    Rational lo, hi;  // max side <= diam <= sqrt(d) * max side
};
DiameterL2 diameter_l2(const CylinderND& c);

// Exact inf of the l-infinity distance between the two closed boxes;
// 0 iff the closures meet in every coordinate.
Rational box_distance_linf(const CylinderND& a, const CylinderND& b);

bool contains_point(const CylinderND& c, const std::vector<Rational>& x);

struct SeparationCheck {
    Rational distance;  // box_distance_linf of the two children
    Rational bound;     // min_j min(|I_child|, |I_child'|), tested with c = 1
    bool ok;
};

// Children of a common prefix at digit vectors v, w with ||v-w||inf >= 2.
SeparationCheck sibling_separation_check(const WordND& prefix, const DigitVector& v,
                                         const DigitVector& w);

// max over coordinates with gap >= 2 of |I_prefix^(j)| * |v_j-w_j|/(v_j w_j);
// the paper's unspecified constant C is left to the caller.
Rational digit_separation_bound(const WordND& prefix, const DigitVector& v,
                                const DigitVector& w);

}  // namespace cff::cyl

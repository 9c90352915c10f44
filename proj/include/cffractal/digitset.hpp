// Subsets of N^d as first-class immutable values.
//
// A digit set knows its dimension, a membership predicate, and a canonical
// shell enumerator (members v with lo <= ||v||inf <= hi, ordered by norm
// then lexicographically).  Families with closed-form box counts provide
// them; everything else falls back to bounded enumeration.  The tail
// structure tag is what the series machinery in exponents.hpp dispatches on.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cffractal/cylinder_nd.hpp"

namespace cff::sets {

using cyl::DigitVector;

inline constexpr long long kDefaultBudget = 50'000'000;

// Q_side(origin) = origin + [1,side]^d; origin coordinates >= 0.
struct Box {
    DigitVector origin;
    long long side = 1;
    int dim() const { return static_cast<int>(origin.size()); }
    bool contains(const DigitVector& v) const;
};

Box folner_box(int d, long long side);  // origin 0

struct DeclaredDensity {
    double alpha = 1.0;  // |S cap Q_N| ~ N^{d/alpha} / (log N)^beta
    double beta = 0.0;
};

// ---- tail structure tags (consumed by the series engine) -------------------

// 1-d family a(m) = (scale*m + offset)^power for m >= m_start, increasing.
struct Tail1D {
    long long m_start = 1;
    long long scale = 1;
    long long offset = 0;
    int power = 1;
};
struct TailDiagonal {  // {(a,...,a) : a = base family member}
    int d = 1;
    Tail1D base;
};
struct TailBand {  // C_K = {max <= K*min} in N^d
    long long K = 1;
    int d = 1;
};
struct TailMinProduct {  // {v : min_j v_j >= start} in N^d (full set: start=1)
    int d = 1;
    long long start = 1;
};
struct TailProduct {  // product of 1-d families (zeta tails only)
    std::vector<Tail1D> factors;
};
struct TailFinite {};    // explicit finite sets: no tail at all
struct TailDeclared {};  // only a declared (alpha, beta): heuristic tails
struct TailNone {};

using TailStructure = std::variant<TailNone, TailFinite, Tail1D, TailDiagonal, TailBand,
                                   TailMinProduct, TailProduct, TailDeclared>;

// ---- the set interface ------------------------------------------------------

class DigitSetImpl {
  public:
    virtual ~DigitSetImpl() = default;
    virtual int dim() const = 0;
    virtual std::string name() const = 0;
    virtual bool contains(const DigitVector& v) const = 0;

    // Canonical shell enumeration; fn returns false to stop early.
    // Budget counts visited candidates; overruns throw budget_error.
    virtual void enumerate_shells(long long lo, long long hi, long long budget,
                                  const std::function<bool(const DigitVector&)>& fn) const;

    virtual std::optional<Integer> count_box_closed(const Box& b) const;
    virtual std::optional<DeclaredDensity> declared_density() const { return std::nullopt; }
    virtual TailStructure tail_structure() const { return TailNone{}; }
};

using DigitSet = std::shared_ptr<const DigitSetImpl>;

// ---- families ---------------------------------------------------------------

DigitSet full_set(int d);
DigitSet diagonal_set(int d);
DigitSet squares_diagonal_set(int d);
DigitSet band_set(long long K, int d);      // C_K
DigitSet tail_set(long long N);             // {a >= N} in N^1
DigitSet squares_set();                     // {m^2} in N^1
DigitSet arithmetic_set(long long q, long long r);  // {q*m + r : m >= 1} in N^1
DigitSet explicit_set(int d, std::vector<DigitVector> members, std::string name = "explicit");
// Union of boxes intersected with a base set (base may be null = full).
DigitSet union_boxes_set(int d, std::vector<Box> boxes, DigitSet base = nullptr,
                         std::string name = "union_boxes");
DigitSet product_set(std::vector<DigitSet> one_dim_factors);

// ---- counting and densities -------------------------------------------------

Integer count_box(const DigitSet& s, const Box& b, long long budget = kDefaultBudget);

struct DensityRow {
    long long horizon;
    Integer count;
    Integer denom;
    Rational ratio;
    Rational running_max;
};

struct DensityReport {
    std::vector<DensityRow> rows;
    std::vector<DigitVector> witnesses;  // maximizing translates, when searched
    std::string strategy;
    std::string to_csv() const;  // columns: N,count,denom,ratio,running_max
};

DensityReport upper_density(const DigitSet& s, const std::vector<long long>& horizons,
                            long long budget = kDefaultBudget);

struct TranslateStrategy {
    enum class Kind { explicit_list, exhaustive, witnesses } kind = Kind::exhaustive;
    std::vector<DigitVector> translates;  // for explicit_list / witnesses
    long long exhaustive_bound = 0;       // search ||v||inf <= bound, v >= 0
    std::string describe() const;
};

DensityReport banach_density(const DigitSet& s, long long N, const TranslateStrategy& strat,
                             long long budget = kDefaultBudget);

DensityReport relative_density(const DigitSet& a, const DigitSet& s,
                               const std::vector<long long>& horizons,
                               long long budget = kDefaultBudget);

// |C_K cap Q_N| via the exact shell sum.
Integer ck_count(long long K, int d, long long N);

// Smallest K with 1 - (1-1/K)^{d-1} < delta/4, exact arithmetic.
long long balanced_extract(const Rational& delta, int d);

// ---- density reduction (finite-horizon Steps 1-3) ---------------------------

struct ReductionStage {
    long long k;             // stage parameter: N_k = k, margin M_k = k^2
    long long box_side;      // N_k
    DigitVector translate;   // v_k, min coordinate >= max(k^2, 10^j N_k)
    Rational box_ratio;      // |S cap B_j| / |B_j|
    Rational witness_ratio;  // ratio of the stage witness cube
};

struct DensityReductionResult {
    DigitSet reduced;  // S' = union_j (S cap B_j)
    std::vector<Box> boxes;
    std::vector<ReductionStage> stages;
    bool complete = false;
    std::string note;
};

// Witnesses: translate search strategy evaluated at scale R_k >= k^4.
DensityReductionResult density_reduction(const DigitSet& s, int stages,
                                         const TranslateStrategy& strat,
                                         long long budget = kDefaultBudget);

// ---- polynomial configuration search ----------------------------------------

struct PolynomialMap {          // P : Z^r -> Z^d with P(0) = 0
    int r = 1;
    int d = 1;
    std::function<std::vector<long long>(const std::vector<long long>&)> eval;
    std::string describe;
};

struct Configuration {
    long long n;
    DigitVector u;
};

// First (n, u) in lexicographic order with u + P(n*f) in D for all f in F.
std::optional<Configuration> find_configuration(const DigitSet& D,
                                                const std::vector<std::vector<long long>>& F,
                                                const PolynomialMap& P, long long n_max,
                                                const Box& u_box);

// Scale-doubling sanity check of a declared density exponent (factor-4 test).
bool validate_declared_density(const DigitSet& s, long long horizon,
                               long long budget = kDefaultBudget);

}  // namespace cff::sets

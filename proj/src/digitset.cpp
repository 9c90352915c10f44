#include "cffractal/digitset.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "cffractal/parallel.hpp"

namespace cff::sets {

namespace {

void check_dim(const DigitSetImpl& s, const DigitVector& v) {
    if (static_cast<int>(v.size()) != s.dim()) throw invalid_input("dimension mismatch");
}

// Lattice shell {v in [1,m]^d : max v = m} in lexicographic order.
// Visits only shell members; budget counts emissions.
bool walk_shell(int d, long long m, long long& budget,
                const std::function<bool(const DigitVector&)>& fn) {
    DigitVector v(d);
    std::function<bool(int, bool)> rec = [&](int pos, bool has_max) -> bool {
        if (pos == d - 1) {
            const long long from = has_max ? 1 : m;
            for (long long x = from; x <= m; ++x) {
                v[pos] = x;
                if (--budget < 0) throw budget_error("shell enumeration budget exceeded");
                if (!fn(v)) return false;
            }
            return true;
        }
        for (long long x = 1; x <= m; ++x) {
            v[pos] = x;
            if (!rec(pos + 1, has_max || x == m)) return false;
        }
        return true;
    };
    return rec(0, false);
}

long long t1d_value(const Tail1D& t, long long m) {
    const long long base = t.scale * m + t.offset;
    long long r = 1;
    for (int i = 0; i < t.power; ++i) r *= base;
    return r;
}

long long isqrt_ll(long long x) {
    if (x < 0) return -1;
    auto r = static_cast<long long>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

// index range [m_lo, m_hi] with A <= value(m) <= B (empty when m_lo > m_hi)
std::pair<long long, long long> t1d_index_range(const Tail1D& t, long long A, long long B) {
    if (B < 1) return {1, 0};
    A = std::max(A, 1LL);
    long long root_lo, root_hi;
    if (t.power == 1) {
        root_lo = A;
        root_hi = B;
    } else {
        root_lo = isqrt_ll(A - 1) + 1;
        root_hi = isqrt_ll(B);
    }
    if (root_hi < t.offset) return {1, 0};
    long long m_lo = (root_lo - t.offset + t.scale - 1) / t.scale;
    long long m_hi = (root_hi - t.offset) / t.scale;
    m_lo = std::max(m_lo, t.m_start);
    return {m_lo, m_hi};
}

long long t1d_count_range(const Tail1D& t, long long A, long long B) {
    auto [lo, hi] = t1d_index_range(t, A, B);
    return hi >= lo ? hi - lo + 1 : 0;
}

bool t1d_contains(const Tail1D& t, long long a) {
    if (a < 1) return false;
    auto [lo, hi] = t1d_index_range(t, a, a);
    return hi >= lo;
}

class FullSet final : public DigitSetImpl {
  public:
    explicit FullSet(int d) : d_(d) {}
    int dim() const override { return d_; }
    std::string name() const override { return "full" + std::to_string(d_); }
    bool contains(const DigitVector& v) const override {
        check_dim(*this, v);
        for (long long x : v)
            if (x < 1) return false;
        return true;
    }
    std::optional<Integer> count_box_closed(const Box& b) const override {
        return pow_integer(int_of(b.side), static_cast<unsigned long>(d_));
    }
    std::optional<DeclaredDensity> declared_density() const override {
        return DeclaredDensity{1.0, 0.0};
    }
    TailStructure tail_structure() const override { return TailMinProduct{d_, 1}; }

  private:
    int d_;
};

class Diag1DSet final : public DigitSetImpl {
  public:
    Diag1DSet(int d, Tail1D base, std::string name)
        : d_(d), base_(base), name_(std::move(name)) {}
    int dim() const override { return d_; }
    std::string name() const override { return name_; }
    bool contains(const DigitVector& v) const override {
        check_dim(*this, v);
        for (long long x : v)
            if (x != v[0]) return false;
        return t1d_contains(base_, v[0]);
    }
    void enumerate_shells(long long lo, long long hi, long long budget,
                          const std::function<bool(const DigitVector&)>& fn) const override {
        auto [mlo, mhi] = t1d_index_range(base_, std::max(lo, 1LL), hi);
        for (long long m = mlo; m <= mhi; ++m) {
            if (--budget < 0) throw budget_error("enumeration budget exceeded");
            if (!fn(DigitVector(d_, t1d_value(base_, m)))) return;
        }
    }
    std::optional<Integer> count_box_closed(const Box& b) const override {
        long long A = 1, B = b.origin[0] + b.side;
        for (int j = 0; j < d_; ++j) {
            A = std::max(A, b.origin[j] + 1);
            B = std::min(B, b.origin[j] + b.side);
        }
        return Integer(int_of(B >= A ? t1d_count_range(base_, A, B) : 0));
    }
    std::optional<DeclaredDensity> declared_density() const override {
        return DeclaredDensity{static_cast<double>(d_ * base_.power), 0.0};
    }
    TailStructure tail_structure() const override {
        if (d_ == 1) return base_;
        return TailDiagonal{d_, base_};
    }

  private:
    int d_;
    Tail1D base_;
    std::string name_;
};

class BandSet final : public DigitSetImpl {
  public:
    BandSet(long long K, int d) : K_(K), d_(d) {}
    int dim() const override { return d_; }
    std::string name() const override {
        return "ck:K=" + std::to_string(K_) + ",d=" + std::to_string(d_);
    }
    bool contains(const DigitVector& v) const override {
        check_dim(*this, v);
        long long mn = v[0], mx = v[0];
        for (long long x : v) {
            if (x < 1) return false;
            mn = std::min(mn, x);
            mx = std::max(mx, x);
        }
        return mx <= K_ * mn;
    }
    std::optional<Integer> count_box_closed(const Box& b) const override {
        for (long long o : b.origin)
            if (o != 0) return std::nullopt;
        return ck_count(K_, d_, b.side);
    }
    std::optional<DeclaredDensity> declared_density() const override {
        return DeclaredDensity{1.0, 0.0};
    }
    TailStructure tail_structure() const override { return TailBand{K_, d_}; }

  private:
    long long K_;
    int d_;
};

class OneDimSet final : public DigitSetImpl {
  public:
    OneDimSet(Tail1D t, std::string name) : t_(t), name_(std::move(name)) {}
    int dim() const override { return 1; }
    std::string name() const override { return name_; }
    bool contains(const DigitVector& v) const override {
        check_dim(*this, v);
        return t1d_contains(t_, v[0]);
    }
    void enumerate_shells(long long lo, long long hi, long long budget,
                          const std::function<bool(const DigitVector&)>& fn) const override {
        auto [mlo, mhi] = t1d_index_range(t_, std::max(lo, 1LL), hi);
        for (long long m = mlo; m <= mhi; ++m) {
            if (--budget < 0) throw budget_error("enumeration budget exceeded");
            if (!fn(DigitVector{t1d_value(t_, m)})) return;
        }
    }
    std::optional<Integer> count_box_closed(const Box& b) const override {
        return Integer(int_of(t1d_count_range(t_, b.origin[0] + 1, b.origin[0] + b.side)));
    }
    std::optional<DeclaredDensity> declared_density() const override {
        return DeclaredDensity{static_cast<double>(t_.power), 0.0};
    }
    TailStructure tail_structure() const override { return t_; }

  private:
    Tail1D t_;
    std::string name_;
};

class ExplicitSet final : public DigitSetImpl {
  public:
    ExplicitSet(int d, std::vector<DigitVector> members, std::string name)
        : d_(d), members_(std::move(members)), name_(std::move(name)) {
        for (const auto& v : members_) {
            if (static_cast<int>(v.size()) != d_) throw invalid_input("dimension mismatch");
            for (long long x : v)
                if (x < 1) throw invalid_input("digit vectors must have coordinates >= 1");
        }
        std::sort(members_.begin(), members_.end(), cyl::canonical_less);
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }
    int dim() const override { return d_; }
    std::string name() const override { return name_; }
    bool contains(const DigitVector& v) const override {
        check_dim(*this, v);
        auto it = std::lower_bound(members_.begin(), members_.end(), v, cyl::canonical_less);
        return it != members_.end() && *it == v;
    }
    void enumerate_shells(long long lo, long long hi, long long budget,
                          const std::function<bool(const DigitVector&)>& fn) const override {
        for (const auto& v : members_) {
            const long long n = cyl::linf_norm(v);
            if (n < lo) continue;
            if (n > hi) break;
            if (--budget < 0) throw budget_error("enumeration budget exceeded");
            if (!fn(v)) return;
        }
    }
    std::optional<Integer> count_box_closed(const Box& b) const override {
        long long c = 0;
        for (const auto& v : members_)
            if (b.contains(v)) ++c;
        return Integer(int_of(c));
    }
    TailStructure tail_structure() const override { return TailFinite{}; }

  private:
    int d_;
    std::vector<DigitVector> members_;
    std::string name_;
};

class UnionBoxesSet final : public DigitSetImpl {
  public:
    UnionBoxesSet(int d, std::vector<Box> boxes, DigitSet base, std::string name)
        : d_(d), boxes_(std::move(boxes)), base_(std::move(base)), name_(std::move(name)) {
        for (const auto& b : boxes_)
            if (b.dim() != d_) throw invalid_input("box dimension mismatch");
        if (base_ && base_->dim() != d_) throw invalid_input("base dimension mismatch");
    }
    int dim() const override { return d_; }
    std::string name() const override { return name_; }
    bool contains(const DigitVector& v) const override {
        check_dim(*this, v);
        bool in_box = false;
        for (const auto& b : boxes_)
            if (b.contains(v)) {
                in_box = true;
                break;
            }
        if (!in_box) return false;
        if (base_ && !base_->contains(v)) return false;
        for (long long x : v)
            if (x < 1) return false;
        return true;
    }
    void enumerate_shells(long long lo, long long hi, long long budget,
                          const std::function<bool(const DigitVector&)>& fn) const override {
        std::vector<DigitVector> found;
        for (const auto& b : boxes_)
            walk_box(b, budget, [&](const DigitVector& v) {
                const long long n = cyl::linf_norm(v);
                if (n >= lo && n <= hi && contains(v)) found.push_back(v);
                return true;
            });
        std::sort(found.begin(), found.end(), cyl::canonical_less);
        found.erase(std::unique(found.begin(), found.end()), found.end());
        for (const auto& v : found)
            if (!fn(v)) return;
    }
    // counting through the member boxes is always affordable: their total
    // volume is the construction's own budget
    std::optional<Integer> count_box_closed(const Box& q) const override {
        std::set<DigitVector> seen;
        long long budget = 1'000'000'000;
        for (const auto& b : boxes_)
            walk_box(b, budget, [&](const DigitVector& v) {
                if (q.contains(v) && contains(v)) seen.insert(v);
                return true;
            });
        return Integer(int_of(static_cast<long long>(seen.size())));
    }
    TailStructure tail_structure() const override { return TailFinite{}; }

  private:
    void walk_box(const Box& b, long long& budget,
                  const std::function<bool(const DigitVector&)>& fn) const {
        DigitVector v(d_);
        std::function<bool(int)> rec = [&](int pos) -> bool {
            if (pos == d_) {
                if (--budget < 0) throw budget_error("union_boxes budget exceeded");
                return fn(v);
            }
            for (long long x = b.origin[pos] + 1; x <= b.origin[pos] + b.side; ++x) {
                v[pos] = x;
                if (!rec(pos + 1)) return false;
            }
            return true;
        };
        rec(0);
    }

    int d_;
    std::vector<Box> boxes_;
    DigitSet base_;
    std::string name_;
};

class ProductSet final : public DigitSetImpl {
  public:
    explicit ProductSet(std::vector<DigitSet> factors) : factors_(std::move(factors)) {
        if (factors_.empty()) throw invalid_input("empty product");
        for (const auto& f : factors_)
            if (f->dim() != 1) throw invalid_input("product factors must be one-dimensional");
    }
    int dim() const override { return static_cast<int>(factors_.size()); }
    std::string name() const override {
        std::string n = "product(";
        for (size_t i = 0; i < factors_.size(); ++i) n += (i ? "," : "") + factors_[i]->name();
        return n + ")";
    }
    bool contains(const DigitVector& v) const override {
        check_dim(*this, v);
        for (size_t j = 0; j < factors_.size(); ++j)
            if (!factors_[j]->contains({v[j]})) return false;
        return true;
    }
    void enumerate_shells(long long lo, long long hi, long long budget,
                          const std::function<bool(const DigitVector&)>& fn) const override {
        const int d = dim();
        std::vector<std::vector<long long>> lists(d);
        for (int j = 0; j < d; ++j)
            factors_[j]->enumerate_shells(1, hi, budget, [&](const DigitVector& a) {
                lists[j].push_back(a[0]);
                return true;
            });
        std::vector<DigitVector> found;
        DigitVector v(d);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == d) {
                const long long n = cyl::linf_norm(v);
                if (n >= lo && n <= hi) found.push_back(v);
                return;
            }
            for (long long x : lists[pos]) {
                v[pos] = x;
                if (--budget < 0) throw budget_error("enumeration budget exceeded");
                rec(pos + 1);
            }
        };
        rec(0);
        std::sort(found.begin(), found.end(), cyl::canonical_less);
        for (const auto& w : found)
            if (!fn(w)) return;
    }
    std::optional<Integer> count_box_closed(const Box& b) const override {
        Integer total = 1;
        for (int j = 0; j < dim(); ++j) {
            auto c = factors_[j]->count_box_closed(Box{{b.origin[j]}, b.side});
            if (!c) return std::nullopt;
            total *= *c;
        }
        return total;
    }
    TailStructure tail_structure() const override {
        TailProduct p;
        bool min_product = true;
        long long start = -1;
        for (const auto& f : factors_) {
            auto t = f->tail_structure();
            auto* t1 = std::get_if<Tail1D>(&t);
            if (!t1) return TailNone{};
            p.factors.push_back(*t1);
            const bool is_tail = (t1->scale == 1 && t1->offset == 0 && t1->power == 1);
            if (!is_tail || (start >= 0 && t1->m_start != start)) min_product = false;
            start = t1->m_start;
        }
        if (min_product) return TailMinProduct{dim(), start};
        return p;
    }

  private:
    std::vector<DigitSet> factors_;
};

}  // namespace

bool Box::contains(const DigitVector& v) const {
    if (v.size() != origin.size()) throw invalid_input("dimension mismatch");
    for (size_t j = 0; j < v.size(); ++j)
        if (v[j] < origin[j] + 1 || v[j] > origin[j] + side) return false;
    return true;
}

Box folner_box(int d, long long side) { return Box{DigitVector(d, 0), side}; }

void DigitSetImpl::enumerate_shells(long long lo, long long hi, long long budget,
                                    const std::function<bool(const DigitVector&)>& fn) const {
    lo = std::max(lo, 1LL);
    for (long long m = lo; m <= hi; ++m) {
        bool keep_going = walk_shell(dim(), m, budget, [&](const DigitVector& v) {
            if (!contains(v)) return true;
            return fn(v);
        });
        if (!keep_going) return;
    }
}

std::optional<Integer> DigitSetImpl::count_box_closed(const Box&) const { return std::nullopt; }

DigitSet full_set(int d) {
    if (d < 1) throw invalid_input("dimension must be >= 1");
    return std::make_shared<FullSet>(d);
}

DigitSet diagonal_set(int d) {
    if (d < 1) throw invalid_input("dimension must be >= 1");
    return std::make_shared<Diag1DSet>(d, Tail1D{1, 1, 0, 1}, "diag" + std::to_string(d));
}

DigitSet squares_diagonal_set(int d) {
    if (d < 1) throw invalid_input("dimension must be >= 1");
    return std::make_shared<Diag1DSet>(d, Tail1D{1, 1, 0, 2}, "sqdiag" + std::to_string(d));
}

DigitSet band_set(long long K, int d) {
    if (K < 1 || d < 1) throw invalid_input("band needs K >= 1, d >= 1");
    return std::make_shared<BandSet>(K, d);
}

DigitSet tail_set(long long N) {
    if (N < 1) throw invalid_input("tail start must be >= 1");
    return std::make_shared<OneDimSet>(Tail1D{N, 1, 0, 1}, "tail1:N=" + std::to_string(N));
}

DigitSet squares_set() { return std::make_shared<OneDimSet>(Tail1D{1, 1, 0, 2}, "squares1"); }

DigitSet arithmetic_set(long long q, long long r) {
    if (q < 1 || r < 0) throw invalid_input("bad arithmetic family");
    std::string name = (q == 2 && r == 0)
                           ? "evens1"
                           : "arith1:q=" + std::to_string(q) + ",r=" + std::to_string(r);
    return std::make_shared<OneDimSet>(Tail1D{1, q, r, 1}, std::move(name));
}

DigitSet explicit_set(int d, std::vector<DigitVector> members, std::string name) {
    return std::make_shared<ExplicitSet>(d, std::move(members), std::move(name));
}

DigitSet union_boxes_set(int d, std::vector<Box> boxes, DigitSet base, std::string name) {
    return std::make_shared<UnionBoxesSet>(d, std::move(boxes), std::move(base), std::move(name));
}

DigitSet product_set(std::vector<DigitSet> one_dim_factors) {
    return std::make_shared<ProductSet>(std::move(one_dim_factors));
}

Integer count_box(const DigitSet& s, const Box& b, long long budget) {
    if (b.dim() != s->dim()) throw invalid_input("dimension mismatch");
    if (auto c = s->count_box_closed(b)) return *c;
    Integer vol = pow_integer(int_of(b.side), static_cast<unsigned long>(b.dim()));
    if (vol > int_of(budget)) throw budget_error("count_box budget exceeded");
    const int d = b.dim();
    auto slice_count = [&](long long i) -> long long {
        DigitVector v(d);
        v[0] = b.origin[0] + 1 + i;
        if (d == 1) return s->contains(v) ? 1 : 0;
        long long c = 0;
        std::function<void(int)> rec = [&](int pos) {
            if (pos == d) {
                if (s->contains(v)) ++c;
                return;
            }
            for (long long x = b.origin[pos] + 1; x <= b.origin[pos] + b.side; ++x) {
                v[pos] = x;
                rec(pos + 1);
            }
        };
        rec(1);
        return c;
    };
    const long long total = par::chunked_reduce<long long>(
        b.side, 0, slice_count, par::Exec::parallel, std::max<long long>(1, b.side / 64));
    return Integer(int_of(total));
}

std::string DensityReport::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "N,count,denom,ratio,running_max\n";
    for (const auto& r : rows)
        os << r.horizon << "," << r.count.get_str() << "," << r.denom.get_str() << ","
           << to_double(r.ratio) << "," << to_double(r.running_max) << "\n";
    return os.str();
}

DensityReport upper_density(const DigitSet& s, const std::vector<long long>& horizons,
                            long long budget) {
    DensityReport rep;
    rep.strategy = "folner";
    Rational running(0);
    long long prev = 0;
    for (long long N : horizons) {
        if (N <= prev) throw invalid_input("horizons must be strictly increasing");
        prev = N;
        Integer c = count_box(s, folner_box(s->dim(), N), budget);
        Integer denom = pow_integer(int_of(N), static_cast<unsigned long>(s->dim()));
        Rational ratio = make_rational(c, denom);
        running = std::max(running, ratio);
        rep.rows.push_back(DensityRow{N, c, denom, ratio, running});
    }
    return rep;
}

std::string TranslateStrategy::describe() const {
    switch (kind) {
        case Kind::explicit_list:
            return "explicit-list(" + std::to_string(translates.size()) + ")";
        case Kind::exhaustive:
            return "exhaustive(bound=" + std::to_string(exhaustive_bound) + ")";
        case Kind::witnesses:
            return "witnesses(" + std::to_string(translates.size()) + ")";
    }
    return "?";
}

namespace {

// best translate of Q_N among the strategy's candidates; scan-order ties
std::pair<DigitVector, Integer> best_translate(const DigitSet& s, long long N,
                                               const TranslateStrategy& strat, long long budget,
                                               const DigitVector& shift_floor = {}) {
    const int d = s->dim();
    DigitVector best_v(d, 0);
    Integer best_c = -1;
    auto consider = [&](DigitVector v) {
        for (int j = 0; j < d && j < static_cast<int>(shift_floor.size()); ++j)
            v[j] = std::max(v[j], shift_floor[j]);
        Integer c = count_box(s, Box{v, N}, budget);
        if (c > best_c) {
            best_c = c;
            best_v = v;
        }
    };
    if (strat.kind == TranslateStrategy::Kind::exhaustive) {
        DigitVector v(d, 0);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == d) {
                consider(v);
                return;
            }
            for (long long x = 0; x <= strat.exhaustive_bound; ++x) {
                v[pos] = x;
                rec(pos + 1);
            }
        };
        rec(0);
    } else {
        for (const auto& v : strat.translates) {
            if (static_cast<int>(v.size()) != d)
                throw invalid_input("translate dimension mismatch");
            consider(v);
        }
        if (strat.translates.empty()) consider(DigitVector(d, 0));
    }
    return {best_v, best_c};
}

}  // namespace

DensityReport banach_density(const DigitSet& s, long long N, const TranslateStrategy& strat,
                             long long budget) {
    if (N < 1) throw invalid_input("window size must be >= 1");
    DensityReport rep;
    rep.strategy = strat.describe();
    auto [v, c] = best_translate(s, N, strat, budget);
    Integer denom = pow_integer(int_of(N), static_cast<unsigned long>(s->dim()));
    Rational ratio = make_rational(c, denom);
    rep.rows.push_back(DensityRow{N, c, denom, ratio, ratio});
    rep.witnesses.push_back(v);
    return rep;
}

DensityReport relative_density(const DigitSet& a, const DigitSet& s,
                               const std::vector<long long>& horizons, long long budget) {
    if (a->dim() != s->dim()) throw invalid_input("dimension mismatch");
    // spot-check A inside S on the first shells; full containment is the
    // caller's contract
    try {
        a->enumerate_shells(1, 16, 2000, [&](const DigitVector& v) {
            if (!s->contains(v)) throw invalid_input("relative_density: A not contained in S");
            return true;
        });
    } catch (const budget_error&) {
    }
    DensityReport rep;
    rep.strategy = "relative";
    Rational running(0);
    long long prev = 0;
    for (long long N : horizons) {
        if (N <= prev) throw invalid_input("horizons must be strictly increasing");
        prev = N;
        Integer ca = count_box(a, folner_box(a->dim(), N), budget);
        Integer cs = count_box(s, folner_box(s->dim(), N), budget);
        if (cs == 0) throw invalid_input("relative density undefined: |S cap Q_N| = 0");
        Rational ratio = make_rational(ca, cs);
        running = std::max(running, ratio);
        rep.rows.push_back(DensityRow{N, ca, cs, ratio, running});
    }
    return rep;
}

Integer ck_count(long long K, int d, long long N) {
    if (K < 1 || d < 1 || N < 1) throw invalid_input("ck_count needs K, d, N >= 1");
    Integer total = 0;
    for (long long m = 1; m <= N; ++m) {
        const long long U = std::min(K * m, N);
        const long long L = U - m + 1;
        total += pow_integer(int_of(L), static_cast<unsigned long>(d)) -
                 pow_integer(int_of(L - 1), static_cast<unsigned long>(d));
    }
    return total;
}

long long balanced_extract(const Rational& delta, int d) {
    if (delta <= 0 || delta > 1) throw invalid_input("delta must lie in (0,1]");
    if (d < 1) throw invalid_input("dimension must be >= 1");
    const Rational target = delta / 4;
    for (long long K = 1; K <= 1'000'000; ++K) {
        const Rational inner = 1 - make_rational(Integer(1), int_of(K));
        if (1 - pow_rational(inner, d - 1) < target) return K;
    }
    throw budget_error("balanced_extract: no K below 10^6");
}

DensityReductionResult density_reduction(const DigitSet& s, int stages,
                                         const TranslateStrategy& strat, long long budget) {
    if (stages < 1) throw invalid_input("need at least one stage");
    DensityReductionResult res;
    const int d = s->dim();
    std::vector<Box> boxes;
    long long k = 1;
    for (int j = 1; j <= stages; ++j) {
        bool placed = false;
        while (!placed && ++k <= 64) {
            const long long Nk = k;
            long long far = Nk;
            for (int i = 0; i < j; ++i) far *= 10;
            const long long margin = std::max(Nk * Nk, far);  // interior and far-out floors
            // Step 1: witness cube at scale q*N_k pushed past the margin,
            // then subcube averaging over the q^d partition cells.
            const long long q = std::max<long long>(4, k);
            const long long Rk = q * Nk;
            auto [u, cnt] = best_translate(s, Rk, strat, budget, DigitVector(d, margin));
            if (cnt <= 0) break;  // no witness mass at all: stage fails
            const Rational alpha = make_rational(cnt, pow_integer(int_of(Rk), d));
            // Step 2: densest partition cell disjoint from the earlier boxes
            DigitVector best_v;
            Integer best_c = -1;
            DigitVector m(d, 0);
            std::function<void(int)> rec = [&](int pos) {
                if (pos == d) {
                    DigitVector v(d);
                    for (int i2 = 0; i2 < d; ++i2) v[i2] = u[i2] + Nk * m[i2];
                    Box cand{v, Nk};
                    for (const auto& b : boxes) {
                        bool overlap = true;
                        for (int i2 = 0; i2 < d; ++i2)
                            if (cand.origin[i2] + cand.side <= b.origin[i2] ||
                                b.origin[i2] + b.side <= cand.origin[i2])
                                overlap = false;
                        if (overlap) return;
                    }
                    Integer c = count_box(s, cand, budget);
                    if (c > best_c) {
                        best_c = c;
                        best_v = v;
                    }
                    return;
                }
                for (long long x = 0; x < q; ++x) {
                    m[pos] = x;
                    rec(pos + 1);
                }
            };
            rec(0);
            if (best_c <= 0) continue;
            boxes.push_back(Box{best_v, Nk});
            res.stages.push_back(ReductionStage{
                k, Nk, best_v, make_rational(best_c, pow_integer(int_of(Nk), d)), alpha});
            placed = true;
        }
        if (!placed) {
            res.note = "witness search failed at stage " + std::to_string(j);
            res.boxes = boxes;
            res.reduced = boxes.empty() ? explicit_set(d, {}, "empty")
                                        : union_boxes_set(d, boxes, s, "density-reduction");
            return res;
        }
    }
    res.boxes = boxes;
    res.reduced = union_boxes_set(d, boxes, s, "density-reduction");
    res.complete = true;
    return res;
}

std::optional<Configuration> find_configuration(const DigitSet& D,
                                                const std::vector<std::vector<long long>>& F,
                                                const PolynomialMap& P, long long n_max,
                                                const Box& u_box) {
    if (P.d != D->dim()) throw invalid_input("polynomial range dimension mismatch");
    {
        const std::vector<long long> zero(P.r, 0);
        for (long long c : P.eval(zero))
            if (c != 0) throw invalid_input("polynomial map must fix the origin");
    }
    const int d = D->dim();
    for (long long n = 1; n <= n_max; ++n) {
        std::vector<std::vector<long long>> shifts;
        shifts.reserve(F.size());
        for (const auto& f : F) {
            std::vector<long long> nf(f.size());
            for (size_t i = 0; i < f.size(); ++i) nf[i] = n * f[i];
            shifts.push_back(P.eval(nf));
        }
        DigitVector u(d);
        std::optional<Configuration> hit;
        std::function<bool(int)> rec = [&](int pos) -> bool {
            if (pos == d) {
                for (const auto& sh : shifts) {
                    DigitVector y(d);
                    for (int j = 0; j < d; ++j) {
                        y[j] = u[j] + sh[j];
                        if (y[j] < 1) return true;  // outside N^d: keep searching
                    }
                    if (!D->contains(y)) return true;
                }
                hit = Configuration{n, u};
                return false;
            }
            for (long long x = u_box.origin[pos] + 1; x <= u_box.origin[pos] + u_box.side; ++x) {
                u[pos] = x;
                if (!rec(pos + 1)) return false;
            }
            return true;
        };
        rec(0);
        if (hit) return hit;
    }
    return std::nullopt;
}

bool validate_declared_density(const DigitSet& s, long long horizon, long long budget) {
    auto decl = s->declared_density();
    if (!decl) return true;
    const long long half = horizon / 2;
    if (half < 2) throw invalid_input("horizon too small for the ratio test");
    Integer c1 = count_box(s, folner_box(s->dim(), half), budget);
    Integer c2 = count_box(s, folner_box(s->dim(), horizon), budget);
    if (c1 == 0) return false;
    const double ratio = c2.get_d() / c1.get_d();
    const double logf = std::pow(
        std::log(static_cast<double>(horizon)) / std::log(static_cast<double>(half)),
        -decl->beta);
    const double expected = std::pow(static_cast<double>(horizon) / static_cast<double>(half),
                                     static_cast<double>(s->dim()) / decl->alpha) *
                            logf;
    return ratio >= expected / 4.0 && ratio <= expected * 4.0;
}

}  // namespace cff::sets

// OpenMP execution helpers with a serial reference path.
//
// Reductions are chunked: each chunk of indices is folded serially in index
// order and chunk results are folded in chunk order, so the result is
// bit-identical for any thread count, including the serial path.  Tests
// compare the two paths exactly; tools/bench.cpp compares their speed.

#pragma once

#include <functional>
#include <vector>

namespace cff::par {

enum class Exec { serial, parallel };

void set_threads(int n);  // 0 = OpenMP default
int threads();

// Fold term(i) for i in [0, n) into chunk partial sums, then combine the
// partials in chunk order.  T needs operator+=.
template <class T, class Term>
T chunked_reduce(long long n, T init, const Term& term, Exec exec = Exec::parallel,
                 long long chunk = 1024);

// Independent per-index work; no ordering guarantees inside a pass.
void parallel_for(long long n, const std::function<void(long long)>& body,
                  Exec exec = Exec::parallel);

namespace detail {
void run_chunks(long long n_chunks, const std::function<void(long long)>& chunk_body,
                Exec exec);
}

template <class T, class Term>
T chunked_reduce(long long n, T init, const Term& term, Exec exec, long long chunk) {
    if (n <= 0) return init;
    const long long n_chunks = (n + chunk - 1) / chunk;
    std::vector<T> partial(static_cast<size_t>(n_chunks), init);
    detail::run_chunks(
        n_chunks,
        [&](long long c) {
            T acc = init;
            const long long lo = c * chunk;
            const long long hi = std::min(n, lo + chunk);
            for (long long i = lo; i < hi; ++i) acc += term(i);
            partial[static_cast<size_t>(c)] = acc;
        },
        exec);
    T total = init;
    for (auto& p : partial) total += p;
    return total;
}

}  // namespace cff::par

#include "cffractal/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cff::par {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

int threads() {
    int n = g_threads.load();
#ifdef _OPENMP
    if (n == 0) n = omp_get_max_threads();
#else
    n = 1;
#endif
    return n;
}

namespace detail {

void run_chunks(long long n_chunks, const std::function<void(long long)>& chunk_body,
                Exec exec) {
#ifdef _OPENMP
    if (exec == Exec::parallel && threads() > 1 && n_chunks > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads())
        for (long long c = 0; c < n_chunks; ++c) chunk_body(c);
        return;
    }
#else
    (void)exec;
#endif
    for (long long c = 0; c < n_chunks; ++c) chunk_body(c);
}

}  // namespace detail

void parallel_for(long long n, const std::function<void(long long)>& body, Exec exec) {
    detail::run_chunks(n, body, exec);
}

}  // namespace cff::par

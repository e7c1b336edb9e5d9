#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ssp::par {

// Thread count resolution: explicit set_threads(n) wins, then the SSP_THREADS
// environment variable, then the OpenMP default. 0 means "auto".
void set_threads(int n);
int max_threads();

// Minimum element count before a loop is worth forking.
inline constexpr std::size_t kGrain = 4096;

// Elementwise map over [0, n). Each index writes only its own slot, so the
// result is identical for any thread count.
template <class F>
void parallel_for(std::size_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= kGrain)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        body(static_cast<std::size_t>(i));
    }
}

// Reduction with a fixed block decomposition: per-block partial sums are
// accumulated independently and then combined in block order, so the result
// does not depend on the thread count.
template <class F>
double blocked_sum(std::size_t n, F&& term) {
    constexpr std::size_t kBlock = 4096;
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    if (nblocks == 1) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += term(i);
        return s;
    }
    std::vector<double> partial(nblocks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace ssp::par

#include "ssp/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ssp::par {

namespace {
int g_threads = 0;

int env_threads() {
    const char* v = std::getenv("SSP_THREADS");
    if (v == nullptr) return 0;
    const int n = std::atoi(v);
    return n > 0 ? n : 0;
}
}  // namespace

void set_threads(int n) {
    g_threads = n > 0 ? n : 0;
#ifdef _OPENMP
    int resolved = g_threads;
    if (resolved == 0) resolved = env_threads();
    if (resolved > 0) omp_set_num_threads(resolved);
#endif
}

int max_threads() {
    if (g_threads > 0) return g_threads;
    const int e = env_threads();
    if (e > 0) return e;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace ssp::par

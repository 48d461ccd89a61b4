#include "periwave/parallel.hpp"

#include <Eigen/Core>
#include <omp.h>

namespace periwave {

namespace {
int g_threads = 0; // 0 = library default (all hardware threads)
}

void set_threads(int n) {
    g_threads = n > 0 ? n : 0;
    if (g_threads > 0) {
        omp_set_num_threads(g_threads);
        Eigen::setNbThreads(g_threads);
    }
}

int threads() {
    return g_threads > 0 ? g_threads : omp_get_max_threads();
}

void parallel_for(long n, const std::function<void(long)>& f) {
    if (n <= 1) {
        for (long i = 0; i < n; ++i) f(i);
        return;
    }
#pragma omp parallel for schedule(static) num_threads(threads())
    for (long i = 0; i < n; ++i) f(i);
}

} // namespace periwave

#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oscillab {

/// Number of worker threads used when jobs <= 0.
inline int hardware_jobs() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Runs body(i) for i in [0, n). Bodies must write disjoint state, so the
/// result is independent of the schedule and of the thread count. grain is
/// the dynamic chunk size: 1 suits wildly uneven bodies, larger grains
/// avoid false sharing when neighbouring bodies write adjacent slots.
template <class Body>
void parallel_for(std::int64_t n, Body&& body, int jobs = -1, int grain = 1) {
    if (n <= 0) return;
    int nthreads = jobs > 0 ? jobs : hardware_jobs();
    if (nthreads <= 1 || n == 1) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, grain) num_threads(nthreads)
    for (std::int64_t i = 0; i < n; ++i) body(i);
#else
    (void)grain;
    for (std::int64_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace oscillab

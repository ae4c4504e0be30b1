#ifndef ISRT_PARALLEL_HPP
#define ISRT_PARALLEL_HPP

// Thin fork-join layer over OpenMP tasks. Every helper degrades to a plain
// loop when called outside a parallel region.

#include <omp.h>

#include <cstddef>
#include <utility>

namespace isrt::parallel {

inline int max_workers() { return omp_get_max_threads(); }

/// Workers available to the current call tree.
inline int num_workers() {
    return omp_in_parallel() ? omp_get_num_threads() : 1;
}

/// Runs `f` inside a team of `threads` workers (0 = OpenMP default) unless a
/// team is already active, in which case `f` joins the current one.
template <class F>
void run(int threads, F&& f) {
    const int t = threads > 0 ? threads : omp_get_max_threads();
    if (omp_in_parallel() || t <= 1) {
        f();
        return;
    }
#pragma omp parallel num_threads(t)
#pragma omp single
    f();
}

/// Calls f(i) for i in [begin, end), chunked by `grain`. Returns after all
/// iterations finished.
template <class F>
void parallel_for(std::size_t begin, std::size_t end, std::size_t grain, F&& f) {
    if (begin >= end) return;
    if (grain == 0) grain = 1;
    if (end - begin <= grain || !omp_in_parallel()) {
        for (std::size_t i = begin; i < end; ++i) f(i);
        return;
    }
#pragma omp taskloop grainsize(grain) default(shared)
    for (std::size_t i = begin; i < end; ++i) f(i);
}

/// Calls f(lo, hi) over consecutive sub-ranges of [begin, end) of at most
/// `block` elements each.
template <class F>
void parallel_blocks(std::size_t begin, std::size_t end, std::size_t block, F&& f) {
    if (begin >= end) return;
    if (block == 0) block = 1;
    const std::size_t count = (end - begin + block - 1) / block;
    parallel_for(0, count, 1, [&](std::size_t b) {
        const std::size_t lo = begin + b * block;
        const std::size_t hi = lo + block < end ? lo + block : end;
        f(lo, hi);
    });
}

/// Spawns `f` as a task when `fork` is true, otherwise runs it inline.
template <class F>
void spawn_if(bool fork, F f) {
    if (fork && omp_in_parallel()) {
#pragma omp task firstprivate(f)
        f();
    } else {
        f();
    }
}

inline void sync() {
#pragma omp taskwait
}

inline constexpr std::size_t copy_block = 1 << 14;

/// Parallel element-wise copy of [src, src + n) to [dst, dst + n); the ranges
/// must not overlap.
template <class T>
void copy(const T* src, std::size_t n, T* dst) {
    parallel_blocks(0, n, copy_block, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) dst[i] = src[i];
    });
}

}  // namespace isrt::parallel

#endif  // ISRT_PARALLEL_HPP

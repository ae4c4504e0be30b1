#ifndef ISRT_BENCH_REFERENCE_SORT_HPP
#define ISRT_BENCH_REFERENCE_SORT_HPP

// The verification oracle. Deliberately shares no code with the library:
// a textbook bottom-up mergesort on a copy of the input.

#include <cstddef>
#include <vector>

namespace isrt::bench {

template <class R>
std::vector<R> reference_stable_sort(const std::vector<R>& in) {
    std::vector<R> a(in), b(in.size());
    const std::size_t n = a.size();
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = lo + width < n ? lo + width : n;
            const std::size_t hi = lo + 2 * width < n ? lo + 2 * width : n;
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) b[k++] = (a[j].key < a[i].key) ? a[j++] : a[i++];
            while (i < mid) b[k++] = a[i++];
            while (j < hi) b[k++] = a[j++];
        }
        a.swap(b);
    }
    return a;
}

}  // namespace isrt::bench

#endif  // ISRT_BENCH_REFERENCE_SORT_HPP

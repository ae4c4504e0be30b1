#ifndef ISRT_STABLE_MERGE_SORT_HPP
#define ISRT_STABLE_MERGE_SORT_HPP

#include <cstddef>
#include <span>

namespace isrt {

namespace detail {

inline constexpr std::size_t insertion_cutoff = 16;

template <class T, class KeyFn>
void insertion_sort(T* a, std::size_t n, KeyFn& key) {
    for (std::size_t i = 1; i < n; ++i) {
        T x = a[i];
        const auto k = key(x);
        std::size_t j = i;
        while (j > 0 && k < key(a[j - 1])) {
            a[j] = a[j - 1];
            --j;
        }
        a[j] = x;
    }
}

template <class T, class KeyFn>
void merge_runs(const T* in, std::size_t mid, std::size_t n, T* out, KeyFn& key) {
    std::size_t i = 0, j = mid, o = 0;
    while (i < mid && j < n) {
        if (key(in[j]) < key(in[i])) out[o++] = in[j++];
        else out[o++] = in[i++];
    }
    while (i < mid) out[o++] = in[i++];
    while (j < n) out[o++] = in[j++];
}

// Sorts data[0, n); the result lands in `data` or, when into_scratch is set,
// in `scratch`. The other array is clobbered.
template <class T, class KeyFn>
void merge_sort_to(T* data, T* scratch, std::size_t n, bool into_scratch, KeyFn& key) {
    if (n <= insertion_cutoff) {
        insertion_sort(data, n, key);
        if (into_scratch)
            for (std::size_t i = 0; i < n; ++i) scratch[i] = data[i];
        return;
    }
    const std::size_t mid = n / 2;
    merge_sort_to(data, scratch, mid, !into_scratch, key);
    merge_sort_to(data + mid, scratch + mid, n - mid, !into_scratch, key);
    if (into_scratch) merge_runs(data, mid, n, scratch, key);
    else merge_runs(scratch, mid, n, data, key);
}

}  // namespace detail

/// Sequential stable mergesort by `key(x)`, used for base cases and samples.
/// `scratch` must be at least as long as `data`. With `result_in_scratch`
/// the sorted sequence is left in scratch and `data` becomes garbage.
template <class T, class KeyFn>
void stable_merge_sort(std::span<T> data, std::span<T> scratch, bool result_in_scratch, KeyFn key) {
    detail::merge_sort_to(data.data(), scratch.data(), data.size(), result_in_scratch, key);
}

}  // namespace isrt

#endif  // ISRT_STABLE_MERGE_SORT_HPP

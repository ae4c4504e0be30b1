#ifndef ISRT_DTMERGE_HPP
#define ISRT_DTMERGE_HPP

// Dovetail merging of one MSD zone: a sorted light bucket followed by heavy
// buckets of strictly increasing keys. Only the smaller side leaves the
// array; the larger side is shifted in place, each record written at most
// twice.

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "isrt/parallel.hpp"
#include "isrt/record.hpp"

namespace isrt {

template <class Key>
struct HeavyRun {
    Key key;
    std::size_t length;
};

struct MergeStats {
    /// Records copied to scratch.
    std::size_t out_copies = 0;
    /// Writes inside the zone made by direct moves and flips.
    std::size_t in_array_moves = 0;
    /// Writes made when scratch records are put back.
    std::size_t copy_back = 0;

    std::size_t total_writes() const { return out_copies + in_array_moves + copy_back; }
};

/// Where every bucket of a zone goes.
struct MergeLayout {
    std::size_t light_len = 0;
    std::vector<std::size_t> heavy_lens;
    /// insert_points[i]: lower bound of heavy key i within the light bucket.
    std::vector<std::size_t> insert_points;
    /// dest_starts[i] = insert_points[i] + sum of heavy_lens[j] for j < i.
    std::vector<std::size_t> dest_starts;

    std::size_t heavy_total() const {
        std::size_t s = 0;
        for (auto h : heavy_lens) s += h;
        return s;
    }
};

inline constexpr std::size_t flip_block = 1 << 13;

/// In-place parallel reversal of a[lo, hi). Returns the number of writes.
template <class T>
std::size_t flip(T* a, std::size_t lo, std::size_t hi) {
    const std::size_t len = hi - lo;
    const std::size_t half = len / 2;
    parallel::parallel_blocks(0, half, flip_block, [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) std::swap(a[lo + j], a[hi - 1 - j]);
    });
    return 2 * half;
}

/// Reversal of a[lo, hi) whose first `dead` slots hold no live data; those
/// slots are overwritten but their old values are not preserved.
template <class T>
std::size_t flip_dead_prefix(T* a, std::size_t lo, std::size_t hi, std::size_t dead) {
    const std::size_t len = hi - lo;
    const std::size_t half = len / 2;
    const std::size_t d = std::min(dead, half);
    parallel::parallel_blocks(0, half, flip_block, [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) {
            if (j < d) a[lo + j] = a[hi - 1 - j];
            else std::swap(a[lo + j], a[hi - 1 - j]);
        }
    });
    return 2 * half - d;
}

/// Mirror of flip_dead_prefix: the last `dead` slots hold no live data.
template <class T>
std::size_t flip_dead_suffix(T* a, std::size_t lo, std::size_t hi, std::size_t dead) {
    const std::size_t len = hi - lo;
    const std::size_t half = len / 2;
    const std::size_t d = std::min(dead, half);
    parallel::parallel_blocks(0, half, flip_block, [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) {
            if (j < d) a[hi - 1 - j] = a[lo + j];
            else std::swap(a[lo + j], a[hi - 1 - j]);
        }
    });
    return 2 * half - d;
}

/// Moves a[from, from + len) left to a[to, to + len) when the two ranges
/// overlap and a[to, from) is dead: flip the block, then flip [to, from + len).
template <class T>
std::size_t shift_left_by_flips(T* a, std::size_t from, std::size_t len, std::size_t to) {
    std::size_t w = flip(a, from, from + len);
    w += flip_dead_prefix(a, to, from + len, from - to);
    return w;
}

/// Moves a[from, from + len) right by `by` slots when the ranges overlap and
/// a[from + len, from + len + by) is dead.
template <class T>
std::size_t shift_right_by_flips(T* a, std::size_t from, std::size_t len, std::size_t by) {
    std::size_t w = flip(a, from, from + len);
    w += flip_dead_suffix(a, from, from + len + by, by);
    return w;
}

/// Insert points and destinations for a zone whose light bucket is
/// zone[0, light_len).
template <SortableRecord R>
MergeLayout compute_merge_layout(std::span<const R> zone, std::size_t light_len,
                                 std::span<const HeavyRun<key_of_t<R>>> heavy) {
    MergeLayout lay;
    lay.light_len = light_len;
    const std::size_t m = heavy.size();
    lay.heavy_lens.resize(m);
    lay.insert_points.resize(m);
    lay.dest_starts.resize(m);
    parallel::parallel_for(0, m, 64, [&](std::size_t i) {
        const auto it = std::lower_bound(zone.begin(), zone.begin() + light_len, heavy[i].key,
                                         [](const R& r, key_of_t<R> k) { return r.key < k; });
        lay.insert_points[i] = static_cast<std::size_t>(it - zone.begin());
    });
    std::size_t before = 0;
    for (std::size_t i = 0; i < m; ++i) {
        lay.heavy_lens[i] = heavy[i].length;
        lay.dest_starts[i] = lay.insert_points[i] + before;
        before += heavy[i].length;
    }
    return lay;
}

/// Stable merge of a zone laid out as [light bucket | heavy bucket 1 | ... |
/// heavy bucket m]. The light bucket must be sorted, each heavy bucket must
/// hold a single key, heavy keys must increase strictly and no light key may
/// equal a heavy key. `scratch` needs min(light_len, total heavy) slots;
/// std::length_error is thrown before anything is written otherwise.
template <SortableRecord R>
MergeStats dt_merge(std::span<R> zone, std::size_t light_len, std::span<const HeavyRun<key_of_t<R>>> heavy,
                    std::span<R> scratch) {
    MergeStats st;
    const std::size_t m = heavy.size();
    if (m == 0) return st;
    if (light_len > zone.size()) throw std::invalid_argument("dt_merge: light bucket exceeds zone");
    const MergeLayout lay = compute_merge_layout(std::span<const R>(zone), light_len, heavy);
    const std::size_t heavy_total = lay.heavy_total();
    if (light_len + heavy_total != zone.size()) throw std::invalid_argument("dt_merge: bucket lengths do not tile zone");
    const std::size_t smaller = std::min(light_len, heavy_total);
    if (scratch.size() < smaller) throw std::length_error("dt_merge: scratch smaller than the smaller side");
    if (light_len == 0) return st;  // heavy-only zone is already in order

    R* a = zone.data();
    R* tmp = scratch.data();
    const auto& p = lay.insert_points;
    const auto& q = lay.dest_starts;
    const auto& h = lay.heavy_lens;

    if (heavy_total >= light_len) {
        parallel::copy(a, light_len, tmp);
        st.out_copies = light_len;
        std::size_t cur = light_len;
        for (std::size_t i = 0; i < m; ++i) {
            if (q[i] != cur && h[i] > 0) {
                if (q[i] + h[i] <= cur) {
                    parallel::copy(a + cur, h[i], a + q[i]);
                    st.in_array_moves += h[i];
                } else {
                    st.in_array_moves += shift_left_by_flips(a, cur, h[i], q[i]);
                }
            }
            cur += h[i];
        }
        // light fragment f is tmp[p_f, p_{f+1}) and lands after heavy buckets 0..f-1
        parallel::parallel_for(0, m + 1, 1, [&](std::size_t f) {
            const std::size_t lo = f == 0 ? 0 : p[f - 1];
            const std::size_t hi = f == m ? light_len : p[f];
            const std::size_t dst = f == 0 ? 0 : q[f - 1] + h[f - 1];
            parallel::copy(tmp + lo, hi - lo, a + dst);
        });
        st.copy_back = light_len;
    } else {
        parallel::copy(a + light_len, heavy_total, tmp);
        st.out_copies = heavy_total;
        std::size_t shift = heavy_total;
        for (std::size_t f = m + 1; f-- > 0;) {
            const std::size_t lo = f == 0 ? 0 : p[f - 1];
            const std::size_t hi = f == m ? light_len : p[f];
            const std::size_t len = hi - lo;
            if (f < m) shift -= h[f];
            if (shift == 0 || len == 0) continue;
            if (shift >= len) {
                parallel::copy(a + lo, len, a + lo + shift);
                st.in_array_moves += len;
            } else {
                st.in_array_moves += shift_right_by_flips(a, lo, len, shift);
            }
        }
        std::size_t src = 0;
        for (std::size_t i = 0; i < m; ++i) {
            parallel::copy(tmp + src, h[i], a + q[i]);
            src += h[i];
        }
        st.copy_back = heavy_total;
    }
    return st;
}

}  // namespace isrt

#endif  // ISRT_DTMERGE_HPP

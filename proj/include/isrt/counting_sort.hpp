#ifndef ISRT_COUNTING_SORT_HPP
#define ISRT_COUNTING_SORT_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "isrt/config.hpp"
#include "isrt/parallel.hpp"

namespace isrt {

/// Per-block bucket counts and the matching scatter offsets, both stored
/// row-major by block: entry (block j, bucket i) lives at j * buckets + i.
struct CountMatrix {
    std::size_t blocks = 0;
    std::size_t buckets = 0;
    std::size_t block_size = 0;
    std::vector<std::size_t> counts;
    /// offsets(j, i) = #records with bucket < i + #records with bucket i in blocks < j.
    std::vector<std::size_t> offsets;

    std::size_t count(std::size_t block, std::size_t bucket) const { return counts[block * buckets + bucket]; }
    std::size_t offset(std::size_t block, std::size_t bucket) const { return offsets[block * buckets + bucket]; }
};

/// Number of blocks the counting sort splits n records into.
inline std::size_t plan_block_count(std::size_t n, std::size_t buckets, int workers,
                                    const BlockPolicy& policy) {
    if (n == 0) return 1;
    if (n < 2 * buckets) return 1;
    const std::size_t per_block = std::max(buckets, policy.min_block_records);
    const std::size_t by_size = (n + per_block - 1) / per_block;
    const std::size_t by_workers = policy.blocks_per_worker * static_cast<std::size_t>(std::max(workers, 1));
    return std::max<std::size_t>(1, std::min(by_size, by_workers));
}

namespace detail {

// Column-major exclusive scan: bucket-major order, blocks inner.
inline void column_prefix_sum(CountMatrix& m, std::size_t sequential_cutoff) {
    const std::size_t l = m.blocks, r = m.buckets;
    m.offsets.assign(l * r, 0);
    if (l * r <= sequential_cutoff || l == 1) {
        std::size_t run = 0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < l; ++j) {
                m.offsets[j * r + i] = run;
                run += m.counts[j * r + i];
            }
        return;
    }
    std::vector<std::size_t> totals(r);
    parallel::parallel_for(0, r, 256, [&](std::size_t i) {
        std::size_t s = 0;
        for (std::size_t j = 0; j < l; ++j) s += m.counts[j * r + i];
        totals[i] = s;
    });
    std::size_t run = 0;
    for (std::size_t i = 0; i < r; ++i) {
        const std::size_t t = totals[i];
        totals[i] = run;
        run += t;
    }
    parallel::parallel_for(0, r, 256, [&](std::size_t i) {
        std::size_t s = totals[i];
        for (std::size_t j = 0; j < l; ++j) {
            m.offsets[j * r + i] = s;
            s += m.counts[j * r + i];
        }
    });
}

}  // namespace detail

/// Phase 1 of the counting sort: block-wise bucket occurrence counts plus the
/// column-major prefix sums. Throws std::out_of_range if `bucket_of` returns
/// an id >= buckets.
template <class T, class BucketFn>
CountMatrix build_count_matrix(std::span<const T> in, std::size_t buckets, std::size_t blocks,
                               BucketFn& bucket_of, const BlockPolicy& policy = {}) {
    CountMatrix m;
    m.blocks = std::max<std::size_t>(blocks, 1);
    m.buckets = buckets;
    m.block_size = (in.size() + m.blocks - 1) / m.blocks;
    if (m.block_size == 0) m.block_size = 1;
    m.counts.assign(m.blocks * buckets, 0);
    std::atomic<bool> bad{false};
    parallel::parallel_for(0, m.blocks, 1, [&](std::size_t j) {
        const std::size_t lo = std::min(in.size(), j * m.block_size);
        const std::size_t hi = std::min(in.size(), lo + m.block_size);
        std::size_t* row = m.counts.data() + j * buckets;
        for (std::size_t k = lo; k < hi; ++k) {
            const std::size_t b = bucket_of(in[k]);
            if (b >= buckets) {
                bad.store(true, std::memory_order_relaxed);
                continue;
            }
            ++row[b];
        }
    });
    if (bad.load()) {
        throw std::out_of_range("counting_sort: bucket id outside [0, " + std::to_string(buckets) + ")");
    }
    detail::column_prefix_sum(m, policy.sequential_prefix_entries);
    return m;
}

/// Stable blocked counting sort of `in` into `out` by bucket id.
///
/// Returns bucket boundaries of length buckets + 1: bucket i occupies
/// out[bounds[i], bounds[i + 1]). `in` and `out` must not alias and must have
/// equal length. Every record is written exactly once.
template <class T, class BucketFn>
std::vector<std::size_t> counting_sort(std::span<const T> in, std::span<T> out, std::size_t buckets,
                                       BucketFn&& bucket_of, const BlockPolicy& policy = {}) {
    if (out.size() < in.size()) throw std::length_error("counting_sort: output buffer too small");
    if (buckets == 0) {
        if (!in.empty()) throw std::out_of_range("counting_sort: zero buckets for nonempty input");
        return {0};
    }
    const std::size_t n = in.size();
    std::vector<std::size_t> bounds(buckets + 1, 0);
    if (n == 0) return bounds;

    const std::size_t l = plan_block_count(n, buckets, parallel::num_workers(), policy);
    CountMatrix m = build_count_matrix(in, buckets, l, bucket_of, policy);

    parallel::parallel_for(0, m.blocks, 1, [&](std::size_t j) {
        const std::size_t lo = std::min(n, j * m.block_size);
        const std::size_t hi = std::min(n, lo + m.block_size);
        std::vector<std::size_t> next(m.offsets.begin() + j * buckets, m.offsets.begin() + (j + 1) * buckets);
        for (std::size_t k = lo; k < hi; ++k) out[next[bucket_of(in[k])]++] = in[k];
    });

    for (std::size_t i = 0; i < buckets; ++i) bounds[i] = m.offsets[i];
    bounds[buckets] = n;
    return bounds;
}

}  // namespace isrt

#endif  // ISRT_COUNTING_SORT_HPP

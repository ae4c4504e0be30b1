#ifndef ISRT_DTSORT_HPP
#define ISRT_DTSORT_HPP

// DovetailSort: parallel stable MSD integer sort that routes sampled heavy
// keys into their own buckets and dovetails them back in after recursing on
// the light buckets. plain_msd_sort is the same driver without sampling.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "isrt/config.hpp"
#include "isrt/counting_sort.hpp"
#include "isrt/dtmerge.hpp"
#include "isrt/instrument.hpp"
#include "isrt/parallel.hpp"
#include "isrt/random.hpp"
#include "isrt/record.hpp"
#include "isrt/sampler.hpp"
#include "isrt/stable_merge_sort.hpp"

namespace isrt {

/// Random stream owned by the recursion node that starts at `offset` on
/// level `depth`. Fixed by position, so replays match for any thread count.
inline RngStream node_stream(std::uint64_t seed, unsigned depth, std::size_t offset) {
    return RngStream(seed, mix64(static_cast<std::uint64_t>(offset)) ^ (static_cast<std::uint64_t>(depth) << 56));
}

namespace detail {

enum class Buf : std::uint8_t { A, T };

constexpr Buf other(Buf b) { return b == Buf::A ? Buf::T : Buf::A; }

// Every node leaves its sorted range in A. A node whose records sit in T
// distributes into A; one whose records sit in A distributes into T and later
// copies its heavy buckets over before merging. The merge always runs in A
// with the same range of T as scratch.
template <SortableRecord R>
class MsdDriver {
public:
    using Key = key_of_t<R>;
    static constexpr unsigned width = key_bits_v<R>;

    MsdDriver(R* a, R* t, std::size_t n, const SortConfig& cfg, bool detect)
        : a_(a), t_(t), n_(n), cfg_(cfg), detect_(detect) {}

    void sort(InstrumentReport* rep) { node(0, n_, 0, 0, Buf::A, rep); }

private:
    R* buf(Buf b) const { return b == Buf::A ? a_ : t_; }

    void base_sort(std::size_t lo, std::size_t n, Buf where, InstrumentReport* rep) {
        R* data = buf(where) + lo;
        R* scratch = buf(other(where)) + lo;
        stable_merge_sort(std::span<R>(data, n), std::span<R>(scratch, n), where == Buf::T,
                          [](const R& r) { return r.key; });
        if (rep) rep->base_case_records += n;
    }

    void node(std::size_t lo, std::size_t hi, unsigned consumed, unsigned depth, Buf src,
              InstrumentReport* rep) {
        const std::size_t n = hi - lo;
        if (rep) rep->enter(depth, n);
        if (consumed >= width || n <= 1) {
            if (src == Buf::T) {
                parallel::copy(t_ + lo, n, a_ + lo);
                if (rep) rep->moves += n;
            }
            return;
        }
        if (n < cfg_.base_case_threshold) {
            base_sort(lo, n, src, rep);
            return;
        }

        R* in = buf(src) + lo;
        const Buf dst = other(src);
        R* out = buf(dst) + lo;

        std::vector<Key> heavy;
        std::optional<Key> overflow;
        unsigned gamma = gamma_for(n, width - consumed, cfg_);
        if (detect_ && n >= 2 * sample_count(n, n_, gamma, cfg_)) {
            const auto samples = draw_samples(std::span<const R>(in, n), n_, gamma,
                                              node_stream(cfg_.seed, depth, lo), cfg_);
            if (depth == 0) {
                const auto ov = plan_overflow(std::span<const Key>(samples), width - consumed, gamma);
                if (ov.threshold) {
                    consumed += ov.skip_bits;
                    overflow = ov.threshold;
                    if (rep) rep->root_skip_bits = ov.skip_bits;
                    gamma = gamma_for(n, width - consumed, cfg_);
                }
            }
            heavy = detect_heavy(std::span<const Key>(samples), n_);
        }
        const unsigned remaining = width - consumed;
        const BucketPlan<Key> plan =
            plan_buckets(std::span<const Key>(heavy), gamma, remaining - gamma, overflow);

        const auto bounds = counting_sort(std::span<const R>(in, n), std::span<R>(out, n), plan.bucket_count(),
                                          [&plan](const R& r) { return plan.bucket_id(r.key); },
                                          cfg_.block_policy);
        if (rep) {
            rep->moves += n;
            rep->levels = std::max(rep->levels, depth + 1);
        }

        const std::size_t zones = plan.zone_count();
        std::vector<InstrumentReport> zone_reps(rep ? zones + 1 : 0);
        for (std::size_t z = 0; z < zones; ++z) {
            const std::uint32_t light = plan.light_lookup[z];
            const std::uint32_t end = z + 1 < zones ? plan.light_lookup[z + 1]
                                                    : static_cast<std::uint32_t>(zones + heavy.size());
            const std::size_t zlo = bounds[light], zhi = bounds[end];
            if (zlo == zhi) continue;
            const bool fork = zhi - zlo >= cfg_.parallel_grain;
            InstrumentReport* zrep = rep ? (fork ? &zone_reps[z] : rep) : nullptr;
            parallel::spawn_if(fork, [=, this, &plan, &bounds] {
                zone(plan, bounds, light, end, lo, consumed + plan.gamma, depth, dst, zrep);
            });
        }
        if (overflow) {
            const std::uint32_t id = plan.overflow_id();
            const std::size_t olo = bounds[id], ohi = bounds[id + 1];
            if (ohi > olo) {
                InstrumentReport* orep = rep ? &zone_reps[zones] : nullptr;
                parallel::spawn_if(ohi - olo >= cfg_.parallel_grain,
                                   [=, this] { base_sort(lo + olo, ohi - olo, dst, orep); });
            }
        }
        parallel::sync();
        if (rep)
            for (const auto& z : zone_reps) rep->merge(z);
    }

    // One MSD zone: buckets [light, end) of `plan`, laid out in buffer `where`.
    void zone(const BucketPlan<Key>& plan, const std::vector<std::size_t>& bounds, std::uint32_t light,
              std::uint32_t end, std::size_t base, unsigned next_consumed, unsigned depth, Buf where,
              InstrumentReport* rep) {
        const std::size_t llo = base + bounds[light], lhi = base + bounds[light + 1];
        const std::size_t zhi = base + bounds[end];
        if (lhi > llo) node(llo, lhi, next_consumed, depth + 1, where, rep);
        if (end == light + 1) return;

        std::vector<HeavyRun<Key>> runs;
        runs.reserve(end - light - 1);
        for (std::uint32_t b = light + 1; b < end; ++b)
            runs.push_back({plan.descriptors[b].key, bounds[b + 1] - bounds[b]});
        const std::size_t heavy_n = zhi - lhi;
        if (rep) rep->add_heavy(depth, heavy_n);
        if (where == Buf::T && heavy_n > 0) {
            parallel::copy(t_ + lhi, heavy_n, a_ + lhi);
            if (rep) rep->moves += heavy_n;
        }
        const MergeStats st = dt_merge(std::span<R>(a_ + llo, zhi - llo), lhi - llo,
                                       std::span<const HeavyRun<Key>>(runs), std::span<R>(t_ + llo, zhi - llo));
        if (rep) {
            rep->moves += st.total_writes();
            rep->merge_out_copies += st.out_copies;
            rep->merge_in_array_moves += st.in_array_moves;
        }
    }

    R* a_;
    R* t_;
    std::size_t n_;
    const SortConfig& cfg_;
    bool detect_;
};

template <SortableRecord R>
void run_msd(std::span<R> data, const SortConfig& cfg, InstrumentReport* report, bool detect) {
    cfg.validate(key_bits_v<R>);
    if (report) *report = InstrumentReport{};
    if (data.empty()) return;
    std::unique_ptr<R[]> tmp(new R[data.size()]);
    MsdDriver<R> driver(data.data(), tmp.get(), data.size(), cfg, detect);
    parallel::run(cfg.threads, [&] { driver.sort(report); });
}

}  // namespace detail

/// Stable ascending sort of `data` by key. Uses one temporary buffer of equal
/// size. When `report` is non-null it receives the work counters.
template <SortableRecord R>
void dt_sort(std::span<R> data, const SortConfig& cfg = {}, InstrumentReport* report = nullptr) {
    detail::run_msd(data, cfg, report, true);
}

/// Plain parallel MSD radix sort: same distribution and base cases as
/// dt_sort, no sampling, no heavy buckets, no overflow bucket.
template <SortableRecord R>
void plain_msd_sort(std::span<R> data, const SortConfig& cfg = {}, InstrumentReport* report = nullptr) {
    detail::run_msd(data, cfg, report, false);
}

}  // namespace isrt

#endif  // ISRT_DTSORT_HPP

#ifndef ISRT_SAMPLER_HPP
#define ISRT_SAMPLER_HPP

// Heavy-key detection by sampling and the bucket layout built from it.

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "isrt/config.hpp"
#include "isrt/parallel.hpp"
#include "isrt/random.hpp"
#include "isrt/record.hpp"
#include "isrt/stable_merge_sort.hpp"

namespace isrt {

enum class BucketKind : std::uint8_t { Light, Heavy, Overflow };

template <std::unsigned_integral Key>
struct BucketDescriptor {
    std::uint32_t id = 0;
    std::uint32_t zone = 0;
    BucketKind kind = BucketKind::Light;
    /// The heavy key; unused for light and overflow buckets.
    Key key = 0;

    friend bool operator==(const BucketDescriptor&, const BucketDescriptor&) = default;
};

/// Open-addressing map from heavy key to bucket id. Built once per
/// subproblem, read-only afterwards; lookups never allocate.
template <std::unsigned_integral Key>
class HeavyMap {
public:
    static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

    HeavyMap() = default;

    void build(std::span<const Key> keys, std::span<const std::uint32_t> ids) {
        size_ = keys.size();
        if (size_ == 0) {
            slots_.clear();
            return;
        }
        const std::size_t cap = std::bit_ceil(std::max<std::size_t>(4, 2 * size_));
        bits_ = static_cast<unsigned>(std::countr_zero(cap));
        slots_.assign(cap, Slot{0, npos});
        for (std::size_t i = 0; i < keys.size(); ++i) {
            std::size_t h = slot_of(keys[i]);
            while (slots_[h].id != npos) h = (h + 1) & (cap - 1);
            slots_[h] = Slot{keys[i], ids[i]};
        }
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    /// Bucket id of `k`, or npos when `k` is not heavy.
    std::uint32_t find(Key k) const noexcept {
        if (size_ == 0) return npos;
        const std::size_t mask = slots_.size() - 1;
        for (std::size_t h = slot_of(k);; h = (h + 1) & mask) {
            const Slot& s = slots_[h];
            if (s.id == npos) return npos;
            if (s.key == k) return s.id;
        }
    }

private:
    struct Slot {
        Key key;
        std::uint32_t id;
    };

    std::size_t slot_of(Key k) const noexcept {
        return static_cast<std::size_t>((static_cast<std::uint64_t>(k) * 0x9e3779b97f4a7c15ULL) >> (64 - bits_));
    }

    std::vector<Slot> slots_;
    std::size_t size_ = 0;
    unsigned bits_ = 2;
};

/// Bucket layout of one subproblem: per MSD zone one light bucket followed by
/// that zone's heavy buckets in key order, then an optional overflow bucket.
template <std::unsigned_integral Key>
struct BucketPlan {
    std::vector<BucketDescriptor<Key>> descriptors;
    HeavyMap<Key> heavy;
    /// zone -> light bucket id
    std::vector<std::uint32_t> light_lookup;
    /// Right shift that brings the current digit to the low bits.
    unsigned digit_shift = 0;
    unsigned gamma = 0;
    std::optional<Key> overflow_threshold;

    std::size_t bucket_count() const noexcept { return descriptors.size(); }
    std::size_t zone_count() const noexcept { return light_lookup.size(); }

    std::uint32_t zone_of(Key k) const noexcept {
        return static_cast<std::uint32_t>((k >> digit_shift) & ((Key{1} << gamma) - 1));
    }

    std::uint32_t overflow_id() const noexcept { return static_cast<std::uint32_t>(descriptors.size() - 1); }

    std::uint32_t bucket_id(Key k) const noexcept {
        if (overflow_threshold && k >= *overflow_threshold) return overflow_id();
        const std::uint32_t h = heavy.find(k);
        if (h != HeavyMap<Key>::npos) return h;
        return light_lookup[zone_of(k)];
    }
};

template <std::unsigned_integral Key>
std::uint32_t get_bucket_id(Key key, const BucketPlan<Key>& plan) noexcept {
    return plan.bucket_id(key);
}

inline constexpr std::size_t samples_per_stream = 1024;

/// Draws min(n', 2^gamma * ceil(log2 n_original)) keys uniformly with
/// replacement and returns them sorted ascending. Chunks of samples come from
/// fixed substreams of `rng`, so the result does not depend on scheduling.
template <SortableRecord R>
std::vector<key_of_t<R>> draw_samples(std::span<const R> records, std::size_t n_original, unsigned gamma,
                                      const RngStream& rng, const SortConfig& cfg = {}) {
    using Key = key_of_t<R>;
    if (records.empty()) throw std::invalid_argument("draw_samples: empty input");
    const std::size_t count = sample_count(records.size(), n_original, gamma, cfg);
    std::vector<Key> s(count);
    const std::size_t chunks = (count + samples_per_stream - 1) / samples_per_stream;
    parallel::parallel_for(0, chunks, 4, [&](std::size_t c) {
        RngStream local = rng.substream(c);
        const std::size_t lo = c * samples_per_stream;
        const std::size_t hi = std::min(count, lo + samples_per_stream);
        for (std::size_t i = lo; i < hi; ++i) s[i] = records[local.uniform(records.size())].key;
    });
    std::vector<Key> scratch(count);
    stable_merge_sort(std::span<Key>(s), std::span<Key>(scratch), false, [](Key k) { return k; });
    return s;
}

/// Keys that appear at least twice among every ceil(log2 n)-th sample.
template <std::unsigned_integral Key>
std::vector<Key> detect_heavy(std::span<const Key> sorted_samples, std::size_t n_original) {
    const std::size_t stride = ceil_log2(n_original);
    std::vector<Key> heavy;
    bool have_prev = false, prev_emitted = false;
    Key prev = 0;
    for (std::size_t i = 0; i < sorted_samples.size(); i += stride) {
        const Key k = sorted_samples[i];
        if (have_prev && k == prev) {
            if (!prev_emitted) heavy.push_back(k);
            prev_emitted = true;
        } else {
            prev_emitted = false;
        }
        prev = k;
        have_prev = true;
    }
    return heavy;
}

/// Builds the bucket layout by merging one light slot per zone with the
/// heavy keys ordered by (zone, key). `heavy_keys` must be sorted and
/// distinct, and none may be >= the overflow threshold.
template <std::unsigned_integral Key>
BucketPlan<Key> plan_buckets(std::span<const Key> heavy_keys, unsigned gamma, unsigned digit_shift,
                             std::optional<Key> overflow_threshold = std::nullopt) {
    if (gamma == 0 || gamma > 16) throw std::invalid_argument("plan_buckets: gamma outside [1, 16]");
    BucketPlan<Key> plan;
    plan.gamma = gamma;
    plan.digit_shift = digit_shift;
    plan.overflow_threshold = overflow_threshold;
    const std::size_t zones = std::size_t{1} << gamma;
    plan.light_lookup.resize(zones);
    plan.descriptors.reserve(zones + heavy_keys.size() + 1);

    std::vector<std::uint32_t> heavy_ids;
    heavy_ids.reserve(heavy_keys.size());
    std::size_t h = 0;
    for (std::uint32_t z = 0; z < zones; ++z) {
        const auto light_id = static_cast<std::uint32_t>(plan.descriptors.size());
        plan.light_lookup[z] = light_id;
        plan.descriptors.push_back({light_id, z, BucketKind::Light, 0});
        while (h < heavy_keys.size() && plan.zone_of(heavy_keys[h]) == z) {
            const auto id = static_cast<std::uint32_t>(plan.descriptors.size());
            plan.descriptors.push_back({id, z, BucketKind::Heavy, heavy_keys[h]});
            heavy_ids.push_back(id);
            ++h;
        }
    }
    if (h != heavy_keys.size()) throw std::invalid_argument("plan_buckets: heavy keys not sorted by zone");
    if (overflow_threshold) {
        const auto id = static_cast<std::uint32_t>(plan.descriptors.size());
        plan.descriptors.push_back({id, static_cast<std::uint32_t>(zones), BucketKind::Overflow, 0});
    }
    plan.heavy.build(heavy_keys, heavy_ids);
    return plan;
}

template <std::unsigned_integral Key>
struct OverflowPlan {
    unsigned skip_bits = 0;
    std::optional<Key> threshold;
};

/// Leading-zero skipping from the sample maximum. `skip_bits` is a multiple
/// of `granularity` and always leaves at least one bit; keys at or above the
/// threshold belong to the overflow bucket.
template <std::unsigned_integral Key>
OverflowPlan<Key> plan_overflow(std::span<const Key> sorted_samples, unsigned total_width, unsigned granularity) {
    if (sorted_samples.empty()) throw std::invalid_argument("plan_overflow: no samples");
    if (granularity == 0) granularity = 1;
    const Key max = sorted_samples.back();
    const unsigned type_bits = sizeof(Key) * 8;
    const unsigned lz = static_cast<unsigned>(std::countl_zero(max)) - (type_bits - total_width);
    const unsigned usable = std::min(lz, total_width - 1);
    OverflowPlan<Key> out;
    out.skip_bits = usable / granularity * granularity;
    if (out.skip_bits > 0) out.threshold = Key{1} << (total_width - out.skip_bits);
    return out;
}

}  // namespace isrt

#endif  // ISRT_SAMPLER_HPP

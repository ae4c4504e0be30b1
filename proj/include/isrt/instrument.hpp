#ifndef ISRT_INSTRUMENT_HPP
#define ISRT_INSTRUMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace isrt {

/// Counters for the work accounting of one sort call.
///
/// `moves` counts record writes made by distribution, heavy-bucket
/// consolidation, dovetail merging and base-case copies. Writes performed
/// inside the comparison-sort base case are not moves; those records are
/// tallied in `base_case_records` instead.
///
/// Each worker fills a private report and reports are merged at join points.
struct InstrumentReport {
    std::uint64_t moves = 0;
    std::uint64_t merge_out_copies = 0;
    std::uint64_t merge_in_array_moves = 0;
    std::uint64_t base_case_records = 0;
    /// Number of distribution levels on the deepest root-to-leaf path.
    unsigned levels = 0;
    /// Leading key bits skipped at the root thanks to the overflow bucket.
    unsigned root_skip_bits = 0;
    /// Records entering recursion nodes at each depth (index 0 is the root).
    std::vector<std::uint64_t> level_mass;
    /// Records routed to heavy buckets by distributions at each depth.
    std::vector<std::uint64_t> heavy_records_removed;

    void enter(unsigned depth, std::uint64_t records);
    void add_heavy(unsigned depth, std::uint64_t records);
    void merge(const InstrumentReport& other);

    std::uint64_t mass_at(unsigned depth) const {
        return depth < level_mass.size() ? level_mass[depth] : 0;
    }
    std::uint64_t heavy_at(unsigned depth) const {
        return depth < heavy_records_removed.size() ? heavy_records_removed[depth] : 0;
    }

    friend bool operator==(const InstrumentReport&, const InstrumentReport&) = default;
};

std::ostream& operator<<(std::ostream& os, const InstrumentReport& r);

}  // namespace isrt

#endif  // ISRT_INSTRUMENT_HPP

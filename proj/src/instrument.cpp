#include "isrt/instrument.hpp"

#include <algorithm>
#include <ostream>

namespace isrt {

namespace {

void add_at(std::vector<std::uint64_t>& v, unsigned depth, std::uint64_t x) {
    if (v.size() <= depth) v.resize(depth + 1, 0);
    v[depth] += x;
}

void add_all(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
    if (dst.size() < src.size()) dst.resize(src.size(), 0);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
}

}  // namespace

void InstrumentReport::enter(unsigned depth, std::uint64_t records) {
    add_at(level_mass, depth, records);
}

void InstrumentReport::add_heavy(unsigned depth, std::uint64_t records) {
    add_at(heavy_records_removed, depth, records);
}

void InstrumentReport::merge(const InstrumentReport& other) {
    moves += other.moves;
    merge_out_copies += other.merge_out_copies;
    merge_in_array_moves += other.merge_in_array_moves;
    base_case_records += other.base_case_records;
    levels = std::max(levels, other.levels);
    root_skip_bits = std::max(root_skip_bits, other.root_skip_bits);
    add_all(level_mass, other.level_mass);
    add_all(heavy_records_removed, other.heavy_records_removed);
}

std::ostream& operator<<(std::ostream& os, const InstrumentReport& r) {
    os << "moves=" << r.moves << " merge_out_copies=" << r.merge_out_copies
       << " merge_in_array_moves=" << r.merge_in_array_moves
       << " base_case_records=" << r.base_case_records << " levels=" << r.levels
       << " root_skip_bits=" << r.root_skip_bits << " level_mass=[";
    for (std::size_t i = 0; i < r.level_mass.size(); ++i) os << (i ? "," : "") << r.level_mass[i];
    os << "] heavy=[";
    for (std::size_t i = 0; i < r.heavy_records_removed.size(); ++i)
        os << (i ? "," : "") << r.heavy_records_removed[i];
    return os << "]";
}

}  // namespace isrt

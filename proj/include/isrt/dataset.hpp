#ifndef ISRT_DATASET_HPP
#define ISRT_DATASET_HPP

// On-disk dataset format (little-endian):
//   "ISRT" | version u8 = 1 | key_width u8 (32|64) | payload_width u8 (0|4|8)
//   | reserved u8 | count u64 | count x (key, payload)

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "isrt/record.hpp"

namespace isrt {

class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Dataset {
    unsigned key_width = 32;
    /// Payload width in bytes.
    unsigned payload_width = 8;
    std::vector<std::uint64_t> keys;
    std::vector<std::uint64_t> payloads;

    std::size_t size() const { return keys.size(); }

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

inline constexpr std::uint8_t dataset_version = 1;

void write_dataset(std::ostream& os, const Dataset& d);
Dataset read_dataset(std::istream& is);
void write_dataset_file(const std::string& path, const Dataset& d);
Dataset read_dataset_file(const std::string& path);

template <std::unsigned_integral K, class P>
std::vector<Record<K, P>> to_records(const Dataset& d) {
    std::vector<Record<K, P>> out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        out[i].key = static_cast<K>(d.keys[i]);
        if constexpr (!std::is_same_v<P, NoPayload>) out[i].payload = static_cast<P>(d.payloads[i]);
    }
    return out;
}

template <std::unsigned_integral K, class P>
Dataset from_records(const std::vector<Record<K, P>>& recs) {
    Dataset d;
    d.key_width = sizeof(K) * 8;
    if constexpr (std::is_same_v<P, NoPayload>) d.payload_width = 0;
    else d.payload_width = sizeof(P);
    d.keys.resize(recs.size());
    d.payloads.assign(recs.size(), 0);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        d.keys[i] = recs[i].key;
        if constexpr (!std::is_same_v<P, NoPayload>) d.payloads[i] = recs[i].payload;
    }
    return d;
}

}  // namespace isrt

#endif  // ISRT_DATASET_HPP

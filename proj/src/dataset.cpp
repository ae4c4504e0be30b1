#include "isrt/dataset.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace isrt {

namespace {

void put_le(std::ostream& os, std::uint64_t v, unsigned bytes) {
    std::array<char, 8> b{};
    for (unsigned i = 0; i < bytes; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b.data(), bytes);
}

std::uint64_t get_le(const unsigned char* p, unsigned bytes) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < bytes; ++i) v |= std::uint64_t{p[i]} << (8 * i);
    return v;
}

void check_widths(unsigned key_width, unsigned payload_width) {
    if (key_width != 32 && key_width != 64)
        throw DatasetError("dataset: key width must be 32 or 64, got " + std::to_string(key_width));
    if (payload_width != 0 && payload_width != 4 && payload_width != 8)
        throw DatasetError("dataset: payload width must be 0, 4 or 8, got " + std::to_string(payload_width));
}

}  // namespace

void write_dataset(std::ostream& os, const Dataset& d) {
    check_widths(d.key_width, d.payload_width);
    if (d.payloads.size() != d.keys.size() && d.payload_width != 0)
        throw DatasetError("dataset: payload count does not match key count");
    os.write("ISRT", 4);
    put_le(os, dataset_version, 1);
    put_le(os, d.key_width, 1);
    put_le(os, d.payload_width, 1);
    put_le(os, 0, 1);
    put_le(os, d.keys.size(), 8);
    const unsigned kb = d.key_width / 8;
    for (std::size_t i = 0; i < d.keys.size(); ++i) {
        put_le(os, d.keys[i], kb);
        if (d.payload_width) put_le(os, d.payloads[i], d.payload_width);
    }
    if (!os) throw DatasetError("dataset: write failed");
}

Dataset read_dataset(std::istream& is) {
    std::array<unsigned char, 16> hdr{};
    if (!is.read(reinterpret_cast<char*>(hdr.data()), hdr.size()))
        throw DatasetError("dataset: truncated header");
    if (std::memcmp(hdr.data(), "ISRT", 4) != 0) throw DatasetError("dataset: bad magic");
    if (hdr[4] != dataset_version) throw DatasetError("dataset: unsupported version " + std::to_string(hdr[4]));
    Dataset d;
    d.key_width = hdr[5];
    d.payload_width = hdr[6];
    check_widths(d.key_width, d.payload_width);
    const std::uint64_t count = get_le(hdr.data() + 8, 8);
    const unsigned kb = d.key_width / 8;
    const unsigned rec = kb + d.payload_width;

    // bound the allocation by what the stream can actually hold
    const auto here = is.tellg();
    if (here != std::istream::pos_type(-1)) {
        is.seekg(0, std::ios::end);
        const auto end = is.tellg();
        is.seekg(here);
        if (end != std::istream::pos_type(-1) &&
            static_cast<std::uint64_t>(end - here) / rec < count)
            throw DatasetError("dataset: truncated records");
    }

    d.keys.resize(count);
    d.payloads.assign(count, 0);
    std::vector<unsigned char> buf(rec * std::size_t{4096});
    std::uint64_t done = 0;
    while (done < count) {
        const std::uint64_t take = std::min<std::uint64_t>(4096, count - done);
        if (!is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(take * rec)))
            throw DatasetError("dataset: truncated records");
        for (std::uint64_t i = 0; i < take; ++i) {
            const unsigned char* p = buf.data() + i * rec;
            d.keys[done + i] = get_le(p, kb);
            if (d.payload_width) d.payloads[done + i] = get_le(p + kb, d.payload_width);
        }
        done += take;
    }
    return d;
}

void write_dataset_file(const std::string& path, const Dataset& d) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw DatasetError("dataset: cannot open '" + path + "' for writing");
    write_dataset(os, d);
}

Dataset read_dataset_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DatasetError("dataset: cannot open '" + path + "'");
    return read_dataset(is);
}

}  // namespace isrt

#ifndef ISRT_RANDOM_HPP
#define ISRT_RANDOM_HPP

#include <cstdint>

namespace isrt {

/// SplitMix64 finalizer with its golden-ratio increment folded in. A bijection
/// on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic random stream addressed by (seed, stream id).
///
/// The starting state is an injective function of the stream id for a fixed
/// seed (and vice versa), so distinct streams never share a first draw. Work
/// that is split across workers derives one substream per chunk, which keeps
/// every draw independent of the schedule.
class RngStream {
public:
    constexpr RngStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : seed_(seed), stream_(stream), state_(mix64(seed ^ mix64(stream))) {}

    constexpr std::uint64_t seed() const noexcept { return seed_; }
    constexpr std::uint64_t stream_id() const noexcept { return stream_; }

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift).
    constexpr std::uint64_t uniform(std::uint64_t bound) noexcept {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t floor = (0 - bound) % bound;
            while (low < floor) {
                m = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform01() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Child stream; same (parent, id) always yields the same child.
    constexpr RngStream substream(std::uint64_t id) const noexcept {
        return RngStream(seed_, mix64(stream_ ^ mix64(id ^ 0x5bd1e9955bd1e995ULL)));
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t state_;
};

constexpr RngStream rng_stream(std::uint64_t seed, std::uint64_t stream_id) noexcept {
    return RngStream(seed, stream_id);
}

}  // namespace isrt

#endif  // ISRT_RANDOM_HPP

#ifndef ISRT_CONFIG_HPP
#define ISRT_CONFIG_HPP

#include <cstddef>
#include <cstdint>

namespace isrt {

enum class GammaPolicy {
    /// floor(log2(n') / 3) clamped to [gamma_min, gamma_max].
    Adaptive,
    /// ceil(sqrt(range_bits)) on every level; pairs with theta = 2^(c * gamma).
    Theory,
};

/// Block-size rule for the blocked counting sort.
struct BlockPolicy {
    std::size_t min_block_records = 1024;
    std::size_t blocks_per_worker = 8;
    /// Count matrices with at most this many entries are prefix-summed sequentially.
    std::size_t sequential_prefix_entries = std::size_t{1} << 16;
};

struct SortConfig {
    GammaPolicy gamma_policy = GammaPolicy::Adaptive;
    unsigned gamma_min = 8;
    unsigned gamma_max = 12;
    /// Key range exponent used by GammaPolicy::Theory; 0 means the key width.
    unsigned range_bits = 0;

    /// Subproblems smaller than this go to the stable comparison sort.
    std::size_t base_case_threshold = std::size_t{1} << 14;
    unsigned base_case_exponent = 2;

    /// Samples per subproblem: min(n', multiplier * 2^gamma * ceil(log2 n)).
    std::size_t sample_multiplier = 1;

    std::uint64_t seed = 0;
    BlockPolicy block_policy{};
    std::size_t parallel_grain = 4096;
    /// Worker threads; 0 uses the OpenMP default.
    int threads = 0;

    /// Theory-mode settings for keys of `key_width` bits: gamma = ceil(sqrt(w))
    /// and theta = 2^(c * gamma).
    static SortConfig theory(unsigned key_width, unsigned c = 2);

    /// Throws std::invalid_argument when gamma or theta violate their bounds.
    void validate(unsigned key_width) const;
};

/// Digit width for a subproblem of `n_prime` records with `remaining_bits`
/// unsorted bits. Throws std::logic_error when remaining_bits == 0.
unsigned gamma_for(std::size_t n_prime, unsigned remaining_bits, const SortConfig& cfg);

/// Largest digit width the policy can emit for keys of `key_width` bits.
unsigned gamma_upper_bound(const SortConfig& cfg, unsigned key_width);

/// Smallest digit width the policy emits while at least that many bits remain.
unsigned gamma_lower_bound(const SortConfig& cfg, unsigned key_width);

/// max(1, ceil(log2 n)).
unsigned ceil_log2(std::size_t n);

/// min(n', multiplier * 2^gamma * ceil(log2 n_original)).
std::size_t sample_count(std::size_t n_prime, std::size_t n_original, unsigned gamma,
                         const SortConfig& cfg);

}  // namespace isrt

#endif  // ISRT_CONFIG_HPP

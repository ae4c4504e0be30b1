#include "isrt/config.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isrt {

namespace {

unsigned theory_gamma(const SortConfig& cfg, unsigned key_width) {
    const unsigned bits = cfg.range_bits ? cfg.range_bits : key_width;
    return static_cast<unsigned>(std::ceil(std::sqrt(static_cast<double>(bits))));
}

}  // namespace

SortConfig SortConfig::theory(unsigned key_width, unsigned c) {
    SortConfig cfg;
    cfg.gamma_policy = GammaPolicy::Theory;
    cfg.range_bits = key_width;
    cfg.base_case_exponent = c;
    const unsigned g = theory_gamma(cfg, key_width);
    cfg.gamma_min = g;
    cfg.gamma_max = g;
    cfg.base_case_threshold = std::size_t{1} << std::min(c * g, 40u);
    return cfg;
}

void SortConfig::validate(unsigned key_width) const {
    const unsigned hi = gamma_upper_bound(*this, key_width);
    const unsigned lo = gamma_lower_bound(*this, key_width);
    if (lo < 1 || hi > 16 || lo > hi) {
        throw std::invalid_argument("digit width must stay within [1, 16], got [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    if (base_case_threshold < (std::size_t{1} << hi)) {
        throw std::invalid_argument("base case threshold must be at least 2^gamma_max");
    }
    if (sample_multiplier == 0) throw std::invalid_argument("sample_multiplier must be positive");
}

unsigned gamma_for(std::size_t n_prime, unsigned remaining_bits, const SortConfig& cfg) {
    if (remaining_bits == 0) {
        throw std::logic_error("gamma_for: no bits left (base case should have triggered)");
    }
    unsigned g;
    if (cfg.gamma_policy == GammaPolicy::Theory) {
        g = theory_gamma(cfg, cfg.range_bits ? cfg.range_bits : 64);
    } else {
        const unsigned lg = n_prime > 0 ? static_cast<unsigned>(std::bit_width(n_prime)) - 1 : 0;
        g = std::clamp(lg / 3, cfg.gamma_min, cfg.gamma_max);
    }
    return std::clamp(std::min(g, remaining_bits), 1u, 16u);
}

unsigned gamma_upper_bound(const SortConfig& cfg, unsigned key_width) {
    if (cfg.gamma_policy == GammaPolicy::Theory) return std::min(theory_gamma(cfg, key_width), key_width);
    return std::min(cfg.gamma_max, key_width);
}

unsigned gamma_lower_bound(const SortConfig& cfg, unsigned key_width) {
    if (cfg.gamma_policy == GammaPolicy::Theory) return std::min(theory_gamma(cfg, key_width), key_width);
    return std::min(cfg.gamma_min, key_width);
}

unsigned ceil_log2(std::size_t n) {
    if (n <= 2) return 1;
    return static_cast<unsigned>(std::bit_width(n - 1));
}

std::size_t sample_count(std::size_t n_prime, std::size_t n_original, unsigned gamma,
                         const SortConfig& cfg) {
    const std::size_t want = cfg.sample_multiplier * (std::size_t{1} << gamma) * ceil_log2(n_original);
    return std::min(n_prime, want);
}

}  // namespace isrt

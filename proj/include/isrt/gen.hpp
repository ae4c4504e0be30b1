#ifndef ISRT_GEN_HPP
#define ISRT_GEN_HPP

// Synthetic key distributions and a skewed edge-list generator. All output is
// a pure function of the DistSpec: chunks of records draw from fixed substreams.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "isrt/random.hpp"
#include "isrt/record.hpp"

namespace isrt::gen {

/// mu distinct keys drawn uniformly. mu == 0 means every key of the width.
struct Uniform {
    std::uint64_t mu;
};
/// Exp(1e-5 * lambda) rounded to the nearest integer.
struct Exponential {
    double lambda;
};
/// Rank in [1, n] with probability proportional to rank^-s.
struct Zipfian {
    double s;
};
/// Each key bit is 0 with probability 1/t.
struct BExp {
    double t;
};

using Family = std::variant<Uniform, Exponential, Zipfian, BExp>;

struct DistSpec {
    Family family;
    std::size_t n = 0;
    unsigned key_width = 32;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on bad parameters.
    void validate() const;
};

/// Short family name used on the command line and in CSV output.
std::string family_name(const Family& f);
/// The family's single parameter as a double.
double family_param(const Family& f);
/// Builds a family from its CLI name ("uniform", "exp", "zipf", "bexp").
Family make_family(const std::string& name, double param);

/// Parameter grid per family.
std::vector<Family> preset_grid();

/// Seed-derived odd-multiplier bijection on `width`-bit words.
class KeyMap {
public:
    KeyMap(std::uint64_t seed, unsigned width);
    std::uint64_t operator()(std::uint64_t x) const {
        return ((x + add_) * mul_) & mask_;
    }

private:
    std::uint64_t mul_;
    std::uint64_t add_;
    std::uint64_t mask_;
};

/// Rejection-inversion sampler for the Zipf distribution on [1, n].
class ZipfSampler {
public:
    ZipfSampler(std::uint64_t n, double s);
    std::uint64_t operator()(RngStream& rng) const;

    std::uint64_t support() const { return n_; }
    double exponent() const { return s_; }

private:
    double h(double x) const;
    double h_integral(double x) const;
    double h_integral_inverse(double x) const;

    std::uint64_t n_;
    double s_;
    double h_integral_x1_;
    double h_integral_n_;
    double sv_;
};

inline constexpr std::size_t chunk_records = std::size_t{1} << 16;

/// Keys only.
std::vector<std::uint64_t> generate_keys(const DistSpec& spec);

/// Records carrying their original index as payload.
template <std::unsigned_integral K>
std::vector<Record<K, std::uint64_t>> generate(const DistSpec& spec) {
    const auto keys = generate_keys(spec);
    std::vector<Record<K, std::uint64_t>> out(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) out[i] = {static_cast<K>(keys[i]), i};
    return out;
}

struct Edge {
    std::uint32_t src;
    std::uint32_t dst;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// `edges` edges on `vertices` vertices; sources uniform, destinations
/// Zipf(degree_skew) with vertex 0 the most popular.
std::vector<Edge> generate_edges(std::uint64_t vertices, std::size_t edges, double degree_skew,
                                 std::uint64_t seed);

}  // namespace isrt::gen

#endif  // ISRT_GEN_HPP

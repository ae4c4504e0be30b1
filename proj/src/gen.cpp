#include "isrt/gen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isrt/parallel.hpp"

namespace isrt::gen {

namespace {

constexpr std::uint64_t width_mask(unsigned w) {
    return w >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
}

// log1p(x)/x, continuous at 0
double helper1(double x) {
    return std::abs(x) > 1e-8 ? std::log1p(x) / x : 1.0 - x * (0.5 - x * (1.0 / 3.0 - 0.25 * x));
}

// expm1(x)/x, continuous at 0
double helper2(double x) {
    return std::abs(x) > 1e-8 ? std::expm1(x) / x : 1.0 + x * 0.5 * (1.0 + x * (1.0 / 3.0) * (1.0 + 0.25 * x));
}

template <class Fill>
std::vector<std::uint64_t> chunked(const DistSpec& spec, std::uint64_t tag, Fill fill) {
    std::vector<std::uint64_t> keys(spec.n);
    const std::size_t chunks = (spec.n + chunk_records - 1) / chunk_records;
    const RngStream root(spec.seed, tag);
    parallel::run(0, [&] {
        parallel::parallel_for(0, chunks, 1, [&](std::size_t c) {
            RngStream rng = root.substream(c);
            const std::size_t lo = c * chunk_records;
            const std::size_t hi = std::min(spec.n, lo + chunk_records);
            for (std::size_t i = lo; i < hi; ++i) keys[i] = fill(rng);
        });
    });
    return keys;
}

}  // namespace

void DistSpec::validate() const {
    if (key_width != 32 && key_width != 64) throw std::invalid_argument("key width must be 32 or 64");
    std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, Uniform>) {
                if (key_width == 32 && f.mu > (std::uint64_t{1} << 32))
                    throw std::invalid_argument("uniform: mu exceeds 2^32 distinct 32-bit keys");
            } else if constexpr (std::is_same_v<F, Exponential>) {
                if (!(f.lambda > 0)) throw std::invalid_argument("exponential: lambda must be > 0");
            } else if constexpr (std::is_same_v<F, Zipfian>) {
                if (!(f.s > 0)) throw std::invalid_argument("zipfian: s must be > 0");
            } else {
                if (!(f.t >= 1)) throw std::invalid_argument("bexp: t must be >= 1");
            }
        },
        family);
}

std::string family_name(const Family& f) {
    switch (f.index()) {
        case 0: return "uniform";
        case 1: return "exp";
        case 2: return "zipf";
        default: return "bexp";
    }
}

double family_param(const Family& f) {
    return std::visit(
        [](const auto& x) -> double {
            using F = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<F, Uniform>) return static_cast<double>(x.mu);
            else if constexpr (std::is_same_v<F, Exponential>) return x.lambda;
            else if constexpr (std::is_same_v<F, Zipfian>) return x.s;
            else return x.t;
        },
        f);
}

Family make_family(const std::string& name, double param) {
    if (name == "uniform") {
        if (param < 0 || param != std::floor(param)) throw std::invalid_argument("uniform: mu must be a whole number");
        return Uniform{static_cast<std::uint64_t>(param)};
    }
    if (name == "exp") return Exponential{param};
    if (name == "zipf") return Zipfian{param};
    if (name == "bexp") return BExp{param};
    throw std::invalid_argument("unknown distribution '" + name + "'");
}

std::vector<Family> preset_grid() {
    std::vector<Family> g;
    for (std::uint64_t mu : {10ULL, 1000ULL, 100000ULL, 10000000ULL, 1000000000ULL}) g.emplace_back(Uniform{mu});
    for (double l : {1.0, 2.0, 5.0, 7.0, 10.0}) g.emplace_back(Exponential{l});
    for (double s : {0.6, 0.8, 1.0, 1.2, 1.5}) g.emplace_back(Zipfian{s});
    for (double t : {10.0, 30.0, 50.0, 100.0, 300.0}) g.emplace_back(BExp{t});
    return g;
}

KeyMap::KeyMap(std::uint64_t seed, unsigned width) : mask_(width_mask(width)) {
    RngStream rng(seed, 0x6b65796d6170ULL);
    mul_ = (rng.next() | 1) & mask_;
    add_ = rng.next() & mask_;
}

ZipfSampler::ZipfSampler(std::uint64_t n, double s) : n_(n), s_(s) {
    if (n == 0) throw std::invalid_argument("zipf: empty support");
    if (!(s > 0)) throw std::invalid_argument("zipf: exponent must be > 0");
    h_integral_x1_ = h_integral(1.5) - 1.0;
    h_integral_n_ = h_integral(static_cast<double>(n) + 0.5);
    sv_ = 2.0 - h_integral_inverse(h_integral(2.5) - h(2.0));
}

double ZipfSampler::h(double x) const { return std::exp(-s_ * std::log(x)); }

double ZipfSampler::h_integral(double x) const {
    const double lx = std::log(x);
    return helper2((1.0 - s_) * lx) * lx;
}

double ZipfSampler::h_integral_inverse(double x) const {
    double t = x * (1.0 - s_);
    if (t < -1.0) t = -1.0;
    return std::exp(helper1(t) * x);
}

std::uint64_t ZipfSampler::operator()(RngStream& rng) const {
    for (;;) {
        const double u = h_integral_n_ + rng.uniform01() * (h_integral_x1_ - h_integral_n_);
        const double x = h_integral_inverse(u);
        double kd = std::floor(x + 0.5);
        if (kd < 1) kd = 1;
        if (kd > static_cast<double>(n_)) kd = static_cast<double>(n_);
        const auto k = static_cast<std::uint64_t>(kd);
        if (kd - x <= sv_ || u >= h_integral(kd + 0.5) - h(kd)) return k;
    }
}

std::vector<std::uint64_t> generate_keys(const DistSpec& spec) {
    spec.validate();
    const KeyMap map(spec.seed, spec.key_width);
    const std::uint64_t mask = width_mask(spec.key_width);
    return std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, Uniform>) {
                if (f.mu == 0 || (spec.key_width == 32 && f.mu == (std::uint64_t{1} << 32)))
                    return chunked(spec, 1, [&](RngStream& r) { return r.next() & mask; });
                return chunked(spec, 1, [&](RngStream& r) { return map(r.uniform(f.mu)); });
            } else if constexpr (std::is_same_v<F, Exponential>) {
                const double rate = 1e-5 * f.lambda;
                const double cap = static_cast<double>(mask);
                return chunked(spec, 2, [&](RngStream& r) {
                    const double x = std::round(-std::log1p(-r.uniform01()) / rate);
                    const std::uint64_t v = x >= cap ? mask : static_cast<std::uint64_t>(x);
                    return map(v);
                });
            } else if constexpr (std::is_same_v<F, Zipfian>) {
                const ZipfSampler z(std::max<std::uint64_t>(spec.n, 1), f.s);
                return chunked(spec, 3, [&](RngStream& r) { return map(z(r) - 1); });
            } else {
                // zero bit iff a 32-bit uniform falls below 2^32 / t
                const auto below = static_cast<std::uint64_t>(std::ldexp(1.0 / f.t, 32));
                const unsigned w = spec.key_width;
                return chunked(spec, 4, [&, below, w](RngStream& r) {
                    std::uint64_t key = 0;
                    for (unsigned b = 0; b < w; b += 2) {
                        const std::uint64_t x = r.next();
                        if ((x & 0xffffffffULL) >= below) key |= std::uint64_t{1} << b;
                        if (b + 1 < w && (x >> 32) >= below) key |= std::uint64_t{1} << (b + 1);
                    }
                    return key;
                });
            }
        },
        spec.family);
}

std::vector<Edge> generate_edges(std::uint64_t vertices, std::size_t edges, double degree_skew,
                                 std::uint64_t seed) {
    if (vertices == 0 && edges > 0) throw std::invalid_argument("generate_edges: no vertices");
    if (vertices > (std::uint64_t{1} << 32)) throw std::invalid_argument("generate_edges: more than 2^32 vertices");
    std::vector<Edge> out(edges);
    if (edges == 0) return out;
    const ZipfSampler z(vertices, degree_skew);
    const RngStream root(seed, 0x65646765ULL);
    const std::size_t chunks = (edges + chunk_records - 1) / chunk_records;
    parallel::run(0, [&] {
        parallel::parallel_for(0, chunks, 1, [&](std::size_t c) {
            RngStream rng = root.substream(c);
            const std::size_t lo = c * chunk_records;
            const std::size_t hi = std::min(edges, lo + chunk_records);
            for (std::size_t i = lo; i < hi; ++i) {
                const auto s = static_cast<std::uint32_t>(rng.uniform(vertices));
                const auto d = static_cast<std::uint32_t>(z(rng) - 1);
                out[i] = {s, d};
            }
        });
    });
    return out;
}

}  // namespace isrt::gen

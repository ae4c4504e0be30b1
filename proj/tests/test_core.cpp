#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "isrt/config.hpp"
#include "isrt/instrument.hpp"
#include "isrt/random.hpp"

using namespace isrt;

TEST_CASE("rng_stream replays identically") {
    RngStream a = rng_stream(0, 0), b = rng_stream(0, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("distinct stream ids give distinct first draws") {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t s = 0; s < 1000; ++s) firsts.insert(rng_stream(0, s).next());
    CHECK(firsts.size() == 1000);
}

TEST_CASE("different seeds give different sequences") {
    RngStream a = rng_stream(1, 0), b = rng_stream(0, 0);
    int equal = 0;
    for (int i = 0; i < 16; ++i) equal += a.next() == b.next();
    CHECK(equal == 0);
}

TEST_CASE("substreams are deterministic and distinct") {
    const RngStream root(42, 7);
    CHECK(root.substream(3).next() == root.substream(3).next());
    CHECK(root.substream(3).next() != root.substream(4).next());
}

TEST_CASE("uniform stays in range and is roughly flat") {
    RngStream r(5, 5);
    std::vector<int> hist(10, 0);
    for (int i = 0; i < 100000; ++i) {
        const auto x = r.uniform(10);
        REQUIRE(x < 10);
        ++hist[x];
    }
    // 5 sigma of Binomial(1e5, 0.1)
    for (int h : hist) CHECK(std::abs(h - 10000) < 5 * 95);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("gamma_for under the adaptive policy") {
    const SortConfig cfg;
    // floor(log2(1e9) / 3) = floor(29.9 / 3) = 9
    CHECK(gamma_for(1000000000, 32, cfg) == 9);
    CHECK(gamma_for(12345, 3, cfg) == 3);
    CHECK(gamma_for(1000, 32, cfg) == 8);                     // clamped up
    CHECK(gamma_for(std::size_t{1} << 45, 64, cfg) == 12);     // clamped down
    CHECK(gamma_for(1000000, 64, cfg) == gamma_for(1000000, 64, cfg));
    CHECK_THROWS_AS(gamma_for(100, 0, cfg), std::logic_error);
}

TEST_CASE("gamma_for under the theory policy") {
    const SortConfig th64 = SortConfig::theory(64);
    CHECK(gamma_for(std::size_t{1} << 40, 64, th64) == 8);
    CHECK(th64.base_case_threshold == (std::size_t{1} << 16));
    CHECK(gamma_for(100, 5, th64) == 5);
    const SortConfig th32 = SortConfig::theory(32);
    CHECK(gamma_for(1000000, 32, th32) == 6);
    CHECK_NOTHROW(th32.validate(32));
}

TEST_CASE("config validation") {
    SortConfig cfg;
    CHECK_NOTHROW(cfg.validate(32));
    cfg.gamma_max = 17;
    CHECK_THROWS_AS(cfg.validate(32), std::invalid_argument);
    cfg = SortConfig{};
    cfg.base_case_threshold = 100;  // below 2^12
    CHECK_THROWS_AS(cfg.validate(64), std::invalid_argument);
}

TEST_CASE("sample count rule") {
    const SortConfig cfg;
    CHECK(ceil_log2(1000000) == 20);
    CHECK(ceil_log2(1) == 1);
    CHECK(sample_count(1000000, 1000000, 8, cfg) == 5120);
    CHECK(sample_count(100, 1000000, 8, cfg) == 100);
}

TEST_CASE("instrument reports merge by sum and max") {
    InstrumentReport a, b;
    a.moves = 5;
    a.levels = 2;
    a.enter(0, 10);
    a.enter(1, 4);
    b.moves = 7;
    b.levels = 3;
    b.enter(1, 3);
    b.enter(2, 1);
    b.add_heavy(0, 6);
    a.merge(b);
    CHECK(a.moves == 12);
    CHECK(a.levels == 3);
    CHECK(a.level_mass == std::vector<std::uint64_t>{10, 7, 1});
    CHECK(a.heavy_at(0) == 6);
    CHECK(a.mass_at(9) == 0);
}

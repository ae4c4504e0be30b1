#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "isrt/dtmerge.hpp"
#include "isrt/parallel.hpp"
#include "isrt/random.hpp"

using namespace isrt;
using Rec = Record<std::uint32_t, std::uint64_t>;
using Run = HeavyRun<std::uint32_t>;

namespace {

struct Zone {
    std::vector<Rec> data;
    std::size_t light_len = 0;
    std::vector<Run> heavy;
};

// Light keys sorted and distinct from heavy keys; payload = position, so the
// oracle can check stability directly.
Zone make_zone(const std::vector<std::uint32_t>& light, const std::vector<std::pair<std::uint32_t, std::size_t>>& heavy) {
    Zone z;
    for (auto k : light) z.data.push_back({k, z.data.size()});
    z.light_len = light.size();
    for (auto [k, len] : heavy) {
        z.heavy.push_back({k, len});
        for (std::size_t i = 0; i < len; ++i) z.data.push_back({k, z.data.size()});
    }
    return z;
}

std::vector<Rec> oracle(const Zone& z) {
    std::vector<Rec> out;
    const auto mid = z.data.begin() + static_cast<std::ptrdiff_t>(z.light_len);
    // heavy keys are unique to their bucket, so the merged order by key is total
    // except within a bucket, where input order is kept
    std::merge(z.data.begin(), mid, mid, z.data.end(), std::back_inserter(out),
               [](const Rec& a, const Rec& b) { return a.key < b.key; });
    return out;
}

MergeStats run(Zone& z) {
    std::vector<Rec> scratch(std::min(z.light_len, z.data.size() - z.light_len));
    return dt_merge(std::span<Rec>(z.data), z.light_len, std::span<const Run>(z.heavy), std::span<Rec>(scratch));
}

void check_bounds(const Zone& before, const MergeStats& st) {
    const std::size_t light = before.light_len;
    const std::size_t heavy = before.data.size() - light;
    if (before.heavy.empty() || light == 0) {
        CHECK(st.total_writes() == 0);
        return;
    }
    CHECK(st.out_copies == std::min(light, heavy));
    CHECK(st.in_array_moves <= 2 * std::max(light, heavy));
    CHECK(st.copy_back == std::min(light, heavy));
}

}  // namespace

TEST_CASE("small example") {
    Zone z = make_zone({1, 3, 5}, {{4, 2}});
    const auto expect = oracle(z);
    run(z);
    std::vector<std::uint32_t> keys;
    for (auto& r : z.data) keys.push_back(r.key);
    CHECK(keys == std::vector<std::uint32_t>{1, 3, 4, 4, 5});
    CHECK(z.data == expect);
}

TEST_CASE("no heavy buckets leaves the zone untouched") {
    Zone z = make_zone({1, 2, 9}, {});
    const auto before = z.data;
    const auto st = run(z);
    CHECK(z.data == before);
    CHECK(st.total_writes() == 0);
}

TEST_CASE("empty light bucket leaves the zone untouched") {
    Zone z = make_zone({}, {{2, 3}, {7, 1}});
    const auto before = z.data;
    const auto st = run(z);
    CHECK(z.data == before);
    CHECK(st.total_writes() == 0);
}

TEST_CASE("merge layout") {
    const Zone z = make_zone({1, 3, 5, 8}, {{0, 2}, {4, 1}, {9, 3}});
    const auto lay = compute_merge_layout(std::span<const Rec>(z.data), z.light_len, std::span<const Run>(z.heavy));
    CHECK(lay.insert_points == std::vector<std::size_t>{0, 2, 4});
    CHECK(lay.dest_starts == std::vector<std::size_t>{0, 4, 7});
    CHECK(lay.heavy_total() == 6);
}

TEST_CASE("scratch smaller than the smaller side throws before writing") {
    Zone z = make_zone({1, 3, 5, 7}, {{2, 3}, {6, 3}});
    const auto before = z.data;
    std::vector<Rec> scratch(3);
    CHECK_THROWS_AS(dt_merge(std::span<Rec>(z.data), z.light_len, std::span<const Run>(z.heavy), std::span<Rec>(scratch)),
                    std::length_error);
    CHECK(z.data == before);
}

TEST_CASE("exhaustive small zones") {
    // light keys drawn from odd numbers, heavy keys from even numbers in [0, 10]
    std::size_t cases = 0;
    for (std::size_t light = 0; light <= 4; ++light)
        for (unsigned mask = 0; mask < (1u << 6); ++mask) {
            std::vector<std::uint32_t> heavy_keys;
            for (unsigned b = 0; b < 6; ++b)
                if (mask >> b & 1) heavy_keys.push_back(2 * b);
            if (heavy_keys.size() > 3) continue;
            std::size_t combos = 1;
            for (std::size_t i = 0; i < heavy_keys.size(); ++i) combos *= 3;
            // light multisets: non-decreasing sequences over {1,3,5,7,9}
            std::vector<std::vector<std::uint32_t>> lights{{}};
            for (std::size_t i = 0; i < light; ++i) {
                std::vector<std::vector<std::uint32_t>> next;
                for (const auto& l : lights)
                    for (std::uint32_t k = 1; k <= 9; k += 2)
                        if (l.empty() || l.back() <= k) {
                            auto c = l;
                            c.push_back(k);
                            next.push_back(c);
                        }
                lights = std::move(next);
            }
            for (const auto& l : lights)
                for (std::size_t c = 0; c < combos; ++c) {
                    std::vector<std::pair<std::uint32_t, std::size_t>> heavy;
                    std::size_t code = c;
                    for (auto k : heavy_keys) {
                        heavy.push_back({k, 1 + code % 3});
                        code /= 3;
                    }
                    Zone z = make_zone(l, heavy);
                    const Zone before = z;
                    const auto expect = oracle(z);
                    const auto st = run(z);
                    REQUIRE(z.data == expect);
                    check_bounds(before, st);
                    ++cases;
                }
        }
    CHECK(cases > 10000);
}

TEST_CASE("randomized zones against a reference merge") {
    RngStream rng(77, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t light = rng.uniform(trial < 250 ? 200 : 200000);
        const std::size_t m = rng.uniform(trial < 250 ? 12 : 60);
        std::set<std::uint32_t> hk;
        while (hk.size() < m) hk.insert(static_cast<std::uint32_t>(2 * rng.uniform(1000)));
        std::vector<std::uint32_t> lk(light);
        for (auto& k : lk) k = static_cast<std::uint32_t>(2 * rng.uniform(1000) + 1);
        std::sort(lk.begin(), lk.end());
        std::vector<std::pair<std::uint32_t, std::size_t>> heavy;
        for (auto k : hk) heavy.push_back({k, rng.uniform(trial < 250 ? 40 : 20000)});
        Zone z = make_zone(lk, heavy);
        const Zone before = z;
        const auto expect = oracle(z);
        MergeStats st;
        parallel::run(trial % 2 ? 4 : 1, [&] { st = run(z); });
        REQUIRE(z.data == expect);
        check_bounds(before, st);
    }
}

TEST_CASE("flips") {
    std::vector<int> a{0, 1, 2, 3, 4, 5, 6};
    CHECK(flip(a.data(), 1, 6) == 4);
    CHECK(a == std::vector<int>{0, 5, 4, 3, 2, 1, 6});

    // live block [3, 6) moves left to [1, 4); slots 1, 2 are dead
    std::vector<int> b{9, -1, -1, 30, 40, 50, 9};
    shift_left_by_flips(b.data(), 3, 3, 1);
    CHECK(std::vector<int>(b.begin() + 1, b.begin() + 4) == std::vector<int>{30, 40, 50});
    CHECK(b.front() == 9);
    CHECK(b.back() == 9);

    // live block [1, 4) moves right by 2; slots 4, 5 are dead
    std::vector<int> c{9, 10, 20, 30, -1, -1, 9};
    shift_right_by_flips(c.data(), 1, 3, 2);
    CHECK(std::vector<int>(c.begin() + 3, c.begin() + 6) == std::vector<int>{10, 20, 30});
    CHECK(c.front() == 9);
    CHECK(c.back() == 9);
}

TEST_CASE("shifts by flips preserve order for every length and offset") {
    for (std::size_t len = 1; len <= 12; ++len)
        for (std::size_t by = 1; by < len; ++by) {
            std::vector<int> l(len + by + 2, -1), r(len + by + 2, -1);
            for (std::size_t i = 0; i < len; ++i) l[1 + by + i] = r[1 + i] = static_cast<int>(100 + i);
            const auto wl = shift_left_by_flips(l.data(), 1 + by, len, 1);
            const auto wr = shift_right_by_flips(r.data(), 1, len, by);
            for (std::size_t i = 0; i < len; ++i) {
                REQUIRE(l[1 + i] == static_cast<int>(100 + i));
                REQUIRE(r[1 + by + i] == static_cast<int>(100 + i));
            }
            CHECK(wl <= 2 * len);
            CHECK(wr <= 2 * len);
        }
}

// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// when a hard criterion fails; the wall-clock criterion is reported only.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bench.hpp"
#include "isrt/dtmerge.hpp"
#include "isrt/dtsort.hpp"
#include "isrt/gen.hpp"
#include "isrt/parallel.hpp"
#include "isrt/sampler.hpp"

using namespace isrt;
using bench::reference_stable_sort;

namespace {

// Tolerances
constexpr double move_factor = 3.0;            // moves / n <= 3 * levels
constexpr unsigned max_levels_32 = 4;
constexpr unsigned max_levels_64 = 8;
constexpr double mass1_fraction = 0.05;         // level_mass[1] <= 0.05 n
constexpr double dup_move_ratio = 0.6;          // dt moves <= 0.6 plain moves
constexpr int dup_seeds = 100, dup_required = 99;
constexpr int detect_seeds = 1000;
constexpr int detect_hi_required = 999, detect_lo_allowed = 1;
constexpr std::size_t merge_random_instances = 10000;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<int> thread_set(std::initializer_list<int> ts) {
    std::set<int> s(ts);
    return {s.begin(), s.end()};
}

template <class K>
using Rec = Record<K, std::uint64_t>;

template <class K>
std::vector<Rec<K>> make_input(const gen::Family& f, std::size_t n, std::uint64_t seed) {
    return gen::generate<K>(gen::DistSpec{f, n, static_cast<unsigned>(sizeof(K) * 8), seed});
}

std::string dist_label(const gen::Family& f) {
    return gen::family_name(f) + "-" + bench::format_param(gen::family_param(f));
}

// 1. correctness and stability
template <class K>
bool correctness_width(const std::vector<int>& threads, std::size_t& cases, std::string& first_failure) {
    for (const auto& fam : gen::preset_grid())
        for (std::size_t n : {std::size_t{1000}, std::size_t{100000}, std::size_t{1000000}})
            for (std::uint64_t seed = 1; seed <= 10; ++seed) {
                const auto input = make_input<K>(fam, n, seed);
                const auto expect = reference_stable_sort(input);
                for (int t : threads)
                    for (bench::Algo a : {bench::Algo::DtSort, bench::Algo::Plain}) {
                        auto work = input;
                        SortConfig cfg;
                        cfg.seed = seed;
                        cfg.threads = t;
                        bench::run_algo(a, std::span(work), cfg);
                        ++cases;
                        if (work != expect) {
                            std::ostringstream os;
                            os << bench::algo_name(a) << " " << dist_label(fam) << " n=" << n
                               << " bits=" << sizeof(K) * 8 << " seed=" << seed << " threads=" << t;
                            first_failure = os.str();
                            return false;
                        }
                    }
            }
    return true;
}

Outcome crit_correctness() {
    const auto threads = thread_set({1, 4, parallel::max_workers()});
    std::size_t cases = 0;
    std::string fail;
    const bool ok = correctness_width<std::uint32_t>(threads, cases, fail) &&
                    correctness_width<std::uint64_t>(threads, cases, fail);
    std::ostringstream os;
    os << cases << " sorts identical to the reference";
    if (!ok) os << "; mismatch: " << fail;
    return {ok, os.str()};
}

// 2. determinism across thread counts
template <class K>
bool deterministic(const gen::Family& fam, std::size_t n, std::uint64_t seed, std::string& why) {
    const auto input = make_input<K>(fam, n, seed);
    std::vector<Rec<K>> first;
    InstrumentReport first_rep;
    for (int t : {1, 2, 8}) {
        auto work = input;
        SortConfig cfg;
        cfg.seed = seed;
        cfg.threads = t;
        cfg.parallel_grain = 1024;
        InstrumentReport rep;
        dt_sort(std::span(work), cfg, &rep);
        if (t == 1) {
            first = std::move(work);
            first_rep = rep;
            continue;
        }
        if (std::memcmp(work.data(), first.data(), work.size() * sizeof(Rec<K>)) != 0) {
            why = "output bytes differ";
        } else if (rep.moves != first_rep.moves || rep.levels != first_rep.levels ||
                   rep.level_mass != first_rep.level_mass) {
            why = "instrument counters differ";
        }
        if (!why.empty()) {
            why += " for " + dist_label(fam) + " bits=" + std::to_string(sizeof(K) * 8) + " threads=" + std::to_string(t);
            return false;
        }
    }
    return true;
}

Outcome crit_determinism() {
    std::size_t checked = 0;
    std::string why;
    for (const auto& fam : gen::preset_grid()) {
        if (!deterministic<std::uint32_t>(fam, 1000000, 21, why) || !deterministic<std::uint64_t>(fam, 500000, 22, why))
            return {false, why};
        checked += 2;
    }
    return {true, std::to_string(checked) + " inputs, threads {1,2,8}: identical bytes and counters"};
}

// 3. dovetail merge against a reference merge
struct MergeCase {
    std::vector<Rec<std::uint32_t>> zone;
    std::size_t light = 0;
    std::vector<HeavyRun<std::uint32_t>> heavy;
};

std::vector<Rec<std::uint32_t>> reference_merge(const MergeCase& c) {
    std::vector<Rec<std::uint32_t>> out;
    out.reserve(c.zone.size());
    std::size_t i = 0, j = c.light;
    while (i < c.light && j < c.zone.size()) out.push_back(c.zone[j].key < c.zone[i].key ? c.zone[j++] : c.zone[i++]);
    while (i < c.light) out.push_back(c.zone[i++]);
    while (j < c.zone.size()) out.push_back(c.zone[j++]);
    return out;
}

bool check_merge(MergeCase c, std::string& why) {
    const auto expect = reference_merge(c);
    const std::size_t light = c.light, heavy = c.zone.size() - c.light;
    std::vector<Rec<std::uint32_t>> scratch(std::min(light, heavy));
    const MergeStats st = dt_merge(std::span(c.zone), c.light, std::span<const HeavyRun<std::uint32_t>>(c.heavy),
                                   std::span(scratch));
    std::ostringstream os;
    if (c.zone != expect) os << "wrong merge";
    else if (st.out_copies > std::min(light, heavy)) os << "out copies " << st.out_copies;
    else if (st.in_array_moves > 2 * std::max(light, heavy)) os << "in-array writes " << st.in_array_moves;
    else return true;
    os << " (light=" << light << " heavy=" << heavy << " buckets=" << c.heavy.size() << ")";
    why = os.str();
    return false;
}

MergeCase build_case(const std::vector<std::uint32_t>& light_keys,
                     const std::vector<std::pair<std::uint32_t, std::size_t>>& heavy) {
    MergeCase c;
    for (auto k : light_keys) c.zone.push_back({k, c.zone.size()});
    c.light = light_keys.size();
    for (auto [k, len] : heavy) {
        c.heavy.push_back({k, len});
        for (std::size_t i = 0; i < len; ++i) c.zone.push_back({k, c.zone.size()});
    }
    return c;
}

Outcome crit_dtmerge() {
    std::string why;
    std::size_t exhaustive = 0;
    // light: non-decreasing over odd keys 1..7, up to 4 records; heavy: subsets
    // of even keys 0..6, up to 3 buckets of 1..3 records each
    std::vector<std::vector<std::uint32_t>> lights{{}};
    for (std::size_t len = 1, start = 0; len <= 4; ++len) {
        const std::size_t end = lights.size();
        for (std::size_t i = start; i < end; ++i)
            for (std::uint32_t k = 1; k <= 7; k += 2)
                if (lights[i].size() == len - 1 && (lights[i].empty() || lights[i].back() <= k)) {
                    auto l = lights[i];
                    l.push_back(k);
                    lights.push_back(l);
                }
        start = end;
    }
    for (const auto& l : lights)
        for (unsigned mask = 0; mask < 16; ++mask) {
            std::vector<std::uint32_t> hk;
            for (unsigned b = 0; b < 4; ++b)
                if (mask >> b & 1) hk.push_back(2 * b);
            if (hk.size() > 3) continue;
            std::size_t combos = 1;
            for (std::size_t i = 0; i < hk.size(); ++i) combos *= 3;
            for (std::size_t code = 0; code < combos; ++code) {
                std::vector<std::pair<std::uint32_t, std::size_t>> heavy;
                std::size_t c = code;
                for (auto k : hk) {
                    heavy.push_back({k, 1 + c % 3});
                    c /= 3;
                }
                if (!check_merge(build_case(l, heavy), why)) return {false, "exhaustive: " + why};
                ++exhaustive;
            }
        }

    RngStream rng(2024, 3);
    for (std::size_t trial = 0; trial < merge_random_instances; ++trial) {
        const bool big = trial % 100 == 0;
        const std::size_t light = rng.uniform(big ? 100000 : 300);
        const std::size_t m = 1 + rng.uniform(big ? 64 : 16);
        std::set<std::uint32_t> hk;
        while (hk.size() < m) hk.insert(static_cast<std::uint32_t>(2 * rng.uniform(4096)));
        std::vector<std::uint32_t> lk(light);
        for (auto& k : lk) k = static_cast<std::uint32_t>(2 * rng.uniform(4096) + 1);
        std::sort(lk.begin(), lk.end());
        std::vector<std::pair<std::uint32_t, std::size_t>> heavy;
        // mix of balanced and lopsided sides
        const std::size_t cap = trial % 3 == 0 ? 4 : (trial % 3 == 1 ? 60 : 600);
        for (auto k : hk) heavy.push_back({k, rng.uniform((big ? 1000 : 1) * cap)});
        if (!check_merge(build_case(lk, heavy), why)) return {false, "random: " + why};
    }
    return {true, std::to_string(exhaustive) + " exhaustive + " + std::to_string(merge_random_instances) +
                      " random zones match; copy and write bounds hold"};
}

// 4. heavy-key detection by sampling alone
Outcome crit_detection() {
    const std::size_t n = 1000000;
    const unsigned gamma = 8;
    const std::size_t hi_freq = 4 * n >> gamma;         // 15625
    const std::size_t lo_freq = n >> (gamma + 4);       // 244
    const std::uint32_t hi_key = 0x7000000u, lo_key = 0x7000001u;
    std::vector<Rec<std::uint32_t>> recs(n);
    RngStream g(99, 0);
    for (std::size_t i = 0; i < n; ++i) recs[i] = {static_cast<std::uint32_t>(0x10000000u + i), i};
    // scatter the two keys over distinct random positions
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[i] = i;
    for (std::size_t i = 0; i < hi_freq + lo_freq; ++i) std::swap(pos[i], pos[i + g.uniform(n - i)]);
    for (std::size_t i = 0; i < hi_freq; ++i) recs[pos[i]].key = hi_key;
    for (std::size_t i = 0; i < lo_freq; ++i) recs[pos[hi_freq + i]].key = lo_key;

    int hi_hits = 0, lo_hits = 0;
    for (int seed = 0; seed < detect_seeds; ++seed) {
        const auto s = draw_samples(std::span<const Rec<std::uint32_t>>(recs), n, gamma,
                                    RngStream(static_cast<std::uint64_t>(seed), 0));
        const auto h = detect_heavy(std::span<const std::uint32_t>(s), n);
        hi_hits += std::binary_search(h.begin(), h.end(), hi_key);
        lo_hits += std::binary_search(h.begin(), h.end(), lo_key);
    }
    std::ostringstream os;
    os << "freq " << hi_freq << " detected in " << hi_hits << "/" << detect_seeds << " seeds (need >= "
       << detect_hi_required << "); freq " << lo_freq << " in " << lo_hits << "/" << detect_seeds
       << " (allow <= " << detect_lo_allowed << ")";
    return {hi_hits >= detect_hi_required && lo_hits <= detect_lo_allowed, os.str()};
}

// 5. level and move bounds on full-range uniform keys
template <class K>
bool work_shape(std::size_t n, unsigned max_levels, std::ostream& os) {
    const auto input = make_input<K>(gen::Uniform{0}, n, 5);
    auto work = input;
    InstrumentReport rep;
    dt_sort(std::span(work), SortConfig{}, &rep);
    const bool correct = work == reference_stable_sort(input);
    const double per = static_cast<double>(rep.moves) / static_cast<double>(n);
    os << " " << sizeof(K) * 8 << "b/n=" << n << ":L=" << rep.levels << ",m/n=" << per;
    return correct && rep.levels <= max_levels && per <= move_factor * rep.levels;
}

Outcome crit_work() {
    std::ostringstream os;
    os.precision(3);
    bool ok = true;
    for (std::size_t n : {std::size_t{100000}, std::size_t{1000000}, std::size_t{10000000}}) {
        ok &= work_shape<std::uint32_t>(n, max_levels_32, os);
        ok &= work_shape<std::uint64_t>(n, max_levels_64, os);
    }
    return {ok, "levels <= 4 (32b) / 8 (64b), moves/n <= 3 levels;" + os.str()};
}

// 6. duplicates cut the recursion
Outcome crit_duplicates() {
    const std::size_t n = 1000000;
    const unsigned gamma = gamma_for(n, 32, SortConfig{});
    std::ostringstream os;
    bool ok = true;
    for (std::uint64_t mu : {std::uint64_t{10}, std::uint64_t{1} << gamma >> 3}) {
        int mass_ok = 0, ratio_ok = 0;
        double worst_ratio = 0;
        for (int seed = 1; seed <= dup_seeds; ++seed) {
            const auto input = make_input<std::uint32_t>(gen::Uniform{mu}, n, static_cast<std::uint64_t>(seed));
            SortConfig cfg;
            cfg.seed = static_cast<std::uint64_t>(seed);
            auto a = input, b = input;
            InstrumentReport dr, pr;
            dt_sort(std::span(a), cfg, &dr);
            plain_msd_sort(std::span(b), cfg, &pr);
            if (a != b) return {false, "dt_sort and plain MSD disagree"};
            mass_ok += static_cast<double>(dr.mass_at(1)) <= mass1_fraction * n;
            const double ratio = static_cast<double>(dr.moves) / static_cast<double>(pr.moves);
            worst_ratio = std::max(worst_ratio, ratio);
            ratio_ok += ratio <= dup_move_ratio;
        }
        os << " mu=" << mu << ": mass1 ok " << mass_ok << "/" << dup_seeds << ", moves ratio ok " << ratio_ok << "/"
           << dup_seeds << " (worst " << worst_ratio << ");";
        ok &= mass_ok >= dup_required && ratio_ok >= dup_required;
    }
    return {ok, os.str()};
}

// 7. wall clock, reported only
Outcome crit_ablation(bool& applicable) {
    const int workers = parallel::max_workers();
    applicable = workers >= 4;
    std::ostringstream os;
    os.precision(4);
    bool ok = true;
    for (const gen::Family fam : {gen::Family{gen::Uniform{10}}, gen::Family{gen::Zipfian{1.5}}}) {
        const auto input = make_input<std::uint32_t>(fam, 10000000, 7);
        double med[2];
        int i = 0;
        for (bench::Algo a : {bench::Algo::DtSort, bench::Algo::Plain}) {
            std::vector<double> times;
            for (int r = 0; r < 4; ++r) {
                auto work = input;
                SortConfig cfg;
                cfg.seed = 7;
                const auto t0 = std::chrono::steady_clock::now();
                bench::run_algo(a, std::span(work), cfg);
                times.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
            }
            med[i++] = bench::median_of_last(times);
        }
        os << " " << dist_label(fam) << ": dt " << med[0] << " ms vs plain " << med[1] << " ms;";
        ok &= med[0] <= med[1];
    }
    os << " workers=" << workers;
    if (!applicable) os << " (needs >= 4 cores; not gating)";
    return {ok, os.str()};
}

// 8. overflow bucket with an unsampled adversarial key
std::set<std::size_t> root_sample_indices(std::size_t n, const SortConfig& cfg) {
    const unsigned gamma = gamma_for(n, 32, cfg);
    const std::size_t count = sample_count(n, n, gamma, cfg);
    const RngStream root = node_stream(cfg.seed, 0, 0);
    std::set<std::size_t> idx;
    for (std::size_t c = 0; c * samples_per_stream < count; ++c) {
        RngStream local = root.substream(c);
        const std::size_t hi = std::min(count, (c + 1) * samples_per_stream);
        for (std::size_t i = c * samples_per_stream; i < hi; ++i) idx.insert(local.uniform(n));
    }
    return idx;
}

Outcome crit_overflow() {
    const std::size_t n = 10000000;
    auto input = make_input<std::uint32_t>(gen::Uniform{0}, n, 8);
    for (auto& r : input) r.key &= 0xffffu;
    std::ostringstream os;
    int runs = 0;
    for (const std::size_t at : {n / 2, std::size_t{0}, n - 1}) {
        SortConfig cfg;
        std::uint64_t seed = 0;
        for (;; ++seed) {
            cfg.seed = seed;
            if (!root_sample_indices(n, cfg).count(at)) break;
        }
        auto adv = input;
        adv[at].key = 0xffffffffu;
        const auto expect = reference_stable_sort(adv);
        InstrumentReport rep;
        dt_sort(std::span(adv), cfg, &rep);
        // 16 active bits after the skip: two 8-bit digits at most
        const unsigned bound = (32 - rep.root_skip_bits + 7) / 8;
        const bool ok = adv == expect && adv.back().key == 0xffffffffu && rep.root_skip_bits == 16 &&
                        rep.levels >= 1 && rep.levels <= bound;
        os << " pos=" << at << " seed=" << seed << " skip=" << rep.root_skip_bits << " levels=" << rep.levels
           << (ok ? "" : " FAILED") << ";";
        if (!ok) return {false, os.str()};
        ++runs;
    }
    return {true, std::to_string(runs) + " adversarial inputs exact;" + os.str()};
}

// 9. transpose of skewed edge lists
Outcome crit_transpose() {
    std::ostringstream os;
    bool ok = true;
    for (double skew : {0.8, 1.0, 1.5})
        for (int t : thread_set({1, 4})) {
            SortConfig cfg;
            cfg.seed = 9;
            cfg.threads = t;
            const auto r = bench::transpose_demo(100000, 1000000, skew, 9, cfg);
            ok &= r.ok();
            os << " skew=" << skew << "/t=" << t << ":" << (r.ok() ? "ok" : "FAIL") << "(maxdeg " << r.max_in_degree
               << ")";
        }
    return {ok, "1e6 edges, 1e5 vertices;" + os.str()};
}

}  // namespace

int main() {
    int hard_failures = 0;
    auto report = [&](int id, const char* name, bool hard, const std::function<Outcome()>& f) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %d [%s]%s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name,
                    hard ? "" : " (soft)", o.detail.c_str(), s);
        std::fflush(stdout);
        if (hard && !o.pass) ++hard_failures;
    };

    report(1, "correctness and stability", true, crit_correctness);
    report(2, "determinism", true, crit_determinism);
    report(3, "dovetail merge oracle and bounds", true, crit_dtmerge);
    report(4, "heavy key detection", true, crit_detection);
    report(5, "work bound shape", true, crit_work);
    report(6, "duplicate advantage", true, crit_duplicates);
    bool applicable = false;
    report(7, "ablation direction", false, [&] { return crit_ablation(applicable); });
    report(8, "overflow bucket", true, crit_overflow);
    report(9, "graph transpose", true, crit_transpose);

    std::printf("%d hard criteria failed\n", hard_failures);
    return hard_failures == 0 ? 0 : 1;
}

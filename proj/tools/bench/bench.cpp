#include "bench.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace isrt::bench {

namespace {

using Clock = std::chrono::steady_clock;

template <class K>
bool bench_one_width(const std::vector<gen::Family>& grid, const std::vector<Algo>& algos, std::size_t n,
                     int threads, std::uint64_t seed, unsigned repeat, std::vector<RunResult>& rows,
                     std::ostream& diag) {
    using R = Record<K, std::uint64_t>;
    bool all_ok = true;
    SortConfig cfg;
    cfg.seed = seed;
    cfg.threads = threads;
    for (const auto& fam : grid) {
        const gen::DistSpec spec{fam, n, static_cast<unsigned>(sizeof(K) * 8), seed};
        const auto input = gen::generate<K>(spec);
        const auto oracle = reference_stable_sort(input);
        for (Algo algo : algos) {
            RunResult row;
            row.algo = algo_name(algo);
            row.dist = gen::family_name(fam);
            row.param = gen::family_param(fam);
            row.n = n;
            row.key_width = spec.key_width;
            row.threads = threads;
            row.seed = seed;

            std::vector<R> work(input);
            InstrumentReport rep;
            run_algo(algo, std::span<R>(work), cfg, algo == Algo::Baseline ? nullptr : &rep);
            const VerifyResult v = verify_output(input, work);
            if (!v.ok() || work != oracle) {
                diag << "verification failed: algo=" << row.algo << " dist=" << row.dist
                     << " param=" << format_param(row.param) << " n=" << n << " bits=" << spec.key_width << "\n";
                all_ok = false;
                continue;
            }
            row.verified = true;
            if (algo != Algo::Baseline) row.instrument = rep;

            std::vector<double> times;
            for (unsigned r = 0; r < repeat; ++r) {
                work = input;
                const auto t0 = Clock::now();
                run_algo(algo, std::span<R>(work), cfg);
                const auto t1 = Clock::now();
                times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
                if (work != oracle) {
                    diag << "timed run produced a different output: algo=" << row.algo << "\n";
                    row.verified = false;
                }
            }
            if (!row.verified) {
                all_ok = false;
                continue;
            }
            row.wall_time_ms = median_of_last(times);
            rows.push_back(std::move(row));
        }
    }
    return all_ok;
}

template <class K>
InstrumentReport instrumented_run(const gen::DistSpec& spec, const SortConfig& cfg, bool& correct) {
    using R = Record<K, std::uint64_t>;
    auto data = gen::generate<K>(spec);
    const auto oracle = reference_stable_sort(data);
    InstrumentReport rep;
    dt_sort(std::span<R>(data), cfg, &rep);
    correct = data == oracle;
    return rep;
}

}  // namespace

std::string algo_name(Algo a) {
    switch (a) {
        case Algo::DtSort: return "dtsort";
        case Algo::Plain: return "plain";
        case Algo::Baseline: return "baseline";
    }
    return "?";
}

Algo parse_algo(const std::string& s) {
    if (s == "dtsort") return Algo::DtSort;
    if (s == "plain") return Algo::Plain;
    if (s == "baseline") return Algo::Baseline;
    throw std::invalid_argument("unknown algorithm '" + s + "' (expected dtsort, plain or baseline)");
}

double median_of_last(std::vector<double> runs) {
    if (runs.empty()) return 0;
    if (runs.size() > 1) runs.erase(runs.begin());
    std::sort(runs.begin(), runs.end());
    const std::size_t m = runs.size();
    return m % 2 ? runs[m / 2] : 0.5 * (runs[m / 2 - 1] + runs[m / 2]);
}

const std::string& csv_header() {
    static const std::string h = "algo,dist,param,n,bits,threads,seed,time_ms,verified,moves,levels,merge_out_copies";
    return h;
}

std::string format_param(double p) {
    char buf[64];
    if (p == std::floor(p) && std::abs(p) < 1e18) std::snprintf(buf, sizeof buf, "%.0f", p);
    else std::snprintf(buf, sizeof buf, "%g", p);
    return buf;
}

std::string csv_row(const RunResult& r) {
    if (!r.verified) throw std::logic_error("csv_row: refusing to emit an unverified timing row");
    std::ostringstream os;
    os << r.algo << ',' << r.dist << ',' << format_param(r.param) << ',' << r.n << ',' << r.key_width << ','
       << r.threads << ',' << r.seed << ',' << std::fixed << std::setprecision(3) << r.wall_time_ms << ",true,";
    if (r.instrument) os << r.instrument->moves << ',' << r.instrument->levels << ',' << r.instrument->merge_out_copies;
    else os << ",,";
    return os.str();
}

bool run_bench_grid(const std::vector<gen::Family>& grid, const std::vector<Algo>& algos, std::size_t n,
                    unsigned key_width, int threads, std::uint64_t seed, unsigned repeat,
                    std::vector<RunResult>& rows, std::ostream& diag) {
    if (key_width == 32) return bench_one_width<std::uint32_t>(grid, algos, n, threads, seed, repeat, rows, diag);
    if (key_width == 64) return bench_one_width<std::uint64_t>(grid, algos, n, threads, seed, repeat, rows, diag);
    throw std::invalid_argument("key width must be 32 or 64");
}

std::vector<TheoryRow> theory_check(const std::vector<std::size_t>& sizes, unsigned key_width, std::uint64_t seed,
                                    int threads) {
    SortConfig cfg;
    cfg.seed = seed;
    cfg.threads = threads;
    const unsigned gmin = gamma_lower_bound(cfg, key_width);
    std::vector<TheoryRow> rows;

    auto run = [&](const gen::Family& fam, std::size_t n) {
        const gen::DistSpec spec{fam, n, key_width, seed};
        bool correct = false;
        const InstrumentReport rep = key_width == 32 ? instrumented_run<std::uint32_t>(spec, cfg, correct)
                                                     : instrumented_run<std::uint64_t>(spec, cfg, correct);
        TheoryRow row;
        row.dist = gen::family_name(fam) + "-" + (std::get_if<gen::Uniform>(&fam)->mu == 0
                                                     ? std::string("full")
                                                     : format_param(gen::family_param(fam)));
        row.n = n;
        row.key_width = key_width;
        row.levels = rep.levels;
        const unsigned active = key_width - rep.root_skip_bits;
        row.level_bound = (active + gmin - 1) / gmin;
        row.moves_per_record = n ? static_cast<double>(rep.moves) / static_cast<double>(n) : 0;
        row.mass1_fraction = n ? static_cast<double>(rep.mass_at(1)) / static_cast<double>(n) : 0;
        row.pass = correct;
        if (!correct) row.note = "wrong output";
        return std::pair{row, rep};
    };

    for (std::size_t n : sizes) {
        auto [row, rep] = run(gen::Uniform{0}, n);
        const bool below_theta = n < cfg.base_case_threshold;
        if (below_theta) {
            if (rep.levels != 0) {
                row.pass = false;
                row.note = "distributed below the base case threshold";
            }
        } else {
            if (rep.levels > row.level_bound) {
                row.pass = false;
                row.note = "too many levels";
            }
            if (rep.moves > 3ull * n * rep.levels) {
                row.pass = false;
                row.note = "moves exceed 3 n levels";
            }
        }
        rows.push_back(row);
    }
    for (std::size_t n : sizes) {
        if (n < cfg.base_case_threshold) continue;
        auto [row, rep] = run(gen::Uniform{10}, n);
        if (row.mass1_fraction > 0.05) {
            row.pass = false;
            row.note = "light mass at depth 1 above 5%";
        }
        rows.push_back(row);
    }
    return rows;
}

void print_theory_table(std::ostream& os, const std::vector<TheoryRow>& rows) {
    os << std::left << std::setw(14) << "dist" << std::setw(10) << "n" << std::setw(6) << "bits" << std::setw(8)
       << "levels" << std::setw(7) << "bound" << std::setw(12) << "moves/n" << std::setw(10) << "mass1/n"
       << "result\n";
    for (const auto& r : rows) {
        os << std::left << std::setw(14) << r.dist << std::setw(10) << r.n << std::setw(6) << r.key_width
           << std::setw(8) << r.levels << std::setw(7) << r.level_bound << std::setw(12) << std::fixed
           << std::setprecision(3) << r.moves_per_record << std::setw(10) << r.mass1_fraction
           << (r.pass ? "ok" : "FAIL");
        if (!r.note.empty()) os << " (" << r.note << ")";
        os << "\n";
    }
}

TransposeResult transpose_demo(std::uint64_t vertices, std::size_t edges, double skew, std::uint64_t seed,
                               const SortConfig& cfg) {
    using R = Record<std::uint32_t, std::uint32_t>;
    const auto el = gen::generate_edges(vertices, edges, skew, seed);
    std::vector<R> recs(el.size());
    for (std::size_t i = 0; i < el.size(); ++i) recs[i] = {el[i].dst, el[i].src};
    const auto oracle = reference_stable_sort(recs);
    std::vector<R> sorted(recs);
    dt_sort(std::span<R>(sorted), cfg);

    TransposeResult res;
    res.vertices = vertices;
    res.edges = edges;
    res.matches_oracle = sorted == oracle;

    // CSR of the transpose, then replay the input to check per-vertex order
    std::vector<std::size_t> offsets(vertices + 1, 0);
    for (const auto& r : sorted) ++offsets[r.key + 1];
    for (std::size_t v = 0; v < vertices; ++v) {
        res.max_in_degree = std::max(res.max_in_degree, offsets[v + 1]);
        offsets[v + 1] += offsets[v];
    }
    bool ok = offsets[vertices] == sorted.size();
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t i = 0; ok && i < el.size(); ++i) {
        const std::size_t at = cursor[el[i].dst]++;
        if (at >= sorted.size() || sorted[at].key != el[i].dst || sorted[at].payload != el[i].src) ok = false;
    }
    res.csr_ok = ok;
    return res;
}

}  // namespace isrt::bench

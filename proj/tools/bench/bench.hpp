#ifndef ISRT_BENCH_BENCH_HPP
#define ISRT_BENCH_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "isrt/dataset.hpp"
#include "isrt/dtsort.hpp"
#include "isrt/gen.hpp"
#include "isrt/instrument.hpp"
#include "reference_sort.hpp"

namespace isrt::bench {

enum class Algo { DtSort, Plain, Baseline };

std::string algo_name(Algo a);
/// "dtsort", "plain" or "baseline"; throws std::invalid_argument otherwise.
Algo parse_algo(const std::string& s);

/// Runs one sorter in place. Baseline is std::stable_sort and leaves the
/// report untouched.
template <SortableRecord R>
void run_algo(Algo algo, std::span<R> data, const SortConfig& cfg, InstrumentReport* rep = nullptr) {
    switch (algo) {
        case Algo::DtSort: dt_sort(data, cfg, rep); break;
        case Algo::Plain: plain_msd_sort(data, cfg, rep); break;
        case Algo::Baseline:
            std::stable_sort(data.begin(), data.end(), [](const R& x, const R& y) { return x.key < y.key; });
            break;
    }
}

struct VerifyResult {
    bool sorted = false;
    /// Equal keys keep ascending payloads; payloads are original indices.
    bool stable = false;
    bool permutation = false;
    bool matches_oracle = false;
    bool ok() const { return sorted && stable && permutation && matches_oracle; }
};

/// Checks `output` as the sort of `input`. When `index_payloads` is false the
/// stability check is skipped (reported as passing).
template <SortableRecord R>
VerifyResult verify_output(const std::vector<R>& input, const std::vector<R>& output, bool index_payloads = true) {
    VerifyResult v;
    v.sorted = std::is_sorted(output.begin(), output.end(), [](const R& x, const R& y) { return x.key < y.key; });
    v.stable = true;
    if constexpr (requires(const R& x) { x.payload < x.payload; }) {
        if (index_payloads)
            for (std::size_t i = 1; i < output.size(); ++i)
                if (output[i - 1].key == output[i].key && !(output[i - 1].payload < output[i].payload)) {
                    v.stable = false;
                    break;
                }
    }
    if (input.size() == output.size()) {
        auto lex = [](const R& x, const R& y) {
            if (x.key != y.key) return x.key < y.key;
            if constexpr (requires { x.payload < y.payload; }) return x.payload < y.payload;
            return false;
        };
        std::vector<R> a(input), b(output);
        std::sort(a.begin(), a.end(), lex);
        std::sort(b.begin(), b.end(), lex);
        v.permutation = a == b;
        v.matches_oracle = reference_stable_sort(input) == output;
    }
    return v;
}

/// Median of the last runs.size() - 1 timings (all of them if only one).
double median_of_last(std::vector<double> runs);

struct RunResult {
    std::string algo;
    std::string dist;
    double param = 0;
    std::size_t n = 0;
    unsigned key_width = 0;
    int threads = 0;
    std::uint64_t seed = 0;
    double wall_time_ms = 0;
    bool verified = false;
    std::optional<InstrumentReport> instrument;
};

/// CSV header, without trailing newline.
const std::string& csv_header();
/// One CSV row; throws std::logic_error for unverified results.
std::string csv_row(const RunResult& r);
/// Canonical parameter text, e.g. "10", "1000000000", "0.6".
std::string format_param(double p);

/// Generate, instrument-verify, then time `repeat` runs of every algorithm
/// on every grid distribution. Rows that fail verification are reported to
/// `diag` and left out; returns false if any did.
bool run_bench_grid(const std::vector<gen::Family>& grid, const std::vector<Algo>& algos, std::size_t n,
                    unsigned key_width, int threads, std::uint64_t seed, unsigned repeat,
                    std::vector<RunResult>& rows, std::ostream& diag);

struct TheoryRow {
    std::string dist;
    std::size_t n = 0;
    unsigned key_width = 0;
    unsigned levels = 0;
    unsigned level_bound = 0;
    double moves_per_record = 0;
    double mass1_fraction = 0;
    bool pass = false;
    std::string note;
};

/// Instrumented runs over `sizes`: full-range uniform keys must satisfy
/// moves <= 3 n levels and levels <= ceil(active bits / gamma_min); uniform-10
/// must leave at most 5% of the records for depth 1; inputs below the base
/// case threshold must not distribute.
std::vector<TheoryRow> theory_check(const std::vector<std::size_t>& sizes, unsigned key_width, std::uint64_t seed,
                                    int threads);
void print_theory_table(std::ostream& os, const std::vector<TheoryRow>& rows);

struct TransposeResult {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    bool matches_oracle = false;
    bool csr_ok = false;
    std::size_t max_in_degree = 0;
    bool ok() const { return matches_oracle && csr_ok; }
};

/// Sorts Zipf-skewed edges by destination with dt_sort, compares with the
/// oracle and checks that the derived CSR keeps each vertex's in-edges in
/// input order.
TransposeResult transpose_demo(std::uint64_t vertices, std::size_t edges, double skew, std::uint64_t seed,
                               const SortConfig& cfg);

}  // namespace isrt::bench

#endif  // ISRT_BENCH_BENCH_HPP

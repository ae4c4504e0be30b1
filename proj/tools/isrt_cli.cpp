// isrt: dataset generation, sorting, verification and benchmarking.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>

#include "bench.hpp"
#include "isrt/dataset.hpp"
#include "isrt/gen.hpp"

using namespace isrt;

namespace {

int threads_from_env_or(int flag_value, bool flag_given) {
    if (flag_given) return flag_value;
    if (const char* env = std::getenv("ISRT_THREADS")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("ISRT_THREADS is not an integer: ") + env);
        }
    }
    return 0;
}

// Calls f(std::type_identity<Record<K, P>>{}) for the dataset's widths.
template <class F>
int with_record_type(const Dataset& d, F&& f) {
    auto by_payload = [&]<class K>(std::type_identity<K>) {
        switch (d.payload_width) {
            case 0: return f(std::type_identity<Record<K, NoPayload>>{});
            case 4: return f(std::type_identity<Record<K, std::uint32_t>>{});
            default: return f(std::type_identity<Record<K, std::uint64_t>>{});
        }
    };
    if (d.key_width == 32) return by_payload(std::type_identity<std::uint32_t>{});
    return by_payload(std::type_identity<std::uint64_t>{});
}

void print_verify(std::ostream& os, const bench::VerifyResult& v, bool index_payloads) {
    os << "sorted: " << (v.sorted ? "ok" : "FAIL") << "\n"
       << "stable: " << (index_payloads ? (v.stable ? "ok" : "FAIL") : "skipped (no payload)") << "\n"
       << "permutation: " << (v.permutation ? "ok" : "FAIL") << "\n"
       << "oracle: " << (v.matches_oracle ? "ok" : "FAIL") << "\n";
}

struct SortArgs {
    std::string algo = "dtsort";
    std::string in;
    std::string out;
    int threads = 0;
    std::uint64_t seed = 0;
    bool verify = false;
    bool instrument = false;
};

int do_sort(const SortArgs& a, bool threads_given, bool force_verify) {
    const Dataset d = read_dataset_file(a.in);
    const bench::Algo algo = bench::parse_algo(a.algo);
    SortConfig cfg;
    cfg.seed = a.seed;
    cfg.threads = threads_from_env_or(a.threads, threads_given);
    const bool verify = a.verify || force_verify;
    return with_record_type(d, [&]<class R>(std::type_identity<R>) {
        const auto input = to_records<key_of_t<R>, typename R::payload_type>(d);
        auto work = input;
        InstrumentReport rep;
        const bool want_rep = a.instrument && algo != bench::Algo::Baseline;
        bench::run_algo(algo, std::span<R>(work), cfg, want_rep ? &rep : nullptr);
        if (want_rep) std::cout << "instrument: " << rep << "\n";
        int rc = 0;
        if (verify) {
            const bool idx = d.payload_width > 0;
            const auto v = bench::verify_output(input, work, idx);
            print_verify(std::cout, v, idx);
            if (!v.ok()) {
                std::cerr << "verification failed\n";
                rc = 1;
            }
        }
        if (!a.out.empty()) write_dataset_file(a.out, from_records(work));
        return rc;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isrt: parallel stable integer sorting toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset file");
    std::string dist, gen_out;
    double param = 0;
    std::size_t gen_n = 0;
    unsigned bits = 32;
    std::uint64_t gen_seed = 0;
    unsigned payload = 8;
    gen_cmd->add_option("--dist", dist, "uniform|exp|zipf|bexp")->required()
        ->check(CLI::IsMember({"uniform", "exp", "zipf", "bexp"}));
    gen_cmd->add_option("--param", param, "mu (uniform, 0 = full range), lambda, s or t")->required();
    gen_cmd->add_option("--n", gen_n, "record count")->required();
    gen_cmd->add_option("--bits", bits, "key width")->check(CLI::IsMember({32u, 64u}));
    gen_cmd->add_option("--seed", gen_seed, "generator seed");
    gen_cmd->add_option("--payload", payload, "payload bytes (original index)")->check(CLI::IsMember({0u, 4u, 8u}));
    gen_cmd->add_option("--out", gen_out, "output path")->required();

    // sort
    auto* sort_cmd = app.add_subcommand("sort", "Sort a dataset file");
    SortArgs sa;
    sort_cmd->add_option("--algo", sa.algo, "dtsort|plain|baseline")->check(CLI::IsMember({"dtsort", "plain", "baseline"}));
    sort_cmd->add_option("--in", sa.in, "input dataset")->required();
    auto* sort_threads = sort_cmd->add_option("--threads", sa.threads, "worker threads");
    sort_cmd->add_option("--seed", sa.seed, "sampling seed");
    sort_cmd->add_flag("--verify", sa.verify, "check the result against the reference oracle");
    sort_cmd->add_flag("--instrument", sa.instrument, "print work counters");
    sort_cmd->add_option("--out", sa.out, "write the sorted dataset");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Sort a dataset and run sorted/stable/permutation/oracle checks");
    SortArgs va;
    verify_cmd->add_option("--in", va.in, "input dataset")->required();
    verify_cmd->add_option("--algo", va.algo, "dtsort|plain|baseline")->check(CLI::IsMember({"dtsort", "plain", "baseline"}));
    auto* verify_threads = verify_cmd->add_option("--threads", va.threads, "worker threads");
    verify_cmd->add_option("--seed", va.seed, "sampling seed");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Time all algorithms over the distribution grid, emit CSV");
    std::string preset = "paper32", csv_path;
    unsigned repeat = 6;
    std::size_t bench_n = 1000000;
    int bench_threads = 0;
    std::uint64_t bench_seed = 1;
    bench_cmd->add_option("--preset", preset, "paper32|paper64")->check(CLI::IsMember({"paper32", "paper64"}));
    bench_cmd->add_option("--repeat", repeat, "timed runs per row; the first is discarded")->check(CLI::Range(1u, 1000u));
    bench_cmd->add_option("--csv", csv_path, "CSV output path (default stdout)");
    bench_cmd->add_option("--n", bench_n, "records per dataset");
    auto* bench_threads_opt = bench_cmd->add_option("--threads", bench_threads, "worker threads");
    bench_cmd->add_option("--seed", bench_seed, "generator and sampling seed");

    // transpose-demo
    auto* tr_cmd = app.add_subcommand("transpose-demo", "Stable sort of a skewed edge list by destination");
    std::uint64_t vertices = 100000;
    std::size_t edges = 1000000;
    double skew = 1.0;
    std::uint64_t tr_seed = 1;
    int tr_threads = 0;
    tr_cmd->add_option("--vertices", vertices, "vertex count");
    tr_cmd->add_option("--edges", edges, "edge count");
    tr_cmd->add_option("--skew", skew, "Zipf exponent of destination degrees");
    tr_cmd->add_option("--seed", tr_seed, "seed");
    auto* tr_threads_opt = tr_cmd->add_option("--threads", tr_threads, "worker threads");

    // theory
    auto* th_cmd = app.add_subcommand("theory", "Instrumented work/level checks over growing n");
    unsigned th_bits = 32;
    std::size_t th_max_n = 10000000;
    std::uint64_t th_seed = 1;
    int th_threads = 0;
    th_cmd->add_option("--bits", th_bits, "key width")->check(CLI::IsMember({32u, 64u}));
    th_cmd->add_option("--max-n", th_max_n, "largest n of the 10^3..10^7 grid to run");
    th_cmd->add_option("--seed", th_seed, "seed");
    auto* th_threads_opt = th_cmd->add_option("--threads", th_threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) {
            gen::DistSpec spec{gen::make_family(dist, param), gen_n, bits, gen_seed};
            const auto keys = gen::generate_keys(spec);
            Dataset d;
            d.key_width = bits;
            d.payload_width = payload;
            d.keys = keys;
            d.payloads.resize(keys.size());
            for (std::size_t i = 0; i < keys.size(); ++i) d.payloads[i] = i;
            write_dataset_file(gen_out, d);
            return 0;
        }
        if (*sort_cmd) return do_sort(sa, sort_threads->count() > 0, false);
        if (*verify_cmd) return do_sort(va, verify_threads->count() > 0, true);
        if (*bench_cmd) {
            const unsigned w = preset == "paper64" ? 64 : 32;
            const int t = threads_from_env_or(bench_threads, bench_threads_opt->count() > 0);
            std::vector<bench::RunResult> rows;
            const bool ok = bench::run_bench_grid(gen::preset_grid(),
                                                  {bench::Algo::DtSort, bench::Algo::Plain, bench::Algo::Baseline},
                                                  bench_n, w, t, bench_seed, repeat, rows, std::cerr);
            std::ofstream file;
            if (!csv_path.empty()) {
                file.open(csv_path, std::ios::trunc);
                if (!file) throw std::runtime_error("cannot open '" + csv_path + "'");
            }
            std::ostream& os = csv_path.empty() ? std::cout : file;
            os << bench::csv_header() << "\n";
            for (const auto& r : rows) os << bench::csv_row(r) << "\n";
            return ok ? 0 : 1;
        }
        if (*tr_cmd) {
            SortConfig cfg;
            cfg.seed = tr_seed;
            cfg.threads = threads_from_env_or(tr_threads, tr_threads_opt->count() > 0);
            const auto r = bench::transpose_demo(vertices, edges, skew, tr_seed, cfg);
            std::cout << "vertices=" << r.vertices << " edges=" << r.edges << " max_in_degree=" << r.max_in_degree
                      << " oracle=" << (r.matches_oracle ? "ok" : "FAIL") << " csr=" << (r.csr_ok ? "ok" : "FAIL")
                      << "\n";
            return r.ok() ? 0 : 1;
        }
        if (*th_cmd) {
            std::vector<std::size_t> sizes;
            for (std::size_t n : {std::size_t{1000}, std::size_t{100000}, std::size_t{1000000}, std::size_t{10000000}})
                if (n <= th_max_n) sizes.push_back(n);
            const int t = threads_from_env_or(th_threads, th_threads_opt->count() > 0);
            const auto rows = bench::theory_check(sizes, th_bits, th_seed, t);
            bench::print_theory_table(std::cout, rows);
            for (const auto& r : rows)
                if (!r.pass) return 1;
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

// boss: command-line front end for subject-line fingerprinting.
//
//   boss hash <text>
//   boss cmp <hash|text> <hash|text>
//   boss scan [input|-] [--out-dir DIR]
//   boss bench [--n N] [--seed S]
//   boss serve [--listen HOST:PORT]
//
// Global flags --t-cos, --t-euc and --capacity override the BOSS_T_COS,
// BOSS_T_EUC and BOSS_CAPACITY environment variables.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "boss/pipeline.hpp"
#include "boss/proximity.hpp"
#include "boss/service.hpp"
#include "boss/syllabifier.hpp"

namespace {

constexpr int kExitUsage = 2;

// A 189-char printable argument is a hash; an all-digit argument of any
// other length is a truncated hash; anything else is subject text.
boss::CountVector resolve_operand(const std::string& arg) {
    if (boss::looks_like_hash(arg)) return boss::parse_hash(arg);
    const bool digits = !arg.empty() && arg.find_first_not_of("0123456789") == std::string::npos;
    if (digits) return boss::parse_hash(arg);  // throws MalformedHash
    return boss::build_hash(arg);
}

int run_cmp(const std::string& a, const std::string& b, const boss::ProximityParams& params) {
    boss::CountVector va;
    boss::CountVector vb;
    try {
        va = resolve_operand(a);
        vb = resolve_operand(b);
    } catch (const boss::MalformedHash& e) {
        std::cerr << "boss cmp: malformed hash: " << e.what() << '\n';
        return kExitUsage;
    }
    const auto cos = boss::cosine(va, vb);
    const bool flag = boss::proximity_flag(va, vb, params);
    std::cout << "cos=" << (cos ? boss::format_fixed6(*cos) : "-")
              << " euc=" << boss::format_fixed6(boss::euclidean(va, vb))
              << " flag=" << (flag ? "true" : "false") << '\n';
    return flag ? 0 : 1;
}

int run_scan(const std::string& input, const std::string& out_dir, const boss::EngineConfig& config) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (!input.empty() && input != "-") {
        file.open(input, std::ios::binary);
        if (!file) {
            std::cerr << "boss scan: cannot open " << input << '\n';
            return kExitUsage;
        }
        in = &file;
    }
    boss::HashStore store(config.store_config());
    boss::Perceptron model(config.model);
    try {
        const boss::ScanStats stats = boss::scan_corpus(*in, store, model);
        boss::write_scan_artifacts(stats, out_dir);
        std::cout << stats.summary_line() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "boss scan: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}

int run_serve(const std::string& listen, const boss::EngineConfig& config) {
    // Block termination signals before any thread starts so sigwait sees them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    boss::Engine engine(config);
    try {
        const auto [host, port] = boss::parse_listen_address(listen);
        boss::Server server(engine, host, port);
        const std::uint16_t bound = server.start();
        std::cout << "listening on " << host << ':' << bound << std::endl;
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    } catch (const std::exception& e) {
        std::cerr << "boss serve: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bag-of-synthetic-syllables subject fingerprinting"};
    app.require_subcommand(1);
    app.fallthrough();

    boss::EngineConfig config;
    app.add_option("--t-cos", config.params.t_cos, "Cosine threshold")
        ->envname("BOSS_T_COS")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--t-euc", config.params.t_euc, "Euclidean threshold")
        ->envname("BOSS_T_EUC")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--capacity", config.capacity, "Frequent-subject buffer size")
        ->envname("BOSS_CAPACITY")
        ->check(CLI::PositiveNumber);

    std::string hash_text;
    auto* hash_cmd = app.add_subcommand("hash", "Print the 189-character hash of a text");
    hash_cmd->add_option("text", hash_text, "Subject text")->required();

    std::string cmp_a;
    std::string cmp_b;
    auto* cmp_cmd = app.add_subcommand("cmp", "Compare two hashes or texts; exit 0 if proximate, 1 if not");
    cmp_cmd->add_option("a", cmp_a)->required();
    cmp_cmd->add_option("b", cmp_b)->required();

    std::string scan_input;
    std::string out_dir = ".";
    auto* scan_cmd = app.add_subcommand("scan", "Scan a corpus and write distance histograms");
    scan_cmd->add_option("input", scan_input, "Input file, '-' or omitted for stdin");
    scan_cmd->add_option("--out-dir", out_dir, "Directory for CSV and summary output");

    std::uint64_t bench_n = 100000;
    std::uint64_t bench_seed = 42;
    auto* bench_cmd = app.add_subcommand("bench", "Measure pipeline throughput on generated subjects");
    bench_cmd->add_option("--n", bench_n, "Number of subjects")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench_seed, "Generator seed");

    std::string listen = "127.0.0.1:7878";
    auto* serve_cmd = app.add_subcommand("serve", "Run the line-protocol service");
    serve_cmd->add_option("--listen", listen, "HOST:PORT to bind");

    CLI11_PARSE(app, argc, argv);

    if (*hash_cmd) {
        std::cout << boss::serialize_hash(boss::build_hash(hash_text)) << '\n';
        return 0;
    }
    if (*cmp_cmd) return run_cmp(cmp_a, cmp_b, config.params);
    if (*scan_cmd) return run_scan(scan_input, out_dir, config);
    if (*bench_cmd) {
        const boss::BenchReport r = boss::run_bench(bench_n, bench_seed, config);
        std::cout << r.deterministic_line() << '\n' << r.timing_line() << '\n';
        return 0;
    }
    if (*serve_cmd) return run_serve(listen, config);
    return 0;
}

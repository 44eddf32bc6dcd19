#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "boss/pipeline.hpp"
#include "corpus.hpp"
#include "oracle.hpp"

using namespace boss;
using namespace boss::testing;

TEST_CASE("process_subject examples") {
    HashStore store;
    Perceptron model;

    const Decision first = process_subject(kDonald, Label::unknown, store, model);
    CHECK(first.hash_text == kDonaldHash);
    CHECK(first.boss_flag == 0);
    CHECK_FALSE(first.match.matched);
    CHECK_FALSE(first.match.cosine);
    CHECK(first.score == 0.0);
    CHECK(first.label == Label::ham);

    const Decision second = process_subject(kVulindlela, Label::unknown, store, model);
    CHECK(second.boss_flag == 1);
    CHECK(second.match.matched);
    CHECK(std::abs(*second.match.cosine - 0.885808) < 1e-6);
    CHECK(std::abs(*second.match.euclidean - 2.828427) < 1e-6);
}

TEST_CASE("repeated spam subject turns the decision to spam") {
    HashStore store;
    Perceptron model;
    const std::string_view subject = "Claim your reward points now";
    const Decision d1 = process_subject(subject, Label::spam, store, model);
    CHECK(d1.label == Label::ham);  // predicted before the first update
    const Decision d2 = process_subject(subject, Label::spam, store, model);
    const Decision d3 = process_subject(subject, Label::spam, store, model);
    CHECK(d2.boss_flag == 1);
    CHECK(d3.boss_flag == 1);
    CHECK(d3.label == Label::spam);
    CHECK(d3.score > 0.0);
}

TEST_CASE("auxiliary verdicts fill features after the proximity flag") {
    HashStore store;
    Perceptron model({3, 0.5, false, 0.5});
    std::vector<double> w{0.0, 1.0, 0.0};
    model.set_parameters(w, -0.25);
    const double aux[] = {1.0, 0.0};
    CHECK(process_subject("hello", Label::unknown, store, model, aux).label == Label::spam);
    const double too_many[] = {1.0, 0.0, 0.0};
    CHECK_THROWS_AS(process_subject("hello", Label::unknown, store, model, too_many), std::invalid_argument);
}

TEST_CASE("exact duplicates always flag") {
    Gen g(21);
    for (int i = 0; i < 500; ++i) {
        HashStore store({16, {}});
        Perceptron model;
        const std::string s = g.bytes(80);
        if (build_hash(s).is_zero()) continue;
        process_subject(s, Label::unknown, store, model);
        const Decision d = process_subject(s, Label::unknown, store, model);
        REQUIRE(d.boss_flag == 1);
        CHECK(std::abs(*d.match.cosine - 1.0) < 1e-12);
        CHECK(*d.match.euclidean == 0.0);
    }
}

TEST_CASE("corpus line parsing") {
    CHECK(parse_corpus_line("spam\tbuy now").label == Label::spam);
    CHECK(parse_corpus_line("spam\tbuy now").subject == "buy now");
    CHECK(parse_corpus_line("ham\thello\r").subject == "hello");
    CHECK(parse_corpus_line("unknown\tx").label == Label::unknown);
    CHECK(parse_corpus_line("plain subject").label == Label::unknown);
    CHECK(parse_corpus_line("plain subject").subject == "plain subject");
    const CorpusLine junk = parse_corpus_line("SPAMMY\tsubject");
    CHECK(junk.label == Label::unknown);
    CHECK(junk.subject == "subject");
}

TEST_CASE("histogram binning") {
    Histogram h(0.0, 1.0, 20, false);
    h.add(0.0);
    h.add(0.87);
    h.add(0.999);
    h.add(1.0);
    CHECK(h.counts()[0] == 1);
    CHECK(h.counts()[17] == 1);
    CHECK(h.counts()[19] == 2);

    Histogram e(0.0, 20.0, 20, true);
    e.add(0.0);
    e.add(2.828427);
    e.add(150.0);
    CHECK(e.counts()[0] == 1);
    CHECK(e.counts()[2] == 1);
    CHECK(e.counts()[19] == 1);

    std::ostringstream csv;
    e.write_csv(csv);
    const std::string text = csv.str();
    CHECK(text.rfind("bin_low,bin_high,count\n0.00,1.00,1\n", 0) == 0);
    CHECK(text.find("19.00,inf,1\n") != std::string::npos);
}

TEST_CASE("scan: empty stream") {
    HashStore store;
    Perceptron model;
    std::istringstream in("");
    const ScanStats s = scan_corpus(in, store, model);
    CHECK(s.total == 0);
    CHECK(s.flagged == 0);
    CHECK(s.cosine_histogram.total() == 0);
    CHECK(s.euclidean_histogram.total() == 0);
    CHECK(s.summary_line().rfind("total=0 flagged=0 spam=0 ham=0 unknown=0 msgs_per_sec=", 0) == 0);
}

TEST_CASE("scan: bulk subject with near mutations") {
    Gen g(555);
    std::vector<std::string> mutations;
    const auto lines = bulk_corpus(g, &mutations);

    // Brute-force expectation: every copy after the first matches, and a
    // mutation matches whenever it is proximate to the bulk subject.
    const CountVector base = oracle_hash(kBulkSubject);
    std::size_t proximate = 0;
    for (const auto& m : mutations) {
        const CountVector v = oracle_hash(m);
        proximate += (oracle_cosine(base, v) > 0.87 && oracle_euclidean(base, v) < 6.0) ? 1 : 0;
    }
    CHECK(proximate == 100);

    for (const std::size_t batch : {std::size_t{1}, std::size_t{64}, std::size_t{4096}}) {
        HashStore store;
        Perceptron model;
        std::istringstream in(as_text(lines));
        const ScanStats s = scan_corpus(in, store, model, {batch});
        CHECK(s.total == 1100);
        CHECK(s.flagged >= 999 + proximate);
        CHECK(s.cosine_histogram.total() == s.flagged);
        CHECK(s.euclidean_histogram.total() == s.flagged);
        CHECK(s.cosine_histogram.counts()[19] >= 999);  // exact copies at cosine 1
        for (std::size_t b = 0; b < 17; ++b) CHECK(s.cosine_histogram.counts()[b] == 0);  // all above 0.87
    }
}

TEST_CASE("scan: unrelated random subjects are essentially never flagged") {
    Gen g(777);
    HashStore store;
    Perceptron model;
    std::istringstream in(as_text(random_subjects(g, 100)));
    const ScanStats s = scan_corpus(in, store, model);
    CHECK(s.total == 100);
    CHECK(s.flagged <= 2);
}

TEST_CASE("scan: label counts and model invariance with unknown labels") {
    HashStore store;
    Perceptron model;
    std::vector<double> w(100, 0.0);
    w[0] = 0.3;
    model.set_parameters(w, -0.1);
    const Perceptron before = model;

    Gen g(9);
    std::string text;
    for (int i = 0; i < 500; ++i) text += "unknown\t" + join(g.words(5)) + "\n";
    for (int i = 0; i < 300; ++i) text += join(g.words(5)) + "\n";
    std::istringstream in(text);
    const ScanStats s = scan_corpus(in, store, model);
    CHECK(model == before);
    CHECK(s.unknown == 800);
    CHECK(s.total == s.spam + s.ham + s.unknown);

    std::istringstream labelled("spam\ta b c\nham\td e f\nnonsense\tg h\n");
    const ScanStats l = scan_corpus(labelled, store, model);
    CHECK(l.spam == 1);
    CHECK(l.ham == 1);
    CHECK(l.unknown == 1);
}

TEST_CASE("scan: parallel hashing keeps the serial result") {
    Gen g(1234);
    std::string text;
    for (int i = 0; i < 3000; ++i) text += (g.coin() ? "spam\t" : "ham\t") + join(g.words(3)) + "\n";

    const auto run = [&](std::size_t batch) {
        HashStore store({200, {}});
        Perceptron model;
        std::istringstream in(text);
        const ScanStats s = scan_corpus(in, store, model, {batch});
        return std::make_tuple(store.snapshot(), std::vector<double>(model.weights().begin(), model.weights().end()),
                               model.bias(), s.flagged);
    };
    CHECK(run(1) == run(4096));
}

TEST_CASE("scan artifacts") {
    const auto dir = std::filesystem::temp_directory_path() / "boss_scan_artifacts_test";
    std::filesystem::remove_all(dir);
    HashStore store;
    Perceptron model;
    std::istringstream in("a subject\na subject\n");
    const ScanStats s = scan_corpus(in, store, model);
    write_scan_artifacts(s, dir);
    for (const char* name : {"cosine_hist.csv", "euclid_hist.csv", "summary.txt"}) {
        CHECK(std::filesystem::exists(dir / name));
    }
    std::ifstream csv(dir / "cosine_hist.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "bin_low,bin_high,count");
    std::size_t rows = 0;
    for (std::string line; std::getline(csv, line);) ++rows;
    CHECK(rows == 20);
    std::filesystem::remove_all(dir);
}

TEST_CASE("engine: concurrent callers see a consistent store") {
    Engine engine({{}, 1000, {}});
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&engine] {
            for (int i = 0; i < 250; ++i) engine.process("Weekly digest for your account", Label::unknown);
        });
    }
    for (auto& t : threads) t.join();
    const auto entries = engine.store_snapshot();
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].occurrences == 1000);
    const ScanStats s = engine.stats();
    CHECK(s.total == 1000);
    CHECK(s.flagged == 999);
    CHECK(engine.stats_line().rfind("total=1000 flagged=999 spam=0 ham=0 unknown=1000 msgs_per_sec=", 0) == 0);
}

TEST_CASE("bench is deterministic in its non-timing fields") {
    const BenchReport a = run_bench(5000, 42);
    const BenchReport b = run_bench(5000, 42);
    CHECK(a.deterministic_line() == b.deterministic_line());
    CHECK(a.total == 5000);
    CHECK(a.spam + a.ham + a.unknown == 5000);
    CHECK(a.flagged > 0);
    CHECK(run_bench(5000, 43).deterministic_line() != a.deterministic_line());

    const BenchReport one = run_bench(1, 42);
    CHECK(one.total == 1);
    CHECK(one.deterministic_line().rfind("total=1 ", 0) == 0);
    CHECK_THROWS_AS(run_bench(0, 1), std::invalid_argument);
}

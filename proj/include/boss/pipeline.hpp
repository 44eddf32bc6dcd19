#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <mutex>
#include <random>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boss/classifier.hpp"
#include "boss/hashstore.hpp"
#include "boss/label.hpp"
#include "boss/proximity.hpp"
#include "boss/syllabifier.hpp"

namespace boss {

struct EngineConfig {
    ProximityParams params;
    std::size_t capacity = 1000;
    Perceptron::Options model;

    StoreConfig store_config() const { return {capacity, params}; }
};

struct MatchSummary {
    bool matched = false;
    std::optional<double> cosine;
    std::optional<double> euclidean;
};

struct Decision {
    std::string hash_text;
    MatchSummary match;
    int boss_flag = 0;  // verdict feature 0
    double score = 0.0;
    Label label = Label::ham;
    std::chrono::microseconds elapsed{0};
};

/// Hash, match against the store, assemble the verdict vector (feature 0 is
/// the proximity flag, features 1.. come from `aux`), predict, and then train
/// on `label`. Prediction always precedes the update.
Decision process_subject(std::string_view text, Label label, HashStore& store, Perceptron& model,
                         std::span<const double> aux = {});

/// Same, for a subject that was already hashed.
Decision process_hashed(const CountVector& hash, Label label, HashStore& store, Perceptron& model,
                        std::span<const double> aux = {});

/// Fixed-range histogram; samples beyond `high` land in the last bin when
/// `open_last` is set, samples below `low` in the first.
class Histogram {
public:
    Histogram(double low, double high, std::size_t bins, bool open_last);

    void add(double sample) noexcept;
    std::uint64_t total() const noexcept;
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }
    double bin_low(std::size_t i) const noexcept;
    double bin_high(std::size_t i) const noexcept;
    bool open_last() const noexcept { return open_last_; }

    /// "bin_low,bin_high,count" rows under a header; an open last bin is
    /// written with bin_high "inf".
    void write_csv(std::ostream& out) const;

private:
    double low_;
    double high_;
    bool open_last_;
    std::vector<std::uint64_t> counts_;
};

struct ScanStats {
    std::uint64_t total = 0;
    std::uint64_t flagged = 0;
    std::uint64_t spam = 0;  // input label counts
    std::uint64_t ham = 0;
    std::uint64_t unknown = 0;
    Histogram cosine_histogram{0.0, 1.0, 20, false};
    Histogram euclidean_histogram{0.0, 20.0, 20, true};
    double msgs_per_sec = 0.0;

    void record(const Decision& d, Label input_label) noexcept;

    /// "total=N flagged=M spam=S ham=H unknown=U msgs_per_sec=R"
    std::string summary_line() const;
};

/// Splits an optional leading "spam|ham|unknown<TAB>" column off a corpus
/// line. A tab-delimited first column that is not a label reads as unknown.
struct CorpusLine {
    Label label = Label::unknown;
    std::string_view subject;
};
CorpusLine parse_corpus_line(std::string_view line) noexcept;

struct ScanOptions {
    std::size_t batch = 4096;  // lines hashed together before serial observation
};

/// Runs every line through the pipeline in input order.
ScanStats scan_corpus(std::istream& in, HashStore& store, Perceptron& model, const ScanOptions& options = {});

/// Writes cosine_hist.csv, euclid_hist.csv and summary.txt into `dir`.
void write_scan_artifacts(const ScanStats& stats, const std::filesystem::path& dir);

/// Store, model and counters shared by concurrent callers. Hashing runs
/// outside the lock; observe/predict/train run under it.
class Engine {
public:
    explicit Engine(EngineConfig config = {});

    Decision process(std::string_view subject, Label label);
    std::string stats_line() const;

    /// Copies taken under the lock.
    ScanStats stats() const;
    std::vector<SubjectEntry> store_snapshot() const;
    Perceptron model_snapshot() const;

private:
    mutable std::mutex mutex_;
    HashStore store_;
    Perceptron model_;
    ScanStats stats_;
    std::chrono::steady_clock::time_point started_;
};

/// Deterministic synthetic subject stream: campaign templates with small
/// character edits (labelled spam), mixed with random word salad.
class SubjectGenerator {
public:
    explicit SubjectGenerator(std::uint64_t seed);
    CorpusLine next(std::string& storage);

private:
    std::uint64_t draw(std::uint64_t bound);
    std::string random_words(std::size_t words);

    std::mt19937_64 rng_;
    std::vector<std::string> campaigns_;
};

struct BenchReport {
    std::uint64_t total = 0;
    std::uint64_t flagged = 0;
    std::uint64_t spam = 0;
    std::uint64_t ham = 0;
    std::uint64_t unknown = 0;
    std::uint64_t predicted_spam = 0;
    std::size_t store_size = 0;
    double msgs_per_sec = 0.0;
    double mean_latency_us = 0.0;

    /// Fields that depend only on (n, seed).
    std::string deterministic_line() const;
    std::string timing_line() const;
};

/// Runs `n` generated subjects through the full single-threaded pipeline.
BenchReport run_bench(std::uint64_t n, std::uint64_t seed, const EngineConfig& config = {});

std::string format_fixed6(double v);

}  // namespace boss

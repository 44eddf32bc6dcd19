#include "boss/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "boss/kernels.hpp"

namespace boss {

namespace {

using Clock = std::chrono::steady_clock;

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

}  // namespace

std::string format_fixed6(double v) { return format_double("%.6f", v); }

Decision process_hashed(const CountVector& hash, Label label, HashStore& store, Perceptron& model,
                        std::span<const double> aux) {
    const auto start = Clock::now();
    if (aux.size() + 1 > model.dimension()) {
        throw std::invalid_argument("too many auxiliary verdicts for the model width");
    }

    Decision d;
    d.hash_text = serialize_hash(hash);

    const MatchResult m = store.observe(hash, label);
    d.match = {m.merged, m.cosine, m.euclidean};
    d.boss_flag = m.merged ? 1 : 0;

    VerdictVector x(model.dimension(), 0.0);
    x[0] = d.boss_flag;
    std::copy(aux.begin(), aux.end(), x.begin() + 1);

    const Prediction p = model.predict(x);
    d.score = p.score;
    d.label = p.label;
    model.train_step(x, label);

    d.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    return d;
}

Decision process_subject(std::string_view text, Label label, HashStore& store, Perceptron& model,
                         std::span<const double> aux) {
    const auto start = Clock::now();
    Decision d = process_hashed(build_hash(text), label, store, model, aux);
    d.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    return d;
}

// ---------------------------------------------------------------------------

Histogram::Histogram(double low, double high, std::size_t bins, bool open_last)
    : low_(low), high_(high), open_last_(open_last), counts_(bins, 0) {
    if (bins == 0 || !(high > low)) throw std::invalid_argument("bad histogram range");
}

void Histogram::add(double sample) noexcept {
    const double width = (high_ - low_) / static_cast<double>(counts_.size());
    double pos = std::floor((sample - low_) / width);
    pos = std::clamp(pos, 0.0, static_cast<double>(counts_.size() - 1));
    ++counts_[static_cast<std::size_t>(pos)];
}

std::uint64_t Histogram::total() const noexcept {
    std::uint64_t s = 0;
    for (const auto c : counts_) s += c;
    return s;
}

double Histogram::bin_low(std::size_t i) const noexcept {
    return low_ + (high_ - low_) * static_cast<double>(i) / static_cast<double>(counts_.size());
}

double Histogram::bin_high(std::size_t i) const noexcept {
    return low_ + (high_ - low_) * static_cast<double>(i + 1) / static_cast<double>(counts_.size());
}

void Histogram::write_csv(std::ostream& out) const {
    out << "bin_low,bin_high,count\n";
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        out << format_double("%.2f", bin_low(i)) << ',';
        if (open_last_ && i + 1 == counts_.size()) {
            out << "inf";
        } else {
            out << format_double("%.2f", bin_high(i));
        }
        out << ',' << counts_[i] << '\n';
    }
}

void ScanStats::record(const Decision& d, Label input_label) noexcept {
    ++total;
    switch (input_label) {
        case Label::spam: ++spam; break;
        case Label::ham: ++ham; break;
        case Label::unknown: ++unknown; break;
    }
    if (d.match.matched) {
        ++flagged;
        cosine_histogram.add(*d.match.cosine);
        euclidean_histogram.add(*d.match.euclidean);
    }
}

std::string ScanStats::summary_line() const {
    return "total=" + std::to_string(total) + " flagged=" + std::to_string(flagged) +
           " spam=" + std::to_string(spam) + " ham=" + std::to_string(ham) +
           " unknown=" + std::to_string(unknown) + " msgs_per_sec=" + format_double("%.1f", msgs_per_sec);
}

CorpusLine parse_corpus_line(std::string_view line) noexcept {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) return {Label::unknown, line};
    const auto label = parse_label(line.substr(0, tab));
    return {label.value_or(Label::unknown), line.substr(tab + 1)};
}

ScanStats scan_corpus(std::istream& in, HashStore& store, Perceptron& model, const ScanOptions& options) {
    ScanStats stats;
    const std::size_t batch = std::max<std::size_t>(options.batch, 1);
    std::vector<std::string> lines;
    std::vector<CorpusLine> parsed;
    std::vector<std::string_view> subjects;
    lines.reserve(batch);

    const auto start = Clock::now();
    bool more = true;
    while (more) {
        lines.clear();
        std::string line;
        while (lines.size() < batch && (more = static_cast<bool>(std::getline(in, line)))) {
            lines.push_back(std::move(line));
        }
        if (in.bad()) throw std::runtime_error("error reading corpus input");
        if (lines.empty()) break;

        parsed.clear();
        subjects.clear();
        for (const std::string& l : lines) {
            parsed.push_back(parse_corpus_line(l));
            subjects.push_back(parsed.back().subject);
        }
        // Hashing is order-free; observation below keeps input order.
        const std::vector<CountVector> hashes = kernels::hash_batch_parallel(subjects);
        for (std::size_t i = 0; i < hashes.size(); ++i) {
            stats.record(process_hashed(hashes[i], parsed[i].label, store, model), parsed[i].label);
        }
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    stats.msgs_per_sec = seconds > 0.0 ? static_cast<double>(stats.total) / seconds : 0.0;
    return stats;
}

void write_scan_artifacts(const ScanStats& stats, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto write = [&](const char* name, auto&& body) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
        body(out);
        if (!out) throw std::runtime_error("error writing " + (dir / name).string());
    };
    write("cosine_hist.csv", [&](std::ostream& o) { stats.cosine_histogram.write_csv(o); });
    write("euclid_hist.csv", [&](std::ostream& o) { stats.euclidean_histogram.write_csv(o); });
    write("summary.txt", [&](std::ostream& o) { o << stats.summary_line() << '\n'; });
}

// ---------------------------------------------------------------------------

Engine::Engine(EngineConfig config)
    : store_(config.store_config()), model_(config.model), started_(Clock::now()) {}

Decision Engine::process(std::string_view subject, Label label) {
    const auto start = Clock::now();
    const CountVector hash = build_hash(subject);
    std::lock_guard lock(mutex_);
    Decision d = process_hashed(hash, label, store_, model_);
    d.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    stats_.record(d, label);
    return d;
}

ScanStats Engine::stats() const {
    std::lock_guard lock(mutex_);
    ScanStats s = stats_;
    const double seconds = std::chrono::duration<double>(Clock::now() - started_).count();
    s.msgs_per_sec = seconds > 0.0 ? static_cast<double>(s.total) / seconds : 0.0;
    return s;
}

std::string Engine::stats_line() const { return stats().summary_line(); }

std::vector<SubjectEntry> Engine::store_snapshot() const {
    std::lock_guard lock(mutex_);
    return store_.snapshot();
}

Perceptron Engine::model_snapshot() const {
    std::lock_guard lock(mutex_);
    return model_;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::string_view kSyllables[] = {
    "ba", "ko", "ri", "tu", "me", "sa", "ly", "do", "ne", "pi", "gra", "st", "ch", "an",
    "ex", "ol", "fr", "ee", "win", "off", "pr", "ize", "now", "deal", "mo", "ney", "ca", "sh"};

}  // namespace

SubjectGenerator::SubjectGenerator(std::uint64_t seed) : rng_(seed) {
    for (int i = 0; i < 50; ++i) campaigns_.push_back(random_words(4 + draw(5)));
}

std::uint64_t SubjectGenerator::draw(std::uint64_t bound) { return rng_() % bound; }

std::string SubjectGenerator::random_words(std::size_t words) {
    std::string s;
    for (std::size_t w = 0; w < words; ++w) {
        if (w) s += ' ';
        const std::size_t parts = 1 + draw(4);
        for (std::size_t p = 0; p < parts; ++p) s += kSyllables[draw(std::size(kSyllables))];
    }
    return s;
}

CorpusLine SubjectGenerator::next(std::string& storage) {
    if (draw(2) == 0) {
        storage = campaigns_[draw(campaigns_.size())];
        const std::uint64_t edits = draw(3);
        for (std::uint64_t e = 0; e < edits; ++e) {
            storage[draw(storage.size())] = static_cast<char>('a' + draw(26));
        }
        return {Label::spam, storage};
    }
    storage = random_words(3 + draw(6));
    return {draw(2) == 0 ? Label::ham : Label::unknown, storage};
}

std::string BenchReport::deterministic_line() const {
    return "total=" + std::to_string(total) + " flagged=" + std::to_string(flagged) +
           " spam=" + std::to_string(spam) + " ham=" + std::to_string(ham) +
           " unknown=" + std::to_string(unknown) + " predicted_spam=" + std::to_string(predicted_spam) +
           " store_size=" + std::to_string(store_size);
}

std::string BenchReport::timing_line() const {
    return "msgs_per_sec=" + format_double("%.1f", msgs_per_sec) +
           " mean_latency_us=" + format_double("%.3f", mean_latency_us);
}

BenchReport run_bench(std::uint64_t n, std::uint64_t seed, const EngineConfig& config) {
    if (n == 0) throw std::invalid_argument("bench needs at least one message");
    SubjectGenerator gen(seed);
    HashStore store(config.store_config());
    Perceptron model(config.model);

    // Generate up front so only the pipeline is timed.
    std::vector<std::string> storage(n);
    std::vector<Label> labels(n);
    for (std::uint64_t i = 0; i < n; ++i) labels[i] = gen.next(storage[i]).label;

    BenchReport r;
    const auto start = Clock::now();
    for (std::uint64_t i = 0; i < n; ++i) {
        const Decision d = process_subject(storage[i], labels[i], store, model);
        ++r.total;
        r.flagged += static_cast<std::uint64_t>(d.boss_flag);
        r.predicted_spam += d.label == Label::spam ? 1 : 0;
        switch (labels[i]) {
            case Label::spam: ++r.spam; break;
            case Label::ham: ++r.ham; break;
            case Label::unknown: ++r.unknown; break;
        }
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    r.store_size = store.size();
    r.msgs_per_sec = seconds > 0.0 ? static_cast<double>(n) / seconds : 0.0;
    r.mean_latency_us = seconds * 1e6 / static_cast<double>(n);
    return r;
}

}  // namespace boss

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "boss/label.hpp"
#include "boss/proximity.hpp"
#include "boss/syllabifier.hpp"

namespace boss {

struct SubjectEntry {
    CountVector vector;
    std::uint64_t occurrences = 1;
    Label spam_flag = Label::unknown;
    std::uint64_t last_seen = 0;

    friend bool operator==(const SubjectEntry&, const SubjectEntry&) = default;
};

struct StoreConfig {
    std::size_t capacity = 1000;
    ProximityParams params;

    void validate() const;
};

struct MatchResult {
    std::optional<std::size_t> matched_entry;
    std::optional<double> cosine;  // set only on a match
    std::optional<double> euclidean;
    bool merged = false;
    std::optional<SubjectEntry> evicted;
    std::size_t scanned = 0;  // entries examined by this call
};

class StoreFormatError : public std::runtime_error {
public:
    StoreFormatError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Bounded buffer of frequent subject hashes.
///
/// observe() merges into the stored entry with the highest cosine among those
/// passing the proximity test (ties: more occurrences, then older last_seen),
/// or inserts a new entry, evicting the least frequent (then least recent)
/// one when full. Single writer; use snapshot() to hand data to readers.
class HashStore {
public:
    explicit HashStore(StoreConfig config = {});

    MatchResult observe(const CountVector& v, Label label);

    /// Removes the least-frequent, least-recent entry. Requires a full store.
    SubjectEntry evict();

    std::size_t size() const noexcept { return entries_.size(); }
    std::size_t capacity() const noexcept { return config_.capacity; }
    bool empty() const noexcept { return entries_.empty(); }
    const StoreConfig& config() const noexcept { return config_; }
    const SubjectEntry& entry(std::size_t i) const { return entries_.at(i); }
    std::uint64_t clock() const noexcept { return clock_; }
    std::uint64_t total_occurrences() const noexcept;

    std::vector<SubjectEntry> snapshot() const { return entries_; }

    /// One line per entry: hash, occurrences, flag, last_seen (tab-separated).
    void export_to(std::ostream& out) const;
    /// Throws StoreFormatError naming the offending 1-based line.
    static HashStore import_from(std::istream& in, StoreConfig config = {});

private:
    void append(const SubjectEntry& e);
    void remove_at(std::size_t i);
    void write_columns(std::size_t i, const CountVector& v);

    StoreConfig config_;
    std::vector<SubjectEntry> entries_;
    std::vector<std::uint32_t> columns_;  // slot-major, kSlots x capacity
    std::vector<std::int64_t> norm2_;
    std::vector<std::uint64_t> dots_;
    std::uint64_t clock_ = 0;
};

}  // namespace boss

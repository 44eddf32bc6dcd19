#include "boss/hashstore.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "boss/kernels.hpp"

namespace boss {

namespace {

std::int64_t norm2_of(const CountVector& v) noexcept {
    std::int64_t s = 0;
    for (const auto c : v) s += static_cast<std::int64_t>(c) * c;
    return s;
}

// Incoming definite labels win; unknown never overrides.
Label merge_label(Label stored, Label incoming) noexcept {
    return is_definite(incoming) ? incoming : stored;
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

void StoreConfig::validate() const {
    if (capacity < 1) throw std::invalid_argument("store capacity must be at least 1");
    params.validate();
}

StoreFormatError::StoreFormatError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

HashStore::HashStore(StoreConfig config) : config_(config) {
    config_.validate();
    entries_.reserve(config_.capacity);
    columns_.assign(kSlots * config_.capacity, 0);
    norm2_.reserve(config_.capacity);
    dots_.assign(config_.capacity, 0);
}

std::uint64_t HashStore::total_occurrences() const noexcept {
    return std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0},
                           [](std::uint64_t s, const SubjectEntry& e) { return s + e.occurrences; });
}

MatchResult HashStore::observe(const CountVector& v, Label label) {
    MatchResult result;
    const std::uint64_t now = ++clock_;
    const std::int64_t query_norm2 = norm2_of(v);
    const double t_cos2 = config_.params.t_cos * config_.params.t_cos;
    const double t_euc2 = config_.params.t_euc * config_.params.t_euc;

    std::optional<std::size_t> best;
    double best_cos = -1.0;
    std::int64_t best_dist2 = 0;

    if (query_norm2 != 0 && !entries_.empty()) {
        kernels::dot_scan_serial(v, {columns_.data(), config_.capacity, entries_.size()}, dots_);
        result.scanned = entries_.size();

        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (norm2_[i] == 0) continue;
            const auto dot = static_cast<std::int64_t>(dots_[i]);
            const std::int64_t dist2 = query_norm2 + norm2_[i] - 2 * dot;
            const double n2 = static_cast<double>(query_norm2) * static_cast<double>(norm2_[i]);
            const double d = static_cast<double>(dot);
            if (!(d * d / n2 > t_cos2 && static_cast<double>(dist2) < t_euc2)) continue;

            const double cos = d / std::sqrt(n2);
            bool better = !best || cos > best_cos;
            if (best && cos == best_cos) {
                const SubjectEntry& cur = entries_[*best];
                const SubjectEntry& cand = entries_[i];
                better = cand.occurrences > cur.occurrences ||
                         (cand.occurrences == cur.occurrences && cand.last_seen < cur.last_seen);
            }
            if (better) {
                best = i;
                best_cos = cos;
                best_dist2 = dist2;
            }
        }
    }

    if (best) {
        SubjectEntry& e = entries_[*best];
        ++e.occurrences;
        e.last_seen = now;
        e.spam_flag = merge_label(e.spam_flag, label);
        result.matched_entry = best;
        result.cosine = best_cos;
        result.euclidean = std::sqrt(static_cast<double>(best_dist2));
        result.merged = true;
        return result;
    }

    if (entries_.size() == config_.capacity) result.evicted = evict();
    append({v, 1, label, now});
    return result;
}

SubjectEntry HashStore::evict() {
    if (entries_.size() != config_.capacity) {
        throw std::logic_error("evict() called on a store that is not full");
    }
    std::size_t victim = 0;
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        const SubjectEntry& a = entries_[i];
        const SubjectEntry& b = entries_[victim];
        if (a.occurrences < b.occurrences ||
            (a.occurrences == b.occurrences && a.last_seen < b.last_seen)) {
            victim = i;
        }
    }
    SubjectEntry out = entries_[victim];
    remove_at(victim);
    return out;
}

void HashStore::append(const SubjectEntry& e) {
    const std::size_t i = entries_.size();
    entries_.push_back(e);
    norm2_.push_back(norm2_of(e.vector));
    write_columns(i, e.vector);
}

void HashStore::remove_at(std::size_t i) {
    const std::size_t last = entries_.size() - 1;
    if (i != last) {
        entries_[i] = entries_[last];
        norm2_[i] = norm2_[last];
        write_columns(i, entries_[i].vector);
    }
    entries_.pop_back();
    norm2_.pop_back();
}

void HashStore::write_columns(std::size_t i, const CountVector& v) {
    for (std::size_t s = 0; s < kSlots; ++s) columns_[s * config_.capacity + i] = v[s];
}

void HashStore::export_to(std::ostream& out) const {
    for (const SubjectEntry& e : entries_) {
        out << serialize_hash(e.vector) << '\t' << e.occurrences << '\t' << to_string(e.spam_flag)
            << '\t' << e.last_seen << '\n';
    }
}

HashStore HashStore::import_from(std::istream& in, StoreConfig config) {
    HashStore store(config);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view rest(line);
        std::string_view fields[4];
        for (std::size_t f = 0; f < 4; ++f) {
            const auto tab = rest.find('\t');
            if ((f < 3) == (tab == std::string_view::npos)) {
                throw StoreFormatError(lineno, "expected 4 tab-separated fields");
            }
            fields[f] = rest.substr(0, tab);
            if (f < 3) rest.remove_prefix(tab + 1);
        }

        SubjectEntry e;
        try {
            e.vector = parse_hash(fields[0]);
        } catch (const MalformedHash& ex) {
            throw StoreFormatError(lineno, ex.what());
        }
        if (!parse_u64(fields[1], e.occurrences) || e.occurrences == 0) {
            throw StoreFormatError(lineno, "occurrences must be a positive integer");
        }
        const auto flag = parse_label(fields[2]);
        if (!flag) throw StoreFormatError(lineno, "flag must be spam, ham or unknown");
        e.spam_flag = *flag;
        if (!parse_u64(fields[3], e.last_seen)) {
            throw StoreFormatError(lineno, "last_seen must be a non-negative integer");
        }
        if (store.size() == store.capacity()) throw StoreFormatError(lineno, "store capacity exceeded");

        store.append(e);
        store.clock_ = std::max(store.clock_, e.last_seen);
    }
    return store;
}

}  // namespace boss

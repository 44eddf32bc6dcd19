#include "boss/syllabifier.hpp"

#include <algorithm>

namespace boss {

namespace {

enum class ScanState { out_of_syllable, in_syllable };

constexpr char fold_letter(unsigned char c) noexcept {
    if (c >= 'A' && c <= 'Z') return static_cast<char>(c - 'A' + 'a');
    if (c >= 'a' && c <= 'z') return static_cast<char>(c);
    return 0;
}

}  // namespace

bool CountVector::is_zero() const noexcept {
    return std::all_of(counts_.begin(), counts_.end(), [](value_type c) { return c == 0; });
}

CountVector& CountVector::operator+=(const CountVector& other) noexcept {
    for (std::size_t i = 0; i < kSlots; ++i) counts_[i] += other.counts_[i];
    return *this;
}

CountVector build_hash(std::string_view text) noexcept {
    CountVector hash;
    if (text.size() > kMaxInputBytes) text = text.substr(0, kMaxInputBytes);

    ScanState state = ScanState::out_of_syllable;
    std::size_t pending = 0;  // consonant column while in_syllable

    for (const char raw : text) {
        const char c = fold_letter(static_cast<unsigned char>(raw));
        const std::size_t row = vowel_row(c);

        if (state == ScanState::out_of_syllable) {
            if (c == 0) continue;
            if (row != 0) {
                ++hash[row * kRowLength];
            } else {
                pending = static_cast<std::size_t>(c - 'a');
                state = ScanState::in_syllable;
            }
            continue;
        }

        if (c == 0) {
            ++hash[pending];
            state = ScanState::out_of_syllable;
        } else if (row != 0) {
            ++hash[row * kRowLength + pending];
            state = ScanState::out_of_syllable;
        } else {
            ++hash[pending];
            pending = static_cast<std::size_t>(c - 'a');
        }
    }

    // A consonant pending at end of input stands alone; flushed once.
    if (state == ScanState::in_syllable) ++hash[pending];
    return hash;
}

std::string serialize_hash(const CountVector& v) {
    std::string out(kSlots, '0');
    for (std::size_t i = 0; i < kSlots; ++i) {
        out[i] = static_cast<char>('0' + std::min(v[i], kMaxPrintableCount));
    }
    return out;
}

bool looks_like_hash(std::string_view text) noexcept {
    return text.size() == kSlots &&
           std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '~'; });
}

CountVector parse_hash(std::string_view text) {
    if (text.size() != kSlots) {
        throw MalformedHash("hash must be " + std::to_string(kSlots) + " characters, got " +
                            std::to_string(text.size()));
    }
    CountVector v;
    for (std::size_t i = 0; i < kSlots; ++i) {
        const char c = text[i];
        if (c < '0' || c > '~') {
            throw MalformedHash("invalid hash character at position " + std::to_string(i));
        }
        v[i] = static_cast<CountVector::value_type>(c - '0');
    }
    return v;
}

}  // namespace boss

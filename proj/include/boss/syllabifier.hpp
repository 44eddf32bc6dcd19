#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace boss {

// Layout: 7 rows of 27 columns. Row 0 holds standalone consonants (column =
// letter offset from 'a'); rows 1..6 hold syllables ending in the vowels
// a, i, u, e, o, y. Column 0 of a vowel row is the standalone vowel.
inline constexpr std::size_t kRowLength = 27;
inline constexpr std::size_t kRows = 7;
inline constexpr std::size_t kSlots = kRowLength * kRows;  // 189
inline constexpr std::size_t kMaxInputBytes = 1024;
inline constexpr std::uint32_t kMaxPrintableCount = '~' - '0';  // 78

/// Row index (1..6) of a lowercase vowel, or 0 for anything else.
constexpr std::size_t vowel_row(char c) noexcept {
    switch (c) {
        case 'a': return 1;
        case 'i': return 2;
        case 'u': return 3;
        case 'e': return 4;
        case 'o': return 5;
        case 'y': return 6;
        default: return 0;
    }
}

/// True for the 43 slots no input can ever reach.
constexpr bool is_structural_zero(std::size_t slot) noexcept {
    const std::size_t row = slot / kRowLength;
    const std::size_t col = slot % kRowLength;
    if (col == kRowLength - 1) return true;  // overflow column
    const bool vowel_col = col == 4 || col == 8 || col == 14 || col == 20 || col == 24;
    if (row == 0) return col == 0 || vowel_col;
    return vowel_col;
}

/// Bag of synthetic syllables: occurrence count per slot.
class CountVector {
public:
    using value_type = std::uint32_t;

    constexpr CountVector() noexcept : counts_{} {}

    constexpr value_type& operator[](std::size_t i) noexcept { return counts_[i]; }
    constexpr value_type operator[](std::size_t i) const noexcept { return counts_[i]; }

    constexpr auto begin() const noexcept { return counts_.begin(); }
    constexpr auto end() const noexcept { return counts_.end(); }
    constexpr auto begin() noexcept { return counts_.begin(); }
    constexpr auto end() noexcept { return counts_.end(); }
    static constexpr std::size_t size() noexcept { return kSlots; }
    const value_type* data() const noexcept { return counts_.data(); }

    bool is_zero() const noexcept;

    CountVector& operator+=(const CountVector& other) noexcept;
    friend CountVector operator+(CountVector a, const CountVector& b) noexcept { return a += b; }

    friend bool operator==(const CountVector&, const CountVector&) = default;

private:
    std::array<value_type, kSlots> counts_;
};

class MalformedHash : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Hashes the first kMaxInputBytes of `text`. Non-letters delimit words.
CountVector build_hash(std::string_view text) noexcept;

/// 189 printable characters, '0' + count per slot, saturated at '~'.
std::string serialize_hash(const CountVector& v);

/// Inverse of serialize_hash. Throws MalformedHash.
CountVector parse_hash(std::string_view text);

/// True if `text` has the shape of a serialized hash (length and charset).
bool looks_like_hash(std::string_view text) noexcept;

}  // namespace boss

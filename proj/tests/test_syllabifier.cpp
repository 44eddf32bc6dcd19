#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "boss/syllabifier.hpp"
#include "oracle.hpp"

using namespace boss;
using namespace boss::testing;

namespace {

std::size_t letters_in_prefix(std::string_view s) {
    s = s.substr(0, std::min<std::size_t>(s.size(), kMaxInputBytes));
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), is_letter));
}

std::size_t weighted_mass(const CountVector& v) {
    std::size_t m = 0;
    for (std::size_t i = 0; i < kSlots; ++i) {
        const bool two_letter = i >= kRowLength && i % kRowLength != 0;
        m += (two_letter ? 2 : 1) * v[i];
    }
    return m;
}

std::string upper(std::string s) {
    for (auto& c : s) {
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    return s;
}

constexpr int kCases = 10000;

}  // namespace

TEST_CASE("worked example hashes") {
    CHECK(serialize_hash(build_hash(kDonald)) == kDonaldHash);
    CHECK(serialize_hash(build_hash(kVulindlela)) == kVulindlelaHash);
    CHECK(build_hash("DoNaLd: SPRUCING up for SPRING") == build_hash(kDonald));
}

TEST_CASE("tree splits into t, re, e") {
    const CountVector v = build_hash("tree");
    CHECK(v[19] == 1);
    CHECK(v[4 * 27 + 17] == 1);
    CHECK(v[4 * 27] == 1);
    CHECK(std::accumulate(v.begin(), v.end(), 0u) == 3);
}

TEST_CASE("empty and letterless input") {
    CHECK(build_hash("").is_zero());
    CHECK(build_hash("1234 !?:; \xc3\xa9\xc3\xa0").is_zero());
}

TEST_CASE("pending consonant at end of input is counted once") {
    // "spring" ends on a pending 'g'; the flush must add exactly one.
    const CountVector v = build_hash("ng");
    CHECK(v[13] == 1);
    CHECK(v[6] == 1);
    CHECK(std::accumulate(v.begin(), v.end(), 0u) == 2);
}

TEST_CASE("vowel rows") {
    CHECK(build_hash("a")[27] == 1);
    CHECK(build_hash("i")[54] == 1);
    CHECK(build_hash("u")[81] == 1);
    CHECK(build_hash("e")[108] == 1);
    CHECK(build_hash("o")[135] == 1);
    CHECK(build_hash("y")[162] == 1);
    CHECK(build_hash("zy")[162 + 25] == 1);
    CHECK(build_hash("ya")[162] == 1);  // y is a vowel, so "ya" is two lone vowels
    CHECK(build_hash("ya")[27] == 1);
}

TEST_CASE("input truncated at 1024 bytes") {
    const std::string head(1024, 'b');
    CHECK(build_hash(head + "a") == build_hash(head));
    CHECK(build_hash(head)[1] == 1024);
}

TEST_CASE("serialize") {
    CHECK(serialize_hash(CountVector{}) == std::string(kSlots, '0'));
    CountVector v;
    v[5] = 100;
    v[6] = 78;
    v[7] = 9;
    const std::string s = serialize_hash(v);
    CHECK(s[5] == '~');
    CHECK(s[6] == '~');
    CHECK(s[7] == '9');
}

TEST_CASE("parse") {
    CHECK(parse_hash(std::string(kSlots, '0')).is_zero());

    const CountVector v = parse_hash(kDonaldHash);
    const std::pair<std::size_t, std::uint32_t> expected[] = {
        {3, 1},  {6, 2},  {11, 1}, {13, 2}, {15, 3}, {17, 1}, {18, 2},
        {40, 1}, {56, 1}, {71, 1}, {81, 1}, {98, 1}, {138, 1}, {140, 1}};
    CountVector want;
    for (auto [slot, count] : expected) want[slot] = count;
    CHECK(v == want);

    CHECK_THROWS_AS(parse_hash(std::string(188, '0')), MalformedHash);
    CHECK_THROWS_AS(parse_hash(std::string(190, '0')), MalformedHash);
    std::string bad(kSlots, '0');
    bad[10] = '/';
    CHECK_THROWS_AS(parse_hash(bad), MalformedHash);
    bad[10] = '\x7f';
    CHECK_THROWS_AS(parse_hash(bad), MalformedHash);
}

TEST_CASE("structural zero table has 43 slots") {
    std::size_t n = 0;
    for (std::size_t i = 0; i < kSlots; ++i) n += is_structural_zero(i) ? 1 : 0;
    CHECK(n == 43);
    CHECK_FALSE(is_structural_zero(27));  // standalone 'a'
    CHECK(is_structural_zero(0));
    CHECK(is_structural_zero(27 + 4));  // "ea" is two syllables
}

TEST_CASE("property: oracle equivalence, letter conservation, structural zeros") {
    Gen g(0xB055);
    for (int i = 0; i < kCases; ++i) {
        const std::string s = g.bytes(i % 10 == 0 ? 1500 : 120);
        const CountVector v = build_hash(s);
        REQUIRE(v == oracle_hash(s));
        REQUIRE(weighted_mass(v) == letters_in_prefix(s));
        for (std::size_t slot = 0; slot < kSlots; ++slot) {
            if (is_structural_zero(slot)) REQUIRE(v[slot] == 0);
        }
    }
}

TEST_CASE("property: word permutation, additivity, case, delimiters") {
    Gen g(42);
    for (int i = 0; i < kCases; ++i) {
        auto words = g.words(8);
        const std::string text = join(words);
        const CountVector v = build_hash(text);

        std::shuffle(words.begin(), words.end(), g.engine());
        REQUIRE(build_hash(join(words)) == v);

        const std::string other = g.bytes(60);
        REQUIRE(build_hash(text + " " + other) == v + build_hash(other));

        REQUIRE(build_hash(upper(text)) == v);

        std::string spaced;
        for (std::size_t w = 0; w < words.size(); ++w) spaced += g.delimiter_run() + words[w];
        spaced += g.delimiter_run();
        REQUIRE(build_hash(spaced) == build_hash(join(words)));
    }
}

TEST_CASE("property: serialize/parse round trip") {
    Gen g(7);
    for (int i = 0; i < kCases; ++i) {
        const CountVector v = g.vector(kMaxPrintableCount, g.unit());
        const std::string s = serialize_hash(v);
        REQUIRE(looks_like_hash(s));
        REQUIRE(parse_hash(s) == v);
    }
}

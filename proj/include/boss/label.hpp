#pragma once

#include <optional>
#include <string_view>

namespace boss {

enum class Label { spam, ham, unknown };

constexpr std::string_view to_string(Label l) noexcept {
    switch (l) {
        case Label::spam: return "spam";
        case Label::ham: return "ham";
        case Label::unknown: return "unknown";
    }
    return "unknown";
}

constexpr std::optional<Label> parse_label(std::string_view s) noexcept {
    if (s == "spam") return Label::spam;
    if (s == "ham") return Label::ham;
    if (s == "unknown") return Label::unknown;
    return std::nullopt;
}

constexpr bool is_definite(Label l) noexcept { return l != Label::unknown; }

}  // namespace boss

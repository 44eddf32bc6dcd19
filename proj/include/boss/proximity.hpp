#pragma once

#include <cstdint>
#include <optional>

#include "boss/syllabifier.hpp"

namespace boss {

struct ProximityParams {
    double t_cos = 0.87;
    double t_euc = 6.0;

    /// Throws std::invalid_argument unless 0 <= t_cos <= 1 and t_euc >= 0.
    void validate() const;
};

/// Exact integer sums over a pair of vectors.
struct PairMoments {
    std::int64_t dot = 0;
    std::int64_t norm2_a = 0;
    std::int64_t norm2_b = 0;
    std::int64_t dist2 = 0;
};

PairMoments pair_moments(const CountVector& a, const CountVector& b) noexcept;

/// Cosine similarity; nullopt when either vector has zero norm.
std::optional<double> cosine(const CountVector& a, const CountVector& b) noexcept;

double euclidean(const CountVector& a, const CountVector& b) noexcept;

/// Dual-threshold test evaluated on squared quantities:
/// dot^2 / (|a|^2 |b|^2) > t_cos^2 and |a-b|^2 < t_euc^2.
/// Zero-norm input never matches.
bool proximity_flag(const PairMoments& m, const ProximityParams& p) noexcept;
bool proximity_flag(const CountVector& a, const CountVector& b, const ProximityParams& p) noexcept;

}  // namespace boss

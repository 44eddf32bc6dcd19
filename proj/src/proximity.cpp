#include "boss/proximity.hpp"

#include <cmath>
#include <stdexcept>

namespace boss {

void ProximityParams::validate() const {
    if (!(t_cos >= 0.0 && t_cos <= 1.0)) throw std::invalid_argument("t_cos must lie in [0, 1]");
    if (!(t_euc >= 0.0)) throw std::invalid_argument("t_euc must be non-negative");
}

PairMoments pair_moments(const CountVector& a, const CountVector& b) noexcept {
    PairMoments m;
    for (std::size_t i = 0; i < kSlots; ++i) {
        const std::int64_t x = a[i];
        const std::int64_t y = b[i];
        m.dot += x * y;
        m.norm2_a += x * x;
        m.norm2_b += y * y;
        m.dist2 += (x - y) * (x - y);
    }
    return m;
}

std::optional<double> cosine(const CountVector& a, const CountVector& b) noexcept {
    const PairMoments m = pair_moments(a, b);
    if (m.norm2_a == 0 || m.norm2_b == 0) return std::nullopt;
    return static_cast<double>(m.dot) /
           std::sqrt(static_cast<double>(m.norm2_a) * static_cast<double>(m.norm2_b));
}

double euclidean(const CountVector& a, const CountVector& b) noexcept {
    return std::sqrt(static_cast<double>(pair_moments(a, b).dist2));
}

bool proximity_flag(const PairMoments& m, const ProximityParams& p) noexcept {
    if (m.norm2_a == 0 || m.norm2_b == 0) return false;
    const double dot = static_cast<double>(m.dot);
    const double cos2 = dot * dot / (static_cast<double>(m.norm2_a) * static_cast<double>(m.norm2_b));
    return cos2 > p.t_cos * p.t_cos && static_cast<double>(m.dist2) < p.t_euc * p.t_euc;
}

bool proximity_flag(const CountVector& a, const CountVector& b, const ProximityParams& p) noexcept {
    return proximity_flag(pair_moments(a, b), p);
}

}  // namespace boss

#include "boss/kernels.hpp"

#include <algorithm>
#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boss::kernels {

namespace {

struct SparseQuery {
    std::size_t nnz = 0;
    std::uint16_t slot[kSlots];
    std::uint64_t count[kSlots];
};

SparseQuery compress(const CountVector& q) noexcept {
    SparseQuery s;
    for (std::size_t i = 0; i < kSlots; ++i) {
        if (q[i] != 0) {
            s.slot[s.nnz] = static_cast<std::uint16_t>(i);
            s.count[s.nnz] = q[i];
            ++s.nnz;
        }
    }
    return s;
}

void dot_range(const SparseQuery& q, EntryMatrixView m, std::uint64_t* dots, std::size_t begin,
               std::size_t end) noexcept {
    std::fill(dots + begin, dots + end, 0);
    for (std::size_t k = 0; k < q.nnz; ++k) {
        const std::uint64_t weight = q.count[k];
        const std::uint32_t* col = m.column(q.slot[k]);
        for (std::size_t e = begin; e < end; ++e) dots[e] += weight * col[e];
    }
}

}  // namespace

std::vector<CountVector> hash_batch_serial(std::span<const std::string_view> texts) {
    std::vector<CountVector> out(texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) out[i] = build_hash(texts[i]);
    return out;
}

std::vector<CountVector> hash_batch_parallel(std::span<const std::string_view> texts) {
    std::vector<CountVector> out(texts.size());
    const auto n = static_cast<std::ptrdiff_t>(texts.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = build_hash(texts[i]);
    return out;
}

void dot_scan_serial(const CountVector& query, EntryMatrixView m, std::span<std::uint64_t> dots) {
    assert(dots.size() >= m.entries);
    const SparseQuery q = compress(query);
    dot_range(q, m, dots.data(), 0, m.entries);
}

void dot_scan_parallel(const CountVector& query, EntryMatrixView m, std::span<std::uint64_t> dots) {
    assert(dots.size() >= m.entries);
    const SparseQuery q = compress(query);
    // Blocks of entries keep each thread's writes on its own cache lines.
    constexpr std::size_t kBlock = 256;
    const auto blocks = static_cast<std::ptrdiff_t>((m.entries + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
        const std::size_t end = std::min(begin + kBlock, m.entries);
        dot_range(q, m, dots.data(), begin, end);
    }
}

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace boss::kernels

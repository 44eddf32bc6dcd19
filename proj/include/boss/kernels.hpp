#pragma once

// Data-parallel inner loops. Each kernel has a plain serial form, kept as the
// reference the OpenMP form is tested against and benchmarked next to.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "boss/syllabifier.hpp"

namespace boss::kernels {

std::vector<CountVector> hash_batch_serial(std::span<const std::string_view> texts);
std::vector<CountVector> hash_batch_parallel(std::span<const std::string_view> texts);

/// Slot-major matrix of stored vectors: column(slot)[entry] is the count of
/// `slot` in stored entry `entry`. `stride` is the allocated entry capacity.
struct EntryMatrixView {
    const std::uint32_t* columns = nullptr;
    std::size_t stride = 0;
    std::size_t entries = 0;

    const std::uint32_t* column(std::size_t slot) const noexcept { return columns + slot * stride; }
};

/// dots[e] = query . entry(e) for every stored entry. Walks only the
/// query's nonzero slots, so cost is O(nnz(query) * entries).
void dot_scan_serial(const CountVector& query, EntryMatrixView m, std::span<std::uint64_t> dots);
void dot_scan_parallel(const CountVector& query, EntryMatrixView m, std::span<std::uint64_t> dots);

/// Number of threads the parallel kernels will use.
int max_threads() noexcept;

}  // namespace boss::kernels

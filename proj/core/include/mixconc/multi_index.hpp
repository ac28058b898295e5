#pragma once

// Mixed-radix addressing of S^k. Coordinate 1 is the most significant digit,
// so a cell index is sum_l x_l * |S|^(k-l) and row-major order matches the
// lexicographic order of sequences.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mixconc {

inline constexpr std::uint64_t kDefaultCellBudget = std::uint64_t{1} << 24;

/// radix^length, saturating at UINT64_MAX.
std::uint64_t saturating_power(std::uint64_t radix, std::uint64_t length) noexcept;

/// radix^length as a cell count; throws CapacityError when it exceeds budget.
std::size_t checked_cell_count(std::size_t radix, std::size_t length, std::uint64_t budget,
                               const char* what = "dense array");

/// Unchecked radix^length for sizes already known to fit.
std::size_t cell_count(std::size_t radix, std::size_t length) noexcept;

std::size_t encode(std::span<const std::size_t> digits, std::size_t radix);
void decode(std::size_t index, std::size_t radix, std::span<std::size_t> digits);
std::vector<std::size_t> decode(std::size_t index, std::size_t radix, std::size_t length);

}  // namespace mixconc

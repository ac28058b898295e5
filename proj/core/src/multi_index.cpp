#include "mixconc/multi_index.hpp"

#include <limits>
#include <string>

#include "mixconc/error.hpp"

namespace mixconc {

std::uint64_t saturating_power(std::uint64_t radix, std::uint64_t length) noexcept {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::uint64_t l = 0; l < length; ++l) {
    if (radix != 0 && result > kMax / radix) return kMax;
    result *= radix;
  }
  return result;
}

std::size_t checked_cell_count(std::size_t radix, std::size_t length, std::uint64_t budget,
                               const char* what) {
  const std::uint64_t cells = saturating_power(radix, length);
  if (cells > budget) {
    throw CapacityError(std::string(what) + ": " + std::to_string(radix) + "^" +
                            std::to_string(length) + " cells exceed the budget of " +
                            std::to_string(budget),
                        cells, budget);
  }
  return static_cast<std::size_t>(cells);
}

std::size_t cell_count(std::size_t radix, std::size_t length) noexcept {
  std::size_t result = 1;
  for (std::size_t l = 0; l < length; ++l) result *= radix;
  return result;
}

std::size_t encode(std::span<const std::size_t> digits, std::size_t radix) {
  std::size_t index = 0;
  for (std::size_t d : digits) {
    if (d >= radix) throw ValidationError("symbol index out of range in multi-index");
    index = index * radix + d;
  }
  return index;
}

void decode(std::size_t index, std::size_t radix, std::span<std::size_t> digits) {
  for (std::size_t l = digits.size(); l-- > 0;) {
    digits[l] = index % radix;
    index /= radix;
  }
}

std::vector<std::size_t> decode(std::size_t index, std::size_t radix, std::size_t length) {
  std::vector<std::size_t> digits(length);
  decode(index, radix, digits);
  return digits;
}

}  // namespace mixconc

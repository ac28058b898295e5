#include "mixconc/lipschitz.hpp"

#include <algorithm>
#include <cmath>

#include "mixconc/error.hpp"
#include "mixconc/multi_index.hpp"

namespace mixconc {

std::size_t hamming_distance(std::span<const std::size_t> x, std::span<const std::size_t> y) {
  if (x.size() != y.size()) throw ValidationError("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t k = 0; k < x.size(); ++k) d += x[k] != y[k];
  return d;
}

double lipschitz_constant(std::size_t radix, std::size_t length, std::span<const double> values) {
  if (values.size() != cell_count(radix, length)) {
    throw ValidationError("lipschitz_constant: value array does not cover S^n");
  }
  double c = 0.0;
  std::size_t place = 1;
  for (std::size_t pos = 0; pos < length; ++pos, place *= radix) {
    for (std::size_t cell = 0; cell < values.size(); ++cell) {
      const std::size_t digit = (cell / place) % radix;
      // Compare with every larger symbol at this coordinate; smaller ones were
      // visited from the other side.
      for (std::size_t other = digit + 1; other < radix; ++other) {
        const std::size_t neighbour = cell + (other - digit) * place;
        c = std::max(c, std::abs(values[cell] - values[neighbour]));
      }
    }
  }
  return c;
}

LipschitzFn::LipschitzFn(std::size_t radix, std::size_t length, std::vector<double> values)
    : radix_(radix), length_(length), values_(std::move(values)) {
  if (radix_ == 0) throw ValidationError("lipschitz function over an empty alphabet");
  if (saturating_power(radix_, length_) != values_.size()) {
    throw ValidationError("lipschitz function: value array does not cover S^n");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("lipschitz function: non-finite value");
  }
  lipschitz_ = lipschitz_constant(radix_, length_, values_);
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  min_ = *lo;
  max_ = *hi;
}

double LipschitzFn::evaluate(std::span<const std::size_t> sequence) const {
  if (sequence.size() != length_) throw ValidationError("sequence length does not match function");
  return values_[encode(sequence, radix_)];
}

}  // namespace mixconc

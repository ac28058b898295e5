#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mixconc {

/// Unnormalized Hamming distance: the number of coordinates that differ.
std::size_t hamming_distance(std::span<const std::size_t> x, std::span<const std::size_t> y);

/// Smallest c with |f(x) - f(y)| <= c d(x, y). Hamming is a path metric on
/// S^k, so only pairs at distance 1 need to be inspected.
double lipschitz_constant(std::size_t radix, std::size_t length, std::span<const double> values);

/// A real function on S^n with its certified Hamming Lipschitz constant.
class LipschitzFn {
 public:
  LipschitzFn(std::size_t radix, std::size_t length, std::vector<double> values);

  std::size_t radix() const noexcept { return radix_; }
  std::size_t length() const noexcept { return length_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t cell) const { return values_[cell]; }
  double evaluate(std::span<const std::size_t> sequence) const;

  double lipschitz_const() const noexcept { return lipschitz_; }
  double min_value() const noexcept { return min_; }
  double max_value() const noexcept { return max_; }

  /// The same constant with respect to the normalized metric d / n.
  double normalized_lipschitz_const() const noexcept {
    return lipschitz_ * static_cast<double>(length_);
  }

 private:
  std::size_t radix_;
  std::size_t length_;
  std::vector<double> values_;
  double lipschitz_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

}  // namespace mixconc

#pragma once

// Named functionals of a path: "hamming-weight:<symbol>", "bar:<rows>" and
// "table" (an explicit array over S^n).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixconc/lipschitz.hpp"
#include "mixconc/process.hpp"

namespace mixconc {

class Functional {
 public:
  enum class Kind { hamming_weight, bar, table };

  /// Count of `symbol` along the path.
  static Functional hamming_weight(const Alphabet& alphabet, std::size_t n, std::string_view symbol);
  /// BAR function given as one 0/1 string of |S| characters per position.
  static Functional bar(const Alphabet& alphabet, std::size_t n, std::span<const std::string> rows);
  static Functional table(const Alphabet& alphabet, std::size_t n, std::vector<double> values);

  /// "hamming-weight:<symbol>" or "bar:<row>,<row>,...".
  static Functional parse(std::string_view text, const Alphabet& alphabet, std::size_t n);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t radix() const noexcept { return radix_; }

  double evaluate(std::span<const std::size_t> x) const;
  template <typename Symbol>
  double evaluate_path(std::span<const Symbol> x) const {
    if (weights_) {
      double total = 0.0;
      for (std::size_t l = 0; l < n_; ++l) total += (*weights_)[l * radix_ + x[l]];
      return total;
    }
    std::size_t cell = 0;
    for (std::size_t l = 0; l < n_; ++l) cell = cell * radix_ + x[l];
    return values_[cell];
  }

  /// Hamming Lipschitz constant (exact).
  double lipschitz_const() const noexcept { return lipschitz_; }
  double min_value() const noexcept { return min_; }
  double max_value() const noexcept { return max_; }

  /// Per-position weights w_l(s) when phi(x) = sum_l w_l(x_l), row-major n x |S|.
  const std::optional<std::vector<double>>& additive_weights() const noexcept { return weights_; }

  /// The function tabulated over S^n.
  LipschitzFn tabulate(std::uint64_t cell_budget = kDefaultCellBudget) const;

 private:
  Functional(Kind kind, std::string name, std::size_t radix, std::size_t n);
  void finish_additive(std::vector<double> weights);

  Kind kind_;
  std::string name_;
  std::size_t radix_;
  std::size_t n_;
  std::optional<std::vector<double>> weights_;
  std::vector<double> values_;
  double lipschitz_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

}  // namespace mixconc

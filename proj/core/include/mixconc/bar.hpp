#pragma once

// Binary additive representation (BAR) functions phi(x) = sum_l mu_l(x_l) for
// Markov measures: the sign-function recursion, the construction of mu_l, and
// the extremality check for martingale differences.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixconc/lipschitz.hpp"
#include "mixconc/multi_index.hpp"
#include "mixconc/process.hpp"

namespace mixconc {

/// Sign functions of the Markov-induced kernel kappa[z^i], pushed forward
/// through the chain. levels[0] is the seed at position i:
/// sigma(y) = 1{y = z_i} - P(X_i = y | X_{i-1} = z_{i-1}) (p0 when i = 1), and
/// levels[k] = levels[k-1] P^(i+k-1) is the one attached to position i+k.
struct SignSequence {
  std::size_t start = 1;
  std::vector<std::vector<double>> levels;
};

SignSequence sign_sequence(const MarkovSpec& spec, std::span<const std::size_t> z, double sign = 1.0);
SignSequence sign_sequence(const MarkovSpec& spec, std::size_t z);

class BarFunction {
 public:
  /// bits is row-major n x |S|: bits[(l-1)*|S| + s] = mu_l(s).
  BarFunction(std::size_t radix, std::size_t n, std::vector<std::uint8_t> bits);

  /// One 0/1 string of |S| characters per position.
  static BarFunction parse(std::span<const std::string> rows);

  std::size_t radix() const noexcept { return radix_; }
  std::size_t n() const noexcept { return n_; }
  bool bit(std::size_t position, std::size_t symbol) const { return bits_[(position - 1) * radix_ + symbol] != 0; }

  double evaluate(std::span<const std::size_t> x) const;
  std::vector<std::string> rows() const;
  LipschitzFn to_lipschitz(std::uint64_t cell_budget = kDefaultCellBudget) const;

 private:
  std::size_t radix_;
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

/// mu_l(x) = 1{sigma_l(x) > threshold} for l >= i, and mu_l = 0 for l < i.
BarFunction build_bar(const MarkovSpec& spec, std::span<const std::size_t> z, double sign = 1.0,
                      double threshold = 0.0);
BarFunction build_bar(const MarkovSpec& spec, std::size_t z, double threshold = 0.0);

struct ExtremalEntry {
  std::vector<std::size_t> z;
  /// Psi-norm of kappa[z^i] after reduction by z^{i-1}.
  double psi_norm = 0.0;
  /// Psi-norm of the unreduced kappa[z^i] on S^n.
  double psi_norm_unreduced = 0.0;
  /// Phi-norm of the reduced kernel.
  double phi_norm = 0.0;
  std::string phi_route;
  /// V_i(phi-bar; z^i) for the reported BAR function.
  double bar_value = 0.0;
  /// <T kappa[z], T phi-bar_z> - Psi(s T kappa[z]) for the BAR built from z itself.
  double own_bar_gap = 0.0;
};

struct ExtremalReport {
  std::size_t i = 1;
  /// ||V_i(phi-bar)||_inf.
  double lhs = 0.0;
  /// max_z of the reduced Psi-norm.
  double rhs = 0.0;
  double gap = 0.0;
  double max_phi_norm = 0.0;
  bool dominates_phi = false;
  bool full_support = false;
  std::vector<std::size_t> argmax_z;
  int sign = 1;
  std::optional<BarFunction> bar;
  std::vector<ExtremalEntry> entries;
  std::vector<std::string> warnings;
};

struct ExtremalBudgets {
  std::uint64_t cells = kDefaultCellBudget;
  std::uint64_t oracle = kDefaultCellBudget;
};

ExtremalReport verify_extremal(const MarkovSpec& spec, std::size_t i, ExtremalBudgets budgets = {});

/// 2^(n |S|), the number of BAR representations; requires n |S| <= 62.
std::uint64_t bar_count(std::size_t n, std::size_t alphabet_size);

/// Generates every bit tuple and counts those that pass the 1-Lipschitz and
/// range [0, n] checks.
std::uint64_t count_bar_representations(std::size_t n, std::size_t alphabet_size);

/// The number of distinct functions among all BAR representations.
std::uint64_t count_distinct_bar_functions(std::size_t n, std::size_t alphabet_size);

}  // namespace mixconc

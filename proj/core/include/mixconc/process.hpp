#pragma once

// Finite-alphabet processes: explicit joint laws on S^n, inhomogeneous Markov
// chains and hidden Markov chains, together with conditional laws, total
// variation and m-truncation.
//
// Positions in a sequence are 1-based throughout the library (X_1 .. X_n).
// Symbols are addressed by their 0-based index in the Alphabet.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mixconc/multi_index.hpp"

namespace mixconc {

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kPositiveProbability = 1e-300;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  /// Symbols "<prefix>1", ..., "<prefix>size".
  static Alphabet indexed(std::size_t size, std::string_view prefix = "s");

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& label(std::size_t index) const;
  std::size_t index_of(std::string_view label) const;
  bool contains(std::string_view label) const;
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  /// The first m symbols, S_m.
  Alphabet first(std::size_t m) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// A probability mass function on S^k stored densely in row-major order.
class Pmf {
 public:
  Pmf(Alphabet alphabet, std::size_t length, std::vector<double> mass);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t radix() const noexcept { return alphabet_.size(); }
  std::size_t length() const noexcept { return length_; }
  std::size_t cells() const noexcept { return mass_.size(); }
  std::span<const double> mass() const noexcept { return mass_; }
  double operator[](std::size_t cell) const { return mass_[cell]; }
  double at(std::span<const std::size_t> sequence) const;

 private:
  Alphabet alphabet_;
  std::size_t length_;
  std::vector<double> mass_;
};

/// The law of (X_1, ..., X_n) on S^n.
class JointDist : public Pmf {
 public:
  JointDist(Alphabet alphabet, std::size_t n, std::vector<double> mass);
  explicit JointDist(Pmf pmf);

  std::size_t n() const noexcept { return length(); }
};

/// Row-stochastic matrix, row-major. Rows index the conditioning state.
class StochasticMatrix {
 public:
  StochasticMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  static StochasticMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static StochasticMatrix identity(std::size_t size);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> data() const noexcept { return data_; }
  bool strictly_positive() const noexcept;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct MarkovSpec {
  Alphabet alphabet;
  std::size_t n = 1;
  std::vector<double> p0;
  /// n-1 kernels, or exactly one when homogeneous.
  std::vector<StochasticMatrix> kernels;
  bool homogeneous = false;

  /// Transition matrix P^(step) from X_step to X_{step+1}, 1 <= step <= n-1.
  const StochasticMatrix& kernel(std::size_t step) const;
  bool full_support() const;
  void validate() const;

  static MarkovSpec homogeneous_chain(Alphabet alphabet, std::size_t n, std::vector<double> p0,
                                      StochasticMatrix kernel);
};

struct HmmSpec {
  MarkovSpec hidden;
  Alphabet observed;
  /// n emission matrices (hidden rows, observed columns), or one when homogeneous.
  std::vector<StochasticMatrix> emissions;
  bool homogeneous_emissions = false;

  std::size_t n() const noexcept { return hidden.n; }
  /// Emission kernel q_step, 1 <= step <= n.
  const StochasticMatrix& emission(std::size_t step) const;
  void validate() const;
};

struct HmmJoint {
  /// Law nu on (hidden x observed)^n; pair symbol index = hidden * |S| + observed.
  JointDist pair;
  /// The observed marginal rho on S^n.
  JointDist observed;
};

JointDist build_markov_joint(const MarkovSpec& spec, std::uint64_t cell_budget = kDefaultCellBudget);
HmmJoint build_hmm_joint(const HmmSpec& spec, std::uint64_t cell_budget = kDefaultCellBudget);

/// P(X^i = prefix) where i = prefix.size(); 1 for the empty prefix.
double prefix_probability(const JointDist& dist, std::span<const std::size_t> prefix);

/// Array over S^i of P(X^i = x^i).
std::vector<double> prefix_marginal(const JointDist& dist, std::size_t i);

/// L(X_from^n | X^i = prefix) with i = prefix.size() < from <= n. Coordinates
/// strictly between i and `from` are summed out.
Pmf conditional(const JointDist& dist, std::span<const std::size_t> prefix, std::size_t from);

/// Half the l1 distance; the positive-part form is checked against it.
double tv_distance(const Pmf& p, const Pmf& q);
double tv_distance(std::span<const double> p, std::span<const double> q);

/// m-truncation onto S_m^n: mass outside S_m^n is moved to (s_m, ..., s_m).
JointDist truncate(const JointDist& dist, std::size_t m);

/// Total mass outside S_m^n.
double mass_outside(const JointDist& dist, std::size_t m);

/// Re-express a law on a sub-alphabet over a super-alphabet (matched by label).
JointDist embed(const JointDist& dist, const Alphabet& super);

std::string format_sequence(const Alphabet& alphabet, std::span<const std::size_t> sequence);

}  // namespace mixconc

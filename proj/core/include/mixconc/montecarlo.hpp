#pragma once

// Forward sampling of Markov and hidden Markov chains, empirical deviation
// tails with one-sided confidence bounds, and comparison with certificates.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixconc/certificate.hpp"
#include "mixconc/functional.hpp"
#include "mixconc/process.hpp"

namespace mixconc {

struct PathBatch {
  std::size_t n = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  /// count x n symbol indices, row-major.
  std::vector<std::uint16_t> symbols;

  std::span<const std::uint16_t> path(std::size_t k) const { return {symbols.data() + k * n, n}; }
};

/// Path k depends only on (seed, k); workers = 0 picks the hardware concurrency.
PathBatch sample_paths(const MarkovSpec& spec, std::uint64_t seed, std::size_t count,
                       unsigned workers = 0);
/// Observed paths of the hidden chain.
PathBatch sample_paths(const HmmSpec& spec, std::uint64_t seed, std::size_t count,
                       unsigned workers = 0);

/// E phi by enumeration of the joint.
double exact_mean(const JointDist& dist, const Functional& phi);
/// E phi by enumeration when |S|^n fits the budget; additive functionals use the
/// one-dimensional marginals instead, so they work at any n.
double exact_mean(const MarkovSpec& spec, const Functional& phi, std::uint64_t cell_budget = kDefaultCellBudget);
double exact_mean(const HmmSpec& spec, const Functional& phi, std::uint64_t cell_budget = kDefaultCellBudget);

/// P{|phi - mean| >= t} by enumeration.
double exact_tail(const JointDist& dist, const Functional& phi, double mean, double t);

enum class MeanMode { exact, plug_in };
std::string_view to_string(MeanMode mode);

struct MeanSpec {
  MeanMode mode = MeanMode::plug_in;
  double value = 0.0;

  static MeanSpec exact(double value) { return {MeanMode::exact, value}; }
  static MeanSpec plug_in() { return {MeanMode::plug_in, 0.0}; }
};

struct TailEstimate {
  std::vector<double> t_grid;
  std::vector<double> empirical;
  /// One-sided upper confidence bounds at level `confidence`.
  std::vector<double> upper_conf;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::string functional;
  double lipschitz_const = 0.0;
  MeanMode mean_mode = MeanMode::exact;
  double mean = 0.0;
  /// Half-width of the confidence interval on the mean (0 for an exact mean).
  double mean_radius = 0.0;
  double confidence = 0.95;
};

/// Exact mean: Clopper-Pearson upper bound on the tail count at level
/// `confidence`. Plug-in mean: the error budget is split between a Hoeffding
/// interval on the mean and the Clopper-Pearson bound, counted at t - radius.
TailEstimate empirical_tail(const PathBatch& paths, const Functional& phi, std::span<const double> t_grid,
                            MeanSpec mean, double confidence = 0.95);

/// One-sided Clopper-Pearson upper limit for `successes` out of `trials`.
double binomial_upper_bound(std::size_t trials, std::size_t successes, double confidence);

struct TailComparisonRow {
  double t = 0.0;
  double empirical = 0.0;
  double upper_conf = 0.0;
  double bound = 0.0;
  double effective = 0.0;
  bool pass = true;
};

struct TailComparison {
  std::vector<TailComparisonRow> rows;
  bool pass = true;
  /// First t where the upper confidence bound exceeds the certified bound.
  std::optional<double> first_failure;
};

/// Per-t verdict upper_conf <= bound. Throws ConventionError when the certificate
/// is for another n or does not cover the functional's Lipschitz constant.
TailComparison compare(const TailEstimate& estimate, const Certificate& certificate);

}  // namespace mixconc

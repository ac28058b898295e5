#pragma once

// Exact Phi-norm: the maximum of |<kappa, phi>| over 1-Lipschitz phi on S^k
// with range [0, k]. The Lipschitz polytope has integral vertices, so the
// search runs over integer-valued functions into {0, ..., k}.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "mixconc/kernel.hpp"
#include "mixconc/lipschitz.hpp"
#include "mixconc/multi_index.hpp"

namespace mixconc {

struct PhiNormResult {
  double value = 0.0;
  /// A maximizer; <kappa, argmax> = sign * value.
  LipschitzFn argmax;
  int sign = 1;
  /// Integer Lipschitz functions inspected (enumeration route) or graph nodes (max-flow route).
  std::uint64_t visited = 0;
};

/// (k+1)^(|S|^k), saturating: the size of the raw candidate space.
std::uint64_t oracle_candidate_count(std::size_t radix, std::size_t length);

/// Calls visit(values) for every integer 1-Lipschitz function S^k -> {0..k}, in
/// lexicographic order of the value array. Throws CapacityError when the raw
/// candidate space exceeds budget.
void for_each_lipschitz_vertex(std::size_t radix, std::size_t length, std::uint64_t budget,
                               const std::function<void(std::span<const double>)>& visit);

/// Exhaustive enumeration; ties go to the first maximizer in enumeration order.
PhiNormResult phi_norm_oracle(const KernelFn& kappa, std::uint64_t budget = kDefaultCellBudget);

/// The same maximum via a maximum-weight closure (min-cut) on the level graph
/// {(x, t) : phi(x) >= t}. Polynomial in |S|^k, so usable past the enumeration budget.
PhiNormResult phi_norm_maxflow(const KernelFn& kappa, std::uint64_t cell_budget = kDefaultCellBudget);

}  // namespace mixconc

#pragma once

// Mixing coefficients of a joint law (eta, eta-bar, the Delta_n matrix) and
// the contraction-coefficient surrogates for Markov and hidden Markov chains.

#include <cstddef>
#include <span>
#include <vector>

#include "mixconc/process.hpp"

namespace mixconc {

struct MixingProfile {
  std::size_t n = 0;
  /// Delta_n, row-major n x n: unit diagonal, eta-bar above, zero below.
  std::vector<double> eta_bar;
  /// H_{n,i} = 1 + sum_{j>i} eta-bar_ij, for i = 1..n.
  std::vector<double> h_rows;
  /// ||Delta_n||_inf = max_i H_{n,i}.
  double inf_norm = 1.0;

  /// Entry (i, j) of Delta_n, 1-based.
  double at(std::size_t i, std::size_t j) const { return eta_bar[(i - 1) * n + (j - 1)]; }
};

struct ContractionProfile {
  std::size_t n = 0;
  /// theta_1 .. theta_{n-1}.
  std::vector<double> thetas;
  double m_n = 1.0;
};

/// TV distance between L(X_j^n | X^i = y w) and L(X_j^n | X^i = y w_hat), where
/// y = prefix has length i-1.
double eta(const JointDist& dist, std::size_t i, std::size_t j, std::span<const std::size_t> prefix,
           std::size_t w, std::size_t w_hat);

/// Supremum of eta over positive-probability (y, w, w_hat); 0 when no pair is admissible.
double eta_bar(const JointDist& dist, std::size_t i, std::size_t j);

MixingProfile mixing_profile(const JointDist& dist);

/// Dobrushin coefficient: half the largest l1 distance between two rows.
double theta(const StochasticMatrix& kernel);

/// max_i (1 + theta_i + theta_i theta_{i+1} + ... + theta_i ... theta_{n-1}); 1 when empty.
double contraction_m_n(std::span<const double> thetas);

ContractionProfile contraction_profile(const MarkovSpec& spec);

/// prod_{k=i}^{j-1} theta_k of the chain.
double markov_eta_bound(const MarkovSpec& spec, std::size_t i, std::size_t j);

/// The same product taken over the hidden chain, bounding the observed eta-bar.
double hmm_eta_bound(const HmmSpec& spec, std::size_t i, std::size_t j);

/// u^T P for a zero-sum u.
std::vector<double> apply_kernel_transpose(std::span<const double> u, const StochasticMatrix& kernel);

}  // namespace mixconc

#pragma once

// Random instances for property checks.

#include <cstddef>
#include <random>
#include <vector>

#include "mixconc/kernel.hpp"
#include "mixconc/process.hpp"

namespace mixconc::random {

using Rng = std::mt19937_64;

/// A probability vector; with sparse = true some entries are zero (never all).
std::vector<double> pmf(Rng& rng, std::size_t size, bool sparse = false);

StochasticMatrix stochastic_matrix(Rng& rng, std::size_t rows, std::size_t cols, bool sparse = false);

/// Full support unless sparse; homogeneous chains reuse one kernel.
MarkovSpec markov_spec(Rng& rng, std::size_t alphabet_size, std::size_t n, bool homogeneous,
                       bool sparse = false);

HmmSpec hmm_spec(Rng& rng, std::size_t hidden_size, std::size_t observed_size, std::size_t n,
                 bool sparse = false);

/// An arbitrary law on S^n (not Markov); sparse joints include null prefixes.
JointDist joint(Rng& rng, std::size_t alphabet_size, std::size_t n, bool sparse = false);

/// Entries uniform in [-1, 1].
KernelFn kernel(Rng& rng, std::size_t radix, std::size_t length);

/// A vector with entries in [-1, 1] shifted to sum to zero.
std::vector<double> zero_sum_vector(Rng& rng, std::size_t size);

}  // namespace mixconc::random

#include "mixconc/random.hpp"

#include <numeric>

namespace mixconc::random {
namespace {

void normalize(std::vector<double>& v) {
  // Two passes keep the sum within the 1e-12 construction tolerance.
  for (int pass = 0; pass < 2; ++pass) {
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& x : v) x /= total;
  }
}

}  // namespace

std::vector<double> pmf(Rng& rng, std::size_t size, bool sparse) {
  std::exponential_distribution<double> weight(1.0);
  std::bernoulli_distribution drop(0.3);
  std::vector<double> out(size);
  bool any = false;
  for (double& x : out) {
    x = sparse && drop(rng) ? 0.0 : weight(rng) + 1e-3;
    any = any || x > 0.0;
  }
  if (!any) out[std::uniform_int_distribution<std::size_t>(0, size - 1)(rng)] = 1.0;
  normalize(out);
  return out;
}

StochasticMatrix stochastic_matrix(Rng& rng, std::size_t rows, std::size_t cols, bool sparse) {
  std::vector<double> data;
  data.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = pmf(rng, cols, sparse);
    data.insert(data.end(), row.begin(), row.end());
  }
  return StochasticMatrix(rows, cols, std::move(data));
}

MarkovSpec markov_spec(Rng& rng, std::size_t alphabet_size, std::size_t n, bool homogeneous, bool sparse) {
  MarkovSpec spec;
  spec.alphabet = Alphabet::indexed(alphabet_size);
  spec.n = n;
  spec.p0 = pmf(rng, alphabet_size, sparse);
  spec.homogeneous = homogeneous;
  const std::size_t count = homogeneous ? 1 : n - 1;
  for (std::size_t k = 0; k < count; ++k) {
    spec.kernels.push_back(stochastic_matrix(rng, alphabet_size, alphabet_size, sparse));
  }
  spec.validate();
  return spec;
}

HmmSpec hmm_spec(Rng& rng, std::size_t hidden_size, std::size_t observed_size, std::size_t n, bool sparse) {
  HmmSpec spec;
  spec.hidden = markov_spec(rng, hidden_size, n, false, sparse);
  spec.hidden.alphabet = Alphabet::indexed(hidden_size, "h");
  spec.observed = Alphabet::indexed(observed_size, "o");
  for (std::size_t k = 0; k < n; ++k) {
    spec.emissions.push_back(stochastic_matrix(rng, hidden_size, observed_size, sparse));
  }
  spec.validate();
  return spec;
}

JointDist joint(Rng& rng, std::size_t alphabet_size, std::size_t n, bool sparse) {
  std::size_t cells = 1;
  for (std::size_t k = 0; k < n; ++k) cells *= alphabet_size;
  return JointDist(Alphabet::indexed(alphabet_size), n, pmf(rng, cells, sparse));
}

KernelFn kernel(Rng& rng, std::size_t radix, std::size_t length) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::size_t cells = 1;
  for (std::size_t k = 0; k < length; ++k) cells *= radix;
  std::vector<double> values(cells);
  for (double& v : values) v = entry(rng);
  return KernelFn(radix, length, std::move(values));
}

std::vector<double> zero_sum_vector(Rng& rng, std::size_t size) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::vector<double> out(size);
  for (double& v : out) v = entry(rng);
  const double mean = std::accumulate(out.begin(), out.end(), 0.0) / static_cast<double>(size);
  for (double& v : out) v -= mean;
  return out;
}

}  // namespace mixconc::random

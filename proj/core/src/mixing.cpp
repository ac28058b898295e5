#include "mixconc/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixconc/error.hpp"

namespace mixconc {

namespace {

void require_pair(std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || i >= j || j > n) {
    throw ValidationError("need 1 <= i < j <= n, got i=" + std::to_string(i) +
                          ", j=" + std::to_string(j) + ", n=" + std::to_string(n));
  }
}

}  // namespace

double eta(const JointDist& dist, std::size_t i, std::size_t j, std::span<const std::size_t> prefix,
           std::size_t w, std::size_t w_hat) {
  require_pair(dist.n(), i, j);
  if (prefix.size() + 1 != i) throw ValidationError("eta: prefix must have length i-1");
  std::vector<std::size_t> a(prefix.begin(), prefix.end());
  std::vector<std::size_t> b = a;
  a.push_back(w);
  b.push_back(w_hat);
  return tv_distance(conditional(dist, a, j), conditional(dist, b, j));
}

double eta_bar(const JointDist& dist, std::size_t i, std::size_t j) {
  require_pair(dist.n(), i, j);
  const std::size_t n = dist.n();
  const std::size_t s = dist.radix();
  const std::size_t tail = cell_count(s, n - j + 1);
  const std::size_t middle = cell_count(s, j - i - 1);
  const std::size_t heads = cell_count(s, i - 1);
  const auto mass = dist.mass();

  // law[w][t]: unnormalized P(X^i = y w, X_j^n = t) for the current y.
  std::vector<std::vector<double>> law(s, std::vector<double>(tail));
  std::vector<double> total(s);
  double best = 0.0;
  for (std::size_t y = 0; y < heads; ++y) {
    for (std::size_t w = 0; w < s; ++w) {
      std::fill(law[w].begin(), law[w].end(), 0.0);
      const std::size_t base = (y * s + w) * middle * tail;
      for (std::size_t m = 0; m < middle; ++m) {
        for (std::size_t t = 0; t < tail; ++t) law[w][t] += mass[base + m * tail + t];
      }
      total[w] = 0.0;
      for (double v : law[w]) total[w] += v;
      if (total[w] > kPositiveProbability) {
        for (double& v : law[w]) v /= total[w];
      }
    }
    for (std::size_t w = 0; w < s; ++w) {
      if (!(total[w] > kPositiveProbability)) continue;
      for (std::size_t v = w + 1; v < s; ++v) {
        if (!(total[v] > kPositiveProbability)) continue;
        double half_l1 = 0.0;
        for (std::size_t t = 0; t < tail; ++t) half_l1 += std::abs(law[w][t] - law[v][t]);
        best = std::max(best, 0.5 * half_l1);
      }
    }
  }
  return std::min(best, 1.0);
}

MixingProfile mixing_profile(const JointDist& dist) {
  MixingProfile profile;
  const std::size_t n = dist.n();
  profile.n = n;
  profile.eta_bar.assign(n * n, 0.0);
  profile.h_rows.assign(n, 1.0);
  for (std::size_t i = 1; i <= n; ++i) {
    profile.eta_bar[(i - 1) * n + (i - 1)] = 1.0;
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double e = eta_bar(dist, i, j);
      profile.eta_bar[(i - 1) * n + (j - 1)] = e;
      profile.h_rows[i - 1] += e;
    }
  }
  profile.inf_norm = *std::max_element(profile.h_rows.begin(), profile.h_rows.end());
  return profile;
}

double theta(const StochasticMatrix& kernel) {
  double best = 0.0;
  for (std::size_t a = 0; a < kernel.rows(); ++a) {
    for (std::size_t b = a + 1; b < kernel.rows(); ++b) {
      double l1 = 0.0;
      for (std::size_t c = 0; c < kernel.cols(); ++c) l1 += std::abs(kernel(a, c) - kernel(b, c));
      best = std::max(best, 0.5 * l1);
    }
  }
  return std::min(best, 1.0);
}

double contraction_m_n(std::span<const double> thetas) {
  double best = 1.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    double term = 1.0;
    double sum = 1.0;
    for (std::size_t k = i; k < thetas.size(); ++k) {
      term *= thetas[k];
      sum += term;
    }
    best = std::max(best, sum);
  }
  return best;
}

ContractionProfile contraction_profile(const MarkovSpec& spec) {
  spec.validate();
  ContractionProfile profile;
  profile.n = spec.n;
  for (std::size_t step = 1; step < spec.n; ++step) profile.thetas.push_back(theta(spec.kernel(step)));
  profile.m_n = contraction_m_n(profile.thetas);
  return profile;
}

double markov_eta_bound(const MarkovSpec& spec, std::size_t i, std::size_t j) {
  require_pair(spec.n, i, j);
  double product = 1.0;
  for (std::size_t k = i; k < j; ++k) product *= theta(spec.kernel(k));
  return product;
}

double hmm_eta_bound(const HmmSpec& spec, std::size_t i, std::size_t j) {
  return markov_eta_bound(spec.hidden, i, j);
}

std::vector<double> apply_kernel_transpose(std::span<const double> u, const StochasticMatrix& kernel) {
  if (u.size() != kernel.rows()) throw ValidationError("apply_kernel_transpose: shape mismatch");
  double sum = 0.0;
  double l1 = 0.0;
  for (double v : u) {
    if (!std::isfinite(v)) throw ValidationError("apply_kernel_transpose: non-finite entry");
    sum += v;
    l1 += std::abs(v);
  }
  if (std::abs(sum) > 1e-12 * std::max(1.0, l1)) {
    throw ValidationError("apply_kernel_transpose: input must sum to zero");
  }
  std::vector<double> out(kernel.cols(), 0.0);
  for (std::size_t r = 0; r < kernel.rows(); ++r) {
    if (u[r] == 0.0) continue;
    for (std::size_t c = 0; c < kernel.cols(); ++c) out[c] += u[r] * kernel(r, c);
  }
  return out;
}

}  // namespace mixconc

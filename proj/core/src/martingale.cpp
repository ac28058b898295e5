#include "mixconc/martingale.hpp"

#include <algorithm>
#include <cmath>

#include "mixconc/error.hpp"
#include "mixconc/multi_index.hpp"

namespace mixconc {
namespace {

std::vector<std::size_t> extended(std::span<const std::size_t> prefix, std::size_t symbol) {
  std::vector<std::size_t> out(prefix.begin(), prefix.end());
  out.push_back(symbol);
  return out;
}

// Writes 1{x^i = head} P(x_{i+1}^n | head) into values, scaled by sign.
void add_conditional_block(const JointDist& dist, std::span<const std::size_t> head, double sign,
                           std::vector<double>& values) {
  const std::size_t n = dist.n();
  const std::size_t tail = cell_count(dist.radix(), n - head.size());
  const std::size_t offset = encode(head, dist.radix()) * tail;
  if (head.size() == n) {
    if (!(prefix_probability(dist, head) > kPositiveProbability)) {
      throw ConditioningError("conditioning on zero-probability prefix (" +
                                  format_sequence(dist.alphabet(), head) + ")",
                              std::vector<std::size_t>(head.begin(), head.end()));
    }
    values[offset] += sign;
    return;
  }
  const Pmf suffix = conditional(dist, head, head.size() + 1);
  for (std::size_t t = 0; t < tail; ++t) values[offset + t] += sign * suffix[t];
}

void require_symbol(const JointDist& dist, std::size_t symbol) {
  if (symbol >= dist.radix()) throw ValidationError("unknown symbol index");
}

}  // namespace

KernelFn kappa_pair(const JointDist& dist, std::size_t i, std::span<const std::size_t> prefix,
                    std::size_t w, std::size_t w_hat) {
  if (i < 1 || i > dist.n()) throw ValidationError("kappa_pair: need 1 <= i <= n");
  if (prefix.size() != i - 1) throw ValidationError("kappa_pair: prefix must have length i-1");
  require_symbol(dist, w);
  require_symbol(dist, w_hat);
  std::vector<double> values(dist.cells(), 0.0);
  add_conditional_block(dist, extended(prefix, w), 1.0, values);
  add_conditional_block(dist, extended(prefix, w_hat), -1.0, values);
  return KernelFn(dist.radix(), dist.n(), std::move(values));
}

KernelFn kappa_prefix(const JointDist& dist, std::span<const std::size_t> z) {
  const std::size_t i = z.size();
  if (i < 1 || i > dist.n()) throw ValidationError("kappa_prefix: need 1 <= i <= n");
  std::vector<double> values(dist.cells(), 0.0);
  add_conditional_block(dist, z, 1.0, values);
  add_conditional_block(dist, z.first(i - 1), -1.0, values);
  return KernelFn(dist.radix(), dist.n(), std::move(values));
}

ConditionalMeans::ConditionalMeans(const JointDist& dist, std::span<const double> phi)
    : n_(dist.n()), radix_(dist.radix()), mass_(n_ + 1), mean_(n_ + 1) {
  if (phi.size() != dist.cells()) throw ValidationError("phi does not match the joint's shape");
  const auto mass = dist.mass();
  mass_[n_].assign(mass.begin(), mass.end());
  std::vector<double> weighted(dist.cells());
  for (std::size_t x = 0; x < weighted.size(); ++x) weighted[x] = mass[x] * phi[x];

  std::vector<std::vector<double>> sums(n_ + 1);
  sums[n_] = std::move(weighted);
  for (std::size_t level = n_; level > 0; --level) {
    const std::size_t cells = mass_[level].size() / radix_;
    mass_[level - 1].assign(cells, 0.0);
    sums[level - 1].assign(cells, 0.0);
    for (std::size_t x = 0; x < cells; ++x) {
      for (std::size_t s = 0; s < radix_; ++s) {
        mass_[level - 1][x] += mass_[level][x * radix_ + s];
        sums[level - 1][x] += sums[level][x * radix_ + s];
      }
    }
  }
  for (std::size_t level = 0; level <= n_; ++level) {
    mean_[level].assign(mass_[level].size(), 0.0);
    for (std::size_t x = 0; x < mass_[level].size(); ++x) {
      if (mass_[level][x] > kPositiveProbability) mean_[level][x] = sums[level][x] / mass_[level][x];
    }
  }
  // At the full level the conditional mean is phi itself, exactly.
  for (std::size_t x = 0; x < mean_[n_].size(); ++x) {
    if (mass_[n_][x] > kPositiveProbability) mean_[n_][x] = phi[x];
  }
}

double ConditionalMeans::sup_norm(std::size_t i) const {
  if (i < 1 || i > n_) throw ValidationError("martingale difference index out of range");
  double best = 0.0;
  for (std::size_t x = 0; x < mass_[i].size(); ++x) {
    if (!(mass_[i][x] > kPositiveProbability)) continue;
    best = std::max(best, std::abs(mean_[i][x] - mean_[i - 1][x / radix_]));
  }
  return best;
}

std::vector<double> martingale_sup_norms(const JointDist& dist, std::span<const double> phi) {
  const ConditionalMeans means(dist, phi);
  std::vector<double> out(dist.n());
  for (std::size_t i = 1; i <= dist.n(); ++i) out[i - 1] = means.sup_norm(i);
  return out;
}

namespace {

double conditional_mean(const ConditionalMeans& means, const JointDist& dist,
                        std::span<const std::size_t> prefix) {
  const std::size_t cell = encode(prefix, dist.radix());
  if (!(means.mass(prefix.size())[cell] > kPositiveProbability)) {
    throw ConditioningError("conditioning on zero-probability prefix (" +
                                format_sequence(dist.alphabet(), prefix) + ")",
                            std::vector<std::size_t>(prefix.begin(), prefix.end()));
  }
  return means.mean(prefix.size())[cell];
}

}  // namespace

double martingale_diff(const JointDist& dist, std::span<const double> phi, std::size_t i,
                       const DiffMode& mode) {
  if (i < 1 || i > dist.n()) throw ValidationError("martingale difference index out of range");
  const ConditionalMeans means(dist, phi);
  if (std::holds_alternative<diff::SupNorm>(mode)) return means.sup_norm(i);
  if (const auto* point = std::get_if<diff::AtPoint>(&mode)) {
    if (point->z.size() != i) throw ValidationError("at-point mode needs a prefix of length i");
    const std::span<const std::size_t> z(point->z);
    const double upper = conditional_mean(means, dist, z);
    return upper - conditional_mean(means, dist, z.first(i - 1));
  }
  const auto& pair = std::get<diff::Pairwise>(mode);
  if (pair.prefix.size() != i - 1) throw ValidationError("pairwise mode needs a prefix of length i-1");
  require_symbol(dist, pair.w);
  require_symbol(dist, pair.w_hat);
  return conditional_mean(means, dist, extended(pair.prefix, pair.w)) -
         conditional_mean(means, dist, extended(pair.prefix, pair.w_hat));
}

double martingale_diff(const JointDist& dist, const LipschitzFn& phi, std::size_t i,
                       const DiffMode& mode) {
  if (phi.radix() != dist.radix() || phi.length() != dist.n()) {
    throw ValidationError("phi does not match the joint's shape");
  }
  return martingale_diff(dist, phi.values(), i, mode);
}

}  // namespace mixconc

#include "mixconc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mixconc/error.hpp"
#include "mixconc/multi_index.hpp"

namespace mixconc {

KernelFn::KernelFn(std::size_t radix, std::size_t length, std::vector<double> values)
    : radix_(radix), length_(length), values_(std::move(values)) {
  if (radix_ == 0) throw ValidationError("kernel over an empty alphabet");
  if (saturating_power(radix_, length_) != values_.size()) {
    throw ValidationError("kernel: value array does not cover S^k");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("kernel: non-finite value");
  }
}

KernelFn KernelFn::zero(std::size_t radix, std::size_t length) {
  return KernelFn(radix, length, std::vector<double>(cell_count(radix, length), 0.0));
}

KernelFn KernelFn::delta(std::size_t radix, std::size_t length, std::size_t cell) {
  std::vector<double> values(cell_count(radix, length), 0.0);
  values.at(cell) = 1.0;
  return KernelFn(radix, length, std::move(values));
}

double KernelFn::sum() const noexcept { return std::accumulate(values_.begin(), values_.end(), 0.0); }

double KernelFn::positive_sum() const noexcept {
  double total = 0.0;
  for (double v : values_) {
    if (v > 0.0) total += v;
  }
  return total;
}

KernelFn KernelFn::operator-() const { return scaled(-1.0); }

KernelFn KernelFn::scaled(double a) const {
  std::vector<double> values(values_);
  for (double& v : values) v *= a;
  return KernelFn(radix_, length_, std::move(values));
}

KernelFn operator+(const KernelFn& a, const KernelFn& b) {
  if (a.radix_ != b.radix_ || a.length_ != b.length_) throw ValidationError("kernel shape mismatch");
  std::vector<double> values(a.values_);
  for (std::size_t k = 0; k < values.size(); ++k) values[k] += b.values_[k];
  return KernelFn(a.radix_, a.length_, std::move(values));
}

KernelFn operator-(const KernelFn& a, const KernelFn& b) { return a + (-b); }

KernelFn project(const KernelFn& kappa) {
  if (kappa.length() == 0) throw ValidationError("project: kernel is already a scalar");
  const std::size_t block = cell_count(kappa.radix(), kappa.length() - 1);
  std::vector<double> out(block, 0.0);
  const auto values = kappa.values();
  for (std::size_t first = 0; first < kappa.radix(); ++first) {
    for (std::size_t rest = 0; rest < block; ++rest) out[rest] += values[first * block + rest];
  }
  return KernelFn(kappa.radix(), kappa.length() - 1, std::move(out));
}

KernelFn section(const KernelFn& kappa, std::size_t symbol) {
  if (kappa.length() == 0) throw ValidationError("section: kernel is already a scalar");
  if (symbol >= kappa.radix()) throw ValidationError("section: unknown symbol");
  const std::size_t s = kappa.radix();
  std::vector<double> out(kappa.cells() / s);
  const auto values = kappa.values();
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = values[x * s + symbol];
  return KernelFn(s, kappa.length() - 1, std::move(out));
}

KernelFn prefix_reduce(const KernelFn& kappa, std::span<const std::size_t> prefix) {
  if (prefix.size() >= kappa.length() && !(prefix.empty() && kappa.length() == 0)) {
    throw ValidationError("prefix_reduce: prefix must be shorter than the kernel");
  }
  const std::size_t rest = kappa.length() - prefix.size();
  const std::size_t block = cell_count(kappa.radix(), rest);
  const std::size_t offset = encode(prefix, kappa.radix()) * block;
  const auto values = kappa.values();
  return KernelFn(kappa.radix(), rest,
                  std::vector<double>(values.begin() + offset, values.begin() + offset + block));
}

double inner(const KernelFn& kappa, std::span<const double> phi) {
  if (phi.size() != kappa.cells()) throw ValidationError("inner: shape mismatch");
  const auto values = kappa.values();
  double total = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) total += values[k] * phi[k];
  return total;
}

double inner(const KernelFn& kappa, const LipschitzFn& phi) {
  if (phi.radix() != kappa.radix() || phi.length() != kappa.length()) {
    throw ValidationError("inner: shape mismatch");
  }
  return inner(kappa, phi.values());
}

std::vector<double> psi_levels(const KernelFn& kappa) {
  std::vector<double> levels;
  levels.reserve(kappa.length());
  if (kappa.length() == 0) return levels;
  KernelFn current = kappa;
  while (true) {
    levels.push_back(current.positive_sum());
    if (current.length() == 1) break;
    current = project(current);
  }
  return levels;
}

double psi(const KernelFn& kappa) {
  const auto levels = psi_levels(kappa);
  return std::accumulate(levels.begin(), levels.end(), 0.0);
}

double psi_norm(const KernelFn& kappa) { return std::max(psi(kappa), psi(-kappa)); }

}  // namespace mixconc

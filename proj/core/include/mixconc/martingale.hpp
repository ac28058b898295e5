#pragma once

// Martingale-difference kernels kappa and the martingale differences
// V_i(phi) = E[phi | X^i] - E[phi | X^{i-1}] of a 1-Lipschitz function.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "mixconc/kernel.hpp"
#include "mixconc/lipschitz.hpp"
#include "mixconc/process.hpp"

namespace mixconc {

/// kappa(x) = 1{x^i = y w} P(x_{i+1}^n | y w) - 1{x^i = y w_hat} P(x_{i+1}^n | y w_hat),
/// y = prefix of length i-1. Pairs with <kappa, phi> = E[phi | y w] - E[phi | y w_hat].
KernelFn kappa_pair(const JointDist& dist, std::size_t i, std::span<const std::size_t> prefix,
                    std::size_t w, std::size_t w_hat);

/// kappa[z^i](x) = 1{x^i = z^i} P(x_{i+1}^n | z^i) - 1{x^{i-1} = z^{i-1}} P(x_i^n | z^{i-1}),
/// with i = z.size(). Pairs with <kappa, phi> = V_i(phi; z^i).
KernelFn kappa_prefix(const JointDist& dist, std::span<const std::size_t> z);

namespace diff {
struct AtPoint {
  std::vector<std::size_t> z;  ///< z^i, length i
};
struct SupNorm {};
struct Pairwise {
  std::vector<std::size_t> prefix;  ///< y^{i-1}
  std::size_t w = 0;
  std::size_t w_hat = 0;
};
}  // namespace diff

using DiffMode = std::variant<diff::AtPoint, diff::SupNorm, diff::Pairwise>;

/// V_i(phi; z^i), ||V_i(phi)||_inf over positive-probability z^i, or the pairwise
/// difference V-hat_i(phi; y, w, w_hat), depending on mode.
double martingale_diff(const JointDist& dist, std::span<const double> phi, std::size_t i,
                       const DiffMode& mode);
double martingale_diff(const JointDist& dist, const LipschitzFn& phi, std::size_t i,
                       const DiffMode& mode);

/// Conditional expectations E[phi | X^i = x^i] for every level i = 0..n, computed
/// once so that all sup-norms can be read off together.
class ConditionalMeans {
 public:
  ConditionalMeans(const JointDist& dist, std::span<const double> phi);

  std::size_t n() const noexcept { return n_; }
  /// P(X^i = x^i) over S^i.
  std::span<const double> mass(std::size_t i) const { return mass_[i]; }
  /// E[phi | X^i = x^i] over S^i (0 where the prefix is null).
  std::span<const double> mean(std::size_t i) const { return mean_[i]; }

  /// ||V_i(phi)||_inf, 1 <= i <= n.
  double sup_norm(std::size_t i) const;

 private:
  std::size_t n_;
  std::size_t radix_;
  std::vector<std::vector<double>> mass_;
  std::vector<std::vector<double>> mean_;
};

/// ||V_i(phi)||_inf for i = 1..n.
std::vector<double> martingale_sup_norms(const JointDist& dist, std::span<const double> phi);

}  // namespace mixconc

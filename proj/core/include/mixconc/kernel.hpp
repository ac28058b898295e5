#pragma once

// Elements of K_k (real functions on S^k), the marginal projection and
// y-section operators, prefix reduction, and the Psi functional and norm.

#include <cstddef>
#include <span>
#include <vector>

#include "mixconc/lipschitz.hpp"

namespace mixconc {

/// A real function on S^k. Length 0 is a scalar (S^0 is the null string).
class KernelFn {
 public:
  KernelFn(std::size_t radix, std::size_t length, std::vector<double> values);

  static KernelFn zero(std::size_t radix, std::size_t length);
  static KernelFn delta(std::size_t radix, std::size_t length, std::size_t cell);

  std::size_t radix() const noexcept { return radix_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t cells() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t cell) const { return values_[cell]; }

  double sum() const noexcept;
  /// sum_x (kappa(x))_+
  double positive_sum() const noexcept;

  KernelFn operator-() const;
  KernelFn scaled(double a) const;
  friend KernelFn operator+(const KernelFn& a, const KernelFn& b);
  friend KernelFn operator-(const KernelFn& a, const KernelFn& b);

 private:
  std::size_t radix_;
  std::size_t length_;
  std::vector<double> values_;
};

/// kappa'(y) = sum_{x_1} kappa(x_1 y): sums out the first coordinate.
KernelFn project(const KernelFn& kappa);

/// kappa_y(x) = kappa(x y): fixes the last coordinate.
KernelFn section(const KernelFn& kappa, std::size_t symbol);

/// (T_z kappa)(x) = kappa(z x).
KernelFn prefix_reduce(const KernelFn& kappa, std::span<const std::size_t> prefix);

/// sum_x kappa(x) phi(x).
double inner(const KernelFn& kappa, std::span<const double> phi);
double inner(const KernelFn& kappa, const LipschitzFn& phi);

/// Psi_k(kappa) = sum_x (kappa(x))_+ + Psi_{k-1}(kappa'), Psi_0 = 0.
double psi(const KernelFn& kappa);

/// The terms of Psi_k from the top level down: sum (kappa^(k))_+, ..., sum (kappa^(1))_+.
std::vector<double> psi_levels(const KernelFn& kappa);

/// max(Psi(kappa), Psi(-kappa)).
double psi_norm(const KernelFn& kappa);

}  // namespace mixconc

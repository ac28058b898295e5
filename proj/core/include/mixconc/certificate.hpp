#pragma once

// Tail-bound certificates P{|phi - E phi| >= t} <= bound(t).

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mixconc/mixing.hpp"

namespace mixconc {

enum class Metric { hamming, normalized_hamming };
enum class ConstantKind { delta_inf_norm, m_n, explicit_d };

std::string_view to_string(Metric metric);
std::string_view to_string(ConstantKind kind);
Metric parse_metric(std::string_view text);

struct Certificate {
  std::size_t n = 1;
  double c = 1.0;
  Metric metric = Metric::hamming;
  ConstantKind kind = ConstantKind::delta_inf_norm;
  /// ||Delta_n||_inf, M_n, or D.
  double constant = 1.0;
  std::string note;

  /// The raw bound; may exceed 1.
  double bound(double t) const;
  /// min(bound(t), 1).
  double effective(double t) const;
};

/// 2 exp(-r^2 / (2 D^2)). The caller guarantees D^2 >= sum_i ||V_i(phi)||_inf^2.
double azuma_bound(double d, double r);

/// 2 exp(-t^2 / (2 n c^2 ||Delta_n||_inf^2)) for c-Lipschitz phi under Hamming.
double certify_general(const MixingProfile& profile, double c, double t);

/// The same shape with M_n in place of ||Delta_n||_inf; the normalized metric
/// gives 2 exp(-n t^2 / (2 c^2 M_n^2)).
double certify_markov(const ContractionProfile& profile, double c, double t, Metric metric);

/// alpha(t) = 2 exp(-n t^2 / (2 ||Delta_n||_inf^2)).
double concentration_alpha(const MixingProfile& profile, double t);

/// t0 = alpha^{-1}(1/2) = ||Delta_n||_inf sqrt(2 ln 4 / n).
double median_threshold(const MixingProfile& profile);

/// Deviation bound around a median, alpha(t - t0); defined for t > t0 only.
double median_bound(const MixingProfile& profile, double t);

Certificate make_general_certificate(const MixingProfile& profile, double c, Metric metric);
Certificate make_markov_certificate(const ContractionProfile& profile, double c, Metric metric);
Certificate make_azuma_certificate(std::size_t n, double d);

/// "start:step:end", end included when it lies within 1e-12 of a grid point.
/// A single number is a one-point grid.
std::vector<double> parse_t_grid(std::string_view text);

}  // namespace mixconc

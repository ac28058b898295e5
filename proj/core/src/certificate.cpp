#include "mixconc/certificate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "mixconc/error.hpp"

namespace mixconc {
namespace {

void require_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("Lipschitz constant must be positive");
}

void require_t(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("t must be a nonnegative number");
}

double gaussian_tail(double exponent) { return 2.0 * std::exp(-exponent); }

}  // namespace

std::string_view to_string(Metric metric) {
  return metric == Metric::hamming ? "hamming" : "normalized-hamming";
}

std::string_view to_string(ConstantKind kind) {
  switch (kind) {
    case ConstantKind::delta_inf_norm:
      return "delta-inf-norm";
    case ConstantKind::m_n:
      return "m_n";
    case ConstantKind::explicit_d:
      return "explicit-D";
  }
  return "unknown";
}

Metric parse_metric(std::string_view text) {
  if (text == "hamming") return Metric::hamming;
  if (text == "normalized-hamming") return Metric::normalized_hamming;
  throw ValidationError("unknown metric '" + std::string(text) + "'");
}

double Certificate::bound(double t) const {
  require_t(t);
  if (kind == ConstantKind::explicit_d) return azuma_bound(constant, t);
  const double nn = static_cast<double>(n);
  const double k2 = constant * constant;
  if (metric == Metric::hamming) return gaussian_tail(t * t / (2.0 * nn * c * c * k2));
  return gaussian_tail(nn * t * t / (2.0 * c * c * k2));
}

double Certificate::effective(double t) const { return std::min(bound(t), 1.0); }

double azuma_bound(double d, double r) {
  if (!(d > 0.0) || !std::isfinite(d)) throw ValidationError("Azuma constant D must be positive");
  require_t(r);
  return gaussian_tail(r * r / (2.0 * d * d));
}

double certify_general(const MixingProfile& profile, double c, double t) {
  require_c(c);
  return make_general_certificate(profile, c, Metric::hamming).bound(t);
}

double certify_markov(const ContractionProfile& profile, double c, double t, Metric metric) {
  require_c(c);
  return make_markov_certificate(profile, c, metric).bound(t);
}

double concentration_alpha(const MixingProfile& profile, double t) {
  return make_general_certificate(profile, 1.0, Metric::normalized_hamming).bound(t);
}

double median_threshold(const MixingProfile& profile) {
  return profile.inf_norm * std::sqrt(2.0 * std::log(4.0) / static_cast<double>(profile.n));
}

double median_bound(const MixingProfile& profile, double t) {
  require_t(t);
  const double t0 = median_threshold(profile);
  if (!(t > t0)) throw OutOfValidityError("median bound requires t > t0", t0);
  const double nn = static_cast<double>(profile.n);
  const double gap = t / profile.inf_norm - std::sqrt(2.0 * std::log(4.0) / nn);
  return gaussian_tail(nn / 2.0 * gap * gap);
}

Certificate make_general_certificate(const MixingProfile& profile, double c, Metric metric) {
  require_c(c);
  if (profile.n == 0) throw ValidationError("mixing profile is empty");
  return Certificate{profile.n, c, metric, ConstantKind::delta_inf_norm, profile.inf_norm,
                     "exact mixing matrix norm"};
}

Certificate make_markov_certificate(const ContractionProfile& profile, double c, Metric metric) {
  require_c(c);
  if (profile.n == 0) throw ValidationError("contraction profile is empty");
  return Certificate{profile.n, c, metric, ConstantKind::m_n, profile.m_n,
                     "contraction-coefficient surrogate"};
}

Certificate make_azuma_certificate(std::size_t n, double d) {
  if (!(d > 0.0)) throw ValidationError("Azuma constant D must be positive");
  return Certificate{n, 1.0, Metric::hamming, ConstantKind::explicit_d, d, "explicit Azuma constant"};
}

namespace {

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ValidationError("t-grid: cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<double> parse_t_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t colon = text.find(':', pos);
    parts.push_back(text.substr(pos, colon == std::string_view::npos ? colon : colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  std::vector<double> grid;
  if (parts.size() == 1) {
    grid.push_back(parse_number(parts[0]));
  } else if (parts.size() == 3) {
    const double start = parse_number(parts[0]);
    const double step = parse_number(parts[1]);
    const double end = parse_number(parts[2]);
    if (!(step > 0.0)) throw ValidationError("t-grid: step must be positive");
    if (end < start) throw ValidationError("t-grid: end precedes start");
    const double span = (end - start) / step;
    if (span > 1e7) throw ValidationError("t-grid: too many points");
    const auto whole = static_cast<std::size_t>(std::floor(span + 1e-12 / step));
    for (std::size_t k = 0; k <= whole; ++k) grid.push_back(start + static_cast<double>(k) * step);
    if (std::abs(grid.back() - end) <= 1e-12) grid.back() = end;
  } else {
    throw ValidationError("t-grid: expected start:step:end");
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0) || !std::isfinite(grid[k])) throw ValidationError("t-grid: values must be nonnegative");
    if (k > 0 && !(grid[k] > grid[k - 1])) throw ValidationError("t-grid: values must increase");
  }
  return grid;
}

}  // namespace mixconc

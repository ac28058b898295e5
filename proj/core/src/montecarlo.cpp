#include "mixconc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include <boost/math/distributions/binomial.hpp>

#include "mixconc/error.hpp"
#include "mixconc/multi_index.hpp"

namespace mixconc {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 path_rng(std::uint64_t seed, std::uint64_t k) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(k + 0x632BE59BD9B4E019ULL)));
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Cumulative table of one probability vector; draw() returns the first index
// whose cumulative mass exceeds u, never an index of zero mass.
class Sampler {
 public:
  explicit Sampler(std::span<const double> p) : cumulative_(p.size()), last_(0) {
    double total = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      total += p[k];
      cumulative_[k] = total;
      if (p[k] > 0.0) last_ = k;
    }
  }

  std::size_t draw(double u) const {
    const double target = u * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    const auto k = static_cast<std::size_t>(it - cumulative_.begin());
    return std::min(k, last_);
  }

 private:
  std::vector<double> cumulative_;
  std::size_t last_;
};

std::vector<Sampler> row_samplers(const StochasticMatrix& m) {
  std::vector<Sampler> out;
  out.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r));
  return out;
}

template <typename Fill>
PathBatch run_sampler(std::size_t n, std::size_t radix, std::uint64_t seed, std::size_t count,
                      unsigned workers, Fill fill) {
  if (count == 0) throw ValidationError("sample count must be at least 1");
  if (radix > 65536) throw ValidationError("alphabet too large for sampling");
  if (count > (std::size_t{1} << 40) / n) throw CapacityError("path batch too large", count * n, std::uint64_t{1} << 40);
  PathBatch batch{n, count, seed, std::vector<std::uint16_t>(count * n)};
  unsigned threads = workers == 0 ? std::max(1U, std::thread::hardware_concurrency()) : workers;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      auto rng = path_rng(seed, k);
      fill(rng, std::span<std::uint16_t>(batch.symbols.data() + k * n, n));
    }
  };
  if (threads <= 1) {
    work(0, count);
    return batch;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back(work, begin, end);
  }
  for (auto& t : pool) t.join();
  return batch;
}

std::vector<std::vector<double>> markov_marginals(const MarkovSpec& spec) {
  std::vector<std::vector<double>> out{spec.p0};
  for (std::size_t step = 1; step < spec.n; ++step) {
    const StochasticMatrix& p = spec.kernel(step);
    std::vector<double> next(p.cols(), 0.0);
    for (std::size_t r = 0; r < p.rows(); ++r) {
      for (std::size_t c = 0; c < p.cols(); ++c) next[c] += out.back()[r] * p(r, c);
    }
    out.push_back(std::move(next));
  }
  return out;
}

double additive_mean(const std::vector<std::vector<double>>& marginals, const std::vector<double>& weights,
                     std::size_t radix) {
  double total = 0.0;
  for (std::size_t l = 0; l < marginals.size(); ++l) {
    for (std::size_t s = 0; s < radix; ++s) total += marginals[l][s] * weights[l * radix + s];
  }
  return total;
}

void require_shape(const Functional& phi, std::size_t radix, std::size_t n) {
  if (phi.radix() != radix || phi.n() != n) throw ValidationError("functional does not match the process shape");
}

}  // namespace

PathBatch sample_paths(const MarkovSpec& spec, std::uint64_t seed, std::size_t count, unsigned workers) {
  spec.validate();
  const Sampler initial(spec.p0);
  std::vector<std::vector<Sampler>> steps;
  for (std::size_t step = 1; step < spec.n; ++step) {
    if (spec.homogeneous && step > 1) break;
    steps.push_back(row_samplers(spec.kernel(step)));
  }
  return run_sampler(spec.n, spec.alphabet.size(), seed, count, workers,
                     [&](std::mt19937_64& rng, std::span<std::uint16_t> path) {
                       std::size_t state = initial.draw(uniform01(rng));
                       path[0] = static_cast<std::uint16_t>(state);
                       for (std::size_t l = 1; l < path.size(); ++l) {
                         const auto& rows = steps[spec.homogeneous ? 0 : l - 1];
                         state = rows[state].draw(uniform01(rng));
                         path[l] = static_cast<std::uint16_t>(state);
                       }
                     });
}

PathBatch sample_paths(const HmmSpec& spec, std::uint64_t seed, std::size_t count, unsigned workers) {
  spec.validate();
  const MarkovSpec& hidden = spec.hidden;
  const Sampler initial(hidden.p0);
  std::vector<std::vector<Sampler>> steps;
  for (std::size_t step = 1; step < hidden.n && !(hidden.homogeneous && step > 1); ++step) {
    steps.push_back(row_samplers(hidden.kernel(step)));
  }
  std::vector<std::vector<Sampler>> emit;
  for (std::size_t step = 1; step <= hidden.n && !(spec.homogeneous_emissions && step > 1); ++step) {
    emit.push_back(row_samplers(spec.emission(step)));
  }
  return run_sampler(hidden.n, spec.observed.size(), seed, count, workers,
                     [&](std::mt19937_64& rng, std::span<std::uint16_t> path) {
                       std::size_t state = initial.draw(uniform01(rng));
                       for (std::size_t l = 0; l < path.size(); ++l) {
                         if (l > 0) state = steps[hidden.homogeneous ? 0 : l - 1][state].draw(uniform01(rng));
                         const auto& q = emit[spec.homogeneous_emissions ? 0 : l];
                         path[l] = static_cast<std::uint16_t>(q[state].draw(uniform01(rng)));
                       }
                     });
}

double exact_mean(const JointDist& dist, const Functional& phi) {
  require_shape(phi, dist.radix(), dist.n());
  const auto mass = dist.mass();
  std::vector<std::size_t> digits(dist.n());
  double total = 0.0;
  for (std::size_t x = 0; x < mass.size(); ++x) {
    if (mass[x] == 0.0) continue;
    decode(x, dist.radix(), digits);
    total += mass[x] * phi.evaluate_path(std::span<const std::size_t>(digits));
  }
  return total;
}

double exact_mean(const MarkovSpec& spec, const Functional& phi, std::uint64_t cell_budget) {
  spec.validate();
  require_shape(phi, spec.alphabet.size(), spec.n);
  if (const auto& weights = phi.additive_weights()) {
    return additive_mean(markov_marginals(spec), *weights, spec.alphabet.size());
  }
  return exact_mean(build_markov_joint(spec, cell_budget), phi);
}

double exact_mean(const HmmSpec& spec, const Functional& phi, std::uint64_t cell_budget) {
  spec.validate();
  require_shape(phi, spec.observed.size(), spec.n());
  if (const auto& weights = phi.additive_weights()) {
    auto marginals = markov_marginals(spec.hidden);
    for (std::size_t l = 0; l < marginals.size(); ++l) {
      const StochasticMatrix& q = spec.emission(l + 1);
      std::vector<double> observed(q.cols(), 0.0);
      for (std::size_t h = 0; h < q.rows(); ++h) {
        for (std::size_t o = 0; o < q.cols(); ++o) observed[o] += marginals[l][h] * q(h, o);
      }
      marginals[l] = std::move(observed);
    }
    return additive_mean(marginals, *weights, spec.observed.size());
  }
  return exact_mean(build_hmm_joint(spec, cell_budget).observed, phi);
}

double exact_tail(const JointDist& dist, const Functional& phi, double mean, double t) {
  require_shape(phi, dist.radix(), dist.n());
  const auto mass = dist.mass();
  std::vector<std::size_t> digits(dist.n());
  double total = 0.0;
  for (std::size_t x = 0; x < mass.size(); ++x) {
    if (mass[x] == 0.0) continue;
    decode(x, dist.radix(), digits);
    if (std::abs(phi.evaluate_path(std::span<const std::size_t>(digits)) - mean) >= t) total += mass[x];
  }
  return total;
}

std::string_view to_string(MeanMode mode) { return mode == MeanMode::exact ? "exact" : "plug-in"; }

double binomial_upper_bound(std::size_t trials, std::size_t successes, double confidence) {
  if (trials == 0) throw ValidationError("binomial bound needs at least one trial");
  if (successes >= trials) return 1.0;
  using boost::math::binomial_distribution;
  return binomial_distribution<>::find_upper_bound_on_p(static_cast<double>(trials),
                                                        static_cast<double>(successes), 1.0 - confidence);
}

TailEstimate empirical_tail(const PathBatch& paths, const Functional& phi, std::span<const double> t_grid,
                            MeanSpec mean, double confidence) {
  if (phi.n() != paths.n) throw ValidationError("functional length does not match the paths");
  if (paths.count == 0) throw ValidationError("empty path batch");
  if (!(confidence > 0.0 && confidence < 1.0)) throw ValidationError("confidence must lie in (0, 1)");
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!(t_grid[k] >= 0.0) || (k > 0 && !(t_grid[k] > t_grid[k - 1]))) {
      throw ValidationError("t-grid must be nonnegative and increasing");
    }
  }
  for (std::uint16_t s : paths.symbols) {
    if (s >= phi.radix()) throw ValidationError("path symbol outside the functional's alphabet");
  }

  std::vector<double> values(paths.count);
  for (std::size_t k = 0; k < paths.count; ++k) values[k] = phi.evaluate_path(paths.path(k));

  TailEstimate out;
  out.t_grid.assign(t_grid.begin(), t_grid.end());
  out.count = paths.count;
  out.seed = paths.seed;
  out.n = paths.n;
  out.functional = phi.name();
  out.lipschitz_const = phi.lipschitz_const();
  out.mean_mode = mean.mode;
  out.confidence = confidence;

  const double count = static_cast<double>(paths.count);
  double tail_confidence = confidence;
  if (mean.mode == MeanMode::exact) {
    out.mean = mean.value;
  } else {
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / count;
    const double delta = (1.0 - confidence) / 2.0;
    const double range = phi.max_value() - phi.min_value();
    out.mean_radius = range * std::sqrt(std::log(2.0 / delta) / (2.0 * count));
    tail_confidence = 1.0 - delta;
  }

  std::vector<double> deviations(paths.count);
  for (std::size_t k = 0; k < paths.count; ++k) deviations[k] = std::abs(values[k] - out.mean);
  std::sort(deviations.begin(), deviations.end());
  auto at_least = [&](double t) {
    return static_cast<std::size_t>(deviations.end() -
                                    std::lower_bound(deviations.begin(), deviations.end(), t));
  };
  for (double t : t_grid) {
    out.empirical.push_back(static_cast<double>(at_least(t)) / count);
    const std::size_t widened = at_least(std::max(0.0, t - out.mean_radius));
    out.upper_conf.push_back(binomial_upper_bound(paths.count, widened, tail_confidence));
  }
  return out;
}

TailComparison compare(const TailEstimate& estimate, const Certificate& certificate) {
  if (estimate.n != certificate.n) {
    throw ConventionError("certificate is for n = " + std::to_string(certificate.n) +
                          " but the estimate has n = " + std::to_string(estimate.n));
  }
  const double needed = certificate.metric == Metric::hamming
                            ? estimate.lipschitz_const
                            : estimate.lipschitz_const * static_cast<double>(estimate.n);
  if (certificate.kind != ConstantKind::explicit_d && certificate.c < needed - 1e-12) {
    throw ConventionError("certificate constant c does not cover the functional's Lipschitz constant under " +
                          std::string(to_string(certificate.metric)));
  }
  TailComparison out;
  for (std::size_t k = 0; k < estimate.t_grid.size(); ++k) {
    TailComparisonRow row;
    row.t = estimate.t_grid[k];
    row.empirical = estimate.empirical[k];
    row.upper_conf = estimate.upper_conf[k];
    row.bound = certificate.bound(row.t);
    row.effective = std::min(row.bound, 1.0);
    row.pass = row.upper_conf <= row.bound;
    if (!row.pass && !out.first_failure) out.first_failure = row.t;
    out.pass = out.pass && row.pass;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace mixconc

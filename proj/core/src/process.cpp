#include "mixconc/process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mixconc/error.hpp"

namespace mixconc {

namespace {

void require_probability_vector(std::span<const double> mass, const char* what) {
  double total = 0.0;
  for (double v : mass) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError(std::string(what) + ": entries must be finite and nonnegative");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": entries sum to " << total << ", not 1";
    throw ValidationError(msg.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw ValidationError("alphabet must contain at least one symbol");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!index_.emplace(symbols_[i], i).second) {
      throw ValidationError("duplicate alphabet symbol '" + symbols_[i] + "'");
    }
  }
}

Alphabet Alphabet::indexed(std::size_t size, std::string_view prefix) {
  std::vector<std::string> symbols;
  symbols.reserve(size);
  for (std::size_t i = 1; i <= size; ++i) symbols.push_back(std::string(prefix) + std::to_string(i));
  return Alphabet(std::move(symbols));
}

const std::string& Alphabet::label(std::size_t index) const {
  if (index >= symbols_.size()) throw ValidationError("symbol index out of range");
  return symbols_[index];
}

std::size_t Alphabet::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) throw ValidationError("unknown symbol '" + std::string(label) + "'");
  return it->second;
}

bool Alphabet::contains(std::string_view label) const {
  return index_.contains(std::string(label));
}

Alphabet Alphabet::first(std::size_t m) const {
  if (m < 1 || m > symbols_.size()) throw ValidationError("sub-alphabet size out of range");
  return Alphabet(std::vector<std::string>(symbols_.begin(), symbols_.begin() + m));
}

// ---------------------------------------------------------------------------
// Pmf / JointDist

Pmf::Pmf(Alphabet alphabet, std::size_t length, std::vector<double> mass)
    : alphabet_(std::move(alphabet)), length_(length), mass_(std::move(mass)) {
  if (alphabet_.size() == 0) throw ValidationError("pmf over an empty alphabet");
  if (length_ < 1) throw ValidationError("pmf length must be at least 1");
  if (saturating_power(alphabet_.size(), length_) != mass_.size()) {
    throw ValidationError("pmf mass has " + std::to_string(mass_.size()) + " cells, expected " +
                          std::to_string(alphabet_.size()) + "^" + std::to_string(length_));
  }
  require_probability_vector(mass_, "pmf");
}

double Pmf::at(std::span<const std::size_t> sequence) const {
  if (sequence.size() != length_) throw ValidationError("sequence length does not match pmf");
  return mass_[encode(sequence, radix())];
}

JointDist::JointDist(Alphabet alphabet, std::size_t n, std::vector<double> mass)
    : Pmf(std::move(alphabet), n, std::move(mass)) {}

JointDist::JointDist(Pmf pmf) : Pmf(std::move(pmf)) {}

// ---------------------------------------------------------------------------
// StochasticMatrix

StochasticMatrix::StochasticMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows_ == 0 || cols_ == 0) throw ValidationError("stochastic matrix must be non-empty");
  if (data_.size() != rows_ * cols_) throw ValidationError("stochastic matrix shape mismatch");
  for (std::size_t r = 0; r < rows_; ++r) require_probability_vector(row(r), "stochastic matrix row");
}

StochasticMatrix StochasticMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ValidationError("stochastic matrix must be non-empty");
  const std::size_t cols = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw ValidationError("stochastic matrix rows have unequal lengths");
    data.insert(data.end(), r.begin(), r.end());
  }
  return StochasticMatrix(rows.size(), cols, std::move(data));
}

StochasticMatrix StochasticMatrix::identity(std::size_t size) {
  std::vector<double> data(size * size, 0.0);
  for (std::size_t i = 0; i < size; ++i) data[i * size + i] = 1.0;
  return StochasticMatrix(size, size, std::move(data));
}

bool StochasticMatrix::strictly_positive() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return v > 0.0; });
}

// ---------------------------------------------------------------------------
// MarkovSpec / HmmSpec

const StochasticMatrix& MarkovSpec::kernel(std::size_t step) const {
  if (step < 1 || step + 1 > n) throw ValidationError("kernel step out of range");
  return homogeneous ? kernels.front() : kernels.at(step - 1);
}

bool MarkovSpec::full_support() const {
  if (!std::all_of(p0.begin(), p0.end(), [](double v) { return v > 0.0; })) return false;
  return std::all_of(kernels.begin(), kernels.end(),
                     [](const StochasticMatrix& k) { return k.strictly_positive(); });
}

void MarkovSpec::validate() const {
  const std::size_t s = alphabet.size();
  if (s == 0) throw ValidationError("markov spec: empty alphabet");
  if (n < 1) throw ValidationError("markov spec: n must be at least 1");
  if (p0.size() != s) throw ValidationError("markov spec: p0 length does not match alphabet");
  require_probability_vector(p0, "markov spec p0");
  const std::size_t expected = homogeneous ? 1 : n - 1;
  if (homogeneous ? kernels.size() != 1 : kernels.size() != expected) {
    throw ValidationError("markov spec: expected " + std::to_string(expected) + " kernel(s), got " +
                          std::to_string(kernels.size()));
  }
  for (const auto& k : kernels) {
    if (k.rows() != s || k.cols() != s) {
      throw ValidationError("markov spec: kernels must be |S| x |S|");
    }
  }
}

MarkovSpec MarkovSpec::homogeneous_chain(Alphabet alphabet, std::size_t n, std::vector<double> p0,
                                         StochasticMatrix kernel) {
  MarkovSpec spec{std::move(alphabet), n, std::move(p0), {std::move(kernel)}, true};
  spec.validate();
  return spec;
}

const StochasticMatrix& HmmSpec::emission(std::size_t step) const {
  if (step < 1 || step > n()) throw ValidationError("emission step out of range");
  return homogeneous_emissions ? emissions.front() : emissions.at(step - 1);
}

void HmmSpec::validate() const {
  hidden.validate();
  if (observed.size() == 0) throw ValidationError("hmm spec: empty observed alphabet");
  const std::size_t expected = homogeneous_emissions ? 1 : n();
  if (emissions.size() != expected) {
    throw ValidationError("hmm spec: expected " + std::to_string(expected) +
                          " emission matrices, got " + std::to_string(emissions.size()));
  }
  for (const auto& q : emissions) {
    if (q.rows() != hidden.alphabet.size() || q.cols() != observed.size()) {
      throw ValidationError("hmm spec: emissions must be |hidden| x |observed|");
    }
  }
}

// ---------------------------------------------------------------------------
// Joint construction

JointDist build_markov_joint(const MarkovSpec& spec, std::uint64_t cell_budget) {
  spec.validate();
  const std::size_t s = spec.alphabet.size();
  checked_cell_count(s, spec.n, cell_budget, "markov joint");

  std::vector<double> mass(spec.p0);
  for (std::size_t step = 1; step < spec.n; ++step) {
    const StochasticMatrix& p = spec.kernel(step);
    std::vector<double> next(mass.size() * s);
    for (std::size_t c = 0; c < mass.size(); ++c) {
      const std::size_t last = c % s;
      for (std::size_t y = 0; y < s; ++y) next[c * s + y] = mass[c] * p(last, y);
    }
    mass = std::move(next);
  }
  return JointDist(spec.alphabet, spec.n, std::move(mass));
}

HmmJoint build_hmm_joint(const HmmSpec& spec, std::uint64_t cell_budget) {
  spec.validate();
  const std::size_t h = spec.hidden.alphabet.size();
  const std::size_t o = spec.observed.size();
  const std::size_t r = h * o;
  const std::size_t n = spec.n();
  checked_cell_count(r, n, cell_budget, "hmm pair joint");

  std::vector<std::string> pair_labels;
  pair_labels.reserve(r);
  for (std::size_t a = 0; a < h; ++a) {
    for (std::size_t b = 0; b < o; ++b) {
      pair_labels.push_back(spec.hidden.alphabet.label(a) + "|" + spec.observed.label(b));
    }
  }

  std::vector<double> mass(r);
  const StochasticMatrix& q1 = spec.emission(1);
  for (std::size_t a = 0; a < h; ++a) {
    for (std::size_t b = 0; b < o; ++b) mass[a * o + b] = spec.hidden.p0[a] * q1(a, b);
  }
  for (std::size_t step = 1; step < n; ++step) {
    const StochasticMatrix& p = spec.hidden.kernel(step);
    const StochasticMatrix& q = spec.emission(step + 1);
    std::vector<double> next(mass.size() * r);
    for (std::size_t c = 0; c < mass.size(); ++c) {
      if (mass[c] == 0.0) continue;
      const std::size_t last_hidden = (c % r) / o;
      for (std::size_t a = 0; a < h; ++a) {
        const double move = mass[c] * p(last_hidden, a);
        for (std::size_t b = 0; b < o; ++b) next[c * r + a * o + b] = move * q(a, b);
      }
    }
    mass = std::move(next);
  }

  std::vector<double> observed(cell_count(o, n), 0.0);
  std::vector<std::size_t> digits(n);
  for (std::size_t c = 0; c < mass.size(); ++c) {
    decode(c, r, digits);
    std::size_t idx = 0;
    for (std::size_t d : digits) idx = idx * o + d % o;
    observed[idx] += mass[c];
  }
  return HmmJoint{JointDist(Alphabet(std::move(pair_labels)), n, std::move(mass)),
                  JointDist(spec.observed, n, std::move(observed))};
}

// ---------------------------------------------------------------------------
// Conditional laws

double prefix_probability(const JointDist& dist, std::span<const std::size_t> prefix) {
  if (prefix.size() > dist.n()) throw ValidationError("prefix longer than the sequence");
  const std::size_t block = cell_count(dist.radix(), dist.n() - prefix.size());
  const std::size_t offset = encode(prefix, dist.radix()) * block;
  const auto mass = dist.mass();
  return std::accumulate(mass.begin() + offset, mass.begin() + offset + block, 0.0);
}

std::vector<double> prefix_marginal(const JointDist& dist, std::size_t i) {
  if (i > dist.n()) throw ValidationError("prefix length exceeds n");
  const std::size_t block = cell_count(dist.radix(), dist.n() - i);
  const auto mass = dist.mass();
  std::vector<double> out(mass.size() / block, 0.0);
  for (std::size_t c = 0; c < mass.size(); ++c) out[c / block] += mass[c];
  return out;
}

Pmf conditional(const JointDist& dist, std::span<const std::size_t> prefix, std::size_t from) {
  const std::size_t n = dist.n();
  const std::size_t i = prefix.size();
  if (from <= i || from > n) {
    throw ValidationError("conditional: need prefix length < from <= n");
  }
  const std::size_t s = dist.radix();
  const std::size_t tail = cell_count(s, n - from + 1);
  const std::size_t middle = cell_count(s, from - i - 1);
  const std::size_t offset = encode(prefix, s) * tail * middle;
  const auto mass = dist.mass();

  std::vector<double> out(tail, 0.0);
  double total = 0.0;
  for (std::size_t m = 0; m < middle; ++m) {
    const std::size_t base = offset + m * tail;
    for (std::size_t t = 0; t < tail; ++t) {
      out[t] += mass[base + t];
      total += mass[base + t];
    }
  }
  if (!(total > kPositiveProbability)) {
    throw ConditioningError("conditioning on zero-probability prefix (" +
                                format_sequence(dist.alphabet(), prefix) + ")",
                            std::vector<std::size_t>(prefix.begin(), prefix.end()));
  }
  for (double& v : out) v /= total;
  // Renormalize the division residue so the Pmf invariant holds exactly.
  const double sum = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& v : out) v /= sum;
  return Pmf(dist.alphabet(), n - from + 1, std::move(out));
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ValidationError("tv_distance: shape mismatch");
  double half_l1 = 0.0;
  double positive = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double d = p[k] - q[k];
    half_l1 += std::abs(d);
    if (d > 0.0) positive += d;
  }
  half_l1 *= 0.5;
  if (std::abs(half_l1 - positive) > 1e-12) {
    throw ValidationError("tv_distance: inputs are not probability vectors of equal mass");
  }
  return half_l1;
}

double tv_distance(const Pmf& p, const Pmf& q) {
  if (p.radix() != q.radix() || p.length() != q.length()) {
    throw ValidationError("tv_distance: shape mismatch");
  }
  return tv_distance(p.mass(), q.mass());
}

// ---------------------------------------------------------------------------
// Truncation

double mass_outside(const JointDist& dist, std::size_t m) {
  if (m < 1 || m > dist.radix()) throw ValidationError("truncation level out of range");
  std::vector<std::size_t> digits(dist.n());
  double outside = 0.0;
  for (std::size_t c = 0; c < dist.cells(); ++c) {
    decode(c, dist.radix(), digits);
    if (std::any_of(digits.begin(), digits.end(), [m](std::size_t d) { return d >= m; })) {
      outside += dist[c];
    }
  }
  return outside;
}

JointDist truncate(const JointDist& dist, std::size_t m) {
  if (m < 1 || m > dist.radix()) throw ValidationError("truncation level out of range");
  const std::size_t n = dist.n();
  std::vector<double> mass(cell_count(m, n), 0.0);
  std::vector<std::size_t> digits(n);
  double outside = 0.0;
  for (std::size_t c = 0; c < dist.cells(); ++c) {
    decode(c, dist.radix(), digits);
    if (std::any_of(digits.begin(), digits.end(), [m](std::size_t d) { return d >= m; })) {
      outside += dist[c];
    } else {
      mass[encode(digits, m)] += dist[c];
    }
  }
  mass.back() += outside;  // (s_m, ..., s_m) is the last cell of S_m^n
  return JointDist(dist.alphabet().first(m), n, std::move(mass));
}

JointDist embed(const JointDist& dist, const Alphabet& super) {
  std::vector<std::size_t> remap(dist.radix());
  for (std::size_t a = 0; a < dist.radix(); ++a) remap[a] = super.index_of(dist.alphabet().label(a));
  const std::size_t n = dist.n();
  std::vector<double> mass(cell_count(super.size(), n), 0.0);
  std::vector<std::size_t> digits(n);
  for (std::size_t c = 0; c < dist.cells(); ++c) {
    decode(c, dist.radix(), digits);
    for (auto& d : digits) d = remap[d];
    mass[encode(digits, super.size())] += dist[c];
  }
  return JointDist(super, n, std::move(mass));
}

std::string format_sequence(const Alphabet& alphabet, std::span<const std::size_t> sequence) {
  std::string out;
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    if (k) out += ',';
    out += sequence[k] < alphabet.size() ? alphabet.label(sequence[k]) : "?";
  }
  return out;
}

}  // namespace mixconc

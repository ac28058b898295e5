#include "mixconc/bar.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mixconc/error.hpp"
#include "mixconc/kernel.hpp"
#include "mixconc/martingale.hpp"
#include "mixconc/mixing.hpp"
#include "mixconc/phi_norm.hpp"

namespace mixconc {

SignSequence sign_sequence(const MarkovSpec& spec, std::span<const std::size_t> z, double sign) {
  spec.validate();
  const std::size_t i = z.size();
  if (i < 1 || i > spec.n) throw ValidationError("sign_sequence: need a prefix of length 1..n");
  const std::size_t s = spec.alphabet.size();
  for (std::size_t symbol : z) {
    if (symbol >= s) throw ValidationError("sign_sequence: unknown symbol index");
  }
  std::vector<double> seed(s);
  const auto base = i == 1 ? std::span<const double>(spec.p0) : spec.kernel(i - 1).row(z[i - 2]);
  for (std::size_t y = 0; y < s; ++y) seed[y] = sign * ((y == z[i - 1] ? 1.0 : 0.0) - base[y]);

  SignSequence out;
  out.start = i;
  out.levels.push_back(std::move(seed));
  for (std::size_t step = i; step < spec.n; ++step) {
    out.levels.push_back(apply_kernel_transpose(out.levels.back(), spec.kernel(step)));
  }
  return out;
}

SignSequence sign_sequence(const MarkovSpec& spec, std::size_t z) {
  const std::size_t prefix[] = {z};
  return sign_sequence(spec, prefix);
}

BarFunction::BarFunction(std::size_t radix, std::size_t n, std::vector<std::uint8_t> bits)
    : radix_(radix), n_(n), bits_(std::move(bits)) {
  if (radix_ == 0 || n_ == 0) throw ValidationError("BAR function needs n >= 1 and a nonempty alphabet");
  if (bits_.size() != radix_ * n_) throw ValidationError("BAR function: expected n x |S| bits");
  for (auto& b : bits_) {
    if (b > 1) throw ValidationError("BAR function: bits must be 0 or 1");
  }
}

BarFunction BarFunction::parse(std::span<const std::string> rows) {
  if (rows.empty()) throw ValidationError("BAR function: no rows");
  const std::size_t radix = rows.front().size();
  std::vector<std::uint8_t> bits;
  for (const std::string& row : rows) {
    if (row.size() != radix) throw ValidationError("BAR function: rows must have equal length");
    for (char ch : row) {
      if (ch != '0' && ch != '1') throw ValidationError("BAR function: rows must be 0/1 strings");
      bits.push_back(ch == '1' ? 1 : 0);
    }
  }
  return BarFunction(radix, rows.size(), std::move(bits));
}

double BarFunction::evaluate(std::span<const std::size_t> x) const {
  if (x.size() != n_) throw ValidationError("BAR function: sequence length mismatch");
  double total = 0.0;
  for (std::size_t l = 0; l < n_; ++l) {
    if (x[l] >= radix_) throw ValidationError("BAR function: unknown symbol index");
    total += bits_[l * radix_ + x[l]];
  }
  return total;
}

std::vector<std::string> BarFunction::rows() const {
  std::vector<std::string> out(n_, std::string(radix_, '0'));
  for (std::size_t l = 0; l < n_; ++l) {
    for (std::size_t s = 0; s < radix_; ++s) {
      if (bits_[l * radix_ + s]) out[l][s] = '1';
    }
  }
  return out;
}

LipschitzFn BarFunction::to_lipschitz(std::uint64_t cell_budget) const {
  const std::size_t cells = checked_cell_count(radix_, n_, cell_budget, "BAR function table");
  std::vector<double> values(cells);
  std::vector<std::size_t> digits(n_);
  for (std::size_t x = 0; x < cells; ++x) {
    decode(x, radix_, digits);
    values[x] = evaluate(digits);
  }
  return LipschitzFn(radix_, n_, std::move(values));
}

BarFunction build_bar(const MarkovSpec& spec, std::span<const std::size_t> z, double sign,
                      double threshold) {
  const SignSequence levels = sign_sequence(spec, z, sign);
  const std::size_t s = spec.alphabet.size();
  std::vector<std::uint8_t> bits(spec.n * s, 0);
  for (std::size_t k = 0; k < levels.levels.size(); ++k) {
    const std::size_t position = levels.start + k;
    for (std::size_t y = 0; y < s; ++y) {
      bits[(position - 1) * s + y] = levels.levels[k][y] > threshold ? 1 : 0;
    }
  }
  return BarFunction(s, spec.n, std::move(bits));
}

BarFunction build_bar(const MarkovSpec& spec, std::size_t z, double threshold) {
  const std::size_t prefix[] = {z};
  return build_bar(spec, prefix, 1.0, threshold);
}

ExtremalReport verify_extremal(const MarkovSpec& spec, std::size_t i, ExtremalBudgets budgets) {
  spec.validate();
  if (i < 1 || i > spec.n) throw ValidationError("verify_extremal: need 1 <= i <= n");
  const JointDist joint = build_markov_joint(spec, budgets.cells);
  const std::size_t s = spec.alphabet.size();

  ExtremalReport report;
  report.i = i;
  report.full_support = spec.full_support();
  if (!report.full_support) {
    report.warnings.push_back("chain does not have full support; extremality is not guaranteed");
  }

  const auto marginal = prefix_marginal(joint, i);
  std::vector<int> signs;
  for (std::size_t cell = 0; cell < marginal.size(); ++cell) {
    if (!(marginal[cell] > kPositiveProbability)) continue;
    ExtremalEntry entry;
    entry.z = decode(cell, s, i);
    const std::span<const std::size_t> z(entry.z);
    const KernelFn kappa = kappa_prefix(joint, z);
    const KernelFn reduced = prefix_reduce(kappa, z.first(i - 1));
    const double plus = psi(reduced);
    const double minus = psi(-reduced);
    const int sign = plus >= minus ? 1 : -1;
    entry.psi_norm = std::max(plus, minus);
    entry.psi_norm_unreduced = psi_norm(kappa);

    if (oracle_candidate_count(s, reduced.length()) <= budgets.oracle) {
      entry.phi_norm = phi_norm_oracle(reduced, budgets.oracle).value;
      entry.phi_route = "enumeration";
    } else {
      entry.phi_norm = phi_norm_maxflow(reduced, budgets.cells).value;
      entry.phi_route = "max-flow";
    }

    const LipschitzFn own = build_bar(spec, z, sign).to_lipschitz(budgets.cells);
    entry.own_bar_gap = sign * inner(kappa, own) - entry.psi_norm;
    report.entries.push_back(std::move(entry));
    signs.push_back(sign);
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < report.entries.size(); ++k) {
    if (report.entries[k].psi_norm > report.entries[best].psi_norm) best = k;
  }
  report.argmax_z = report.entries[best].z;
  report.sign = signs[best];
  report.rhs = report.entries[best].psi_norm;
  report.bar = build_bar(spec, report.argmax_z, report.sign);

  const LipschitzFn phi_bar = report.bar->to_lipschitz(budgets.cells);
  const ConditionalMeans means(joint, phi_bar.values());
  report.lhs = means.sup_norm(i);
  for (ExtremalEntry& entry : report.entries) {
    const std::size_t cell = encode(entry.z, s);
    entry.bar_value = means.mean(i)[cell] - means.mean(i - 1)[cell / s];
    report.max_phi_norm = std::max(report.max_phi_norm, entry.phi_norm);
  }
  report.gap = std::abs(report.lhs - report.rhs);
  report.dominates_phi = report.lhs >= report.max_phi_norm - 1e-9;
  return report;
}

std::uint64_t bar_count(std::size_t n, std::size_t alphabet_size) {
  if (n == 0 || alphabet_size == 0) throw ValidationError("bar_count: need n >= 1 and |S| >= 1");
  if (n > 62 || alphabet_size > 62 || n * alphabet_size > 62) {
    throw ValidationError("bar_count: n |S| must be at most 62");
  }
  return std::uint64_t{1} << (n * alphabet_size);
}

namespace {

constexpr std::size_t kMaxGeneratedBits = 20;

template <typename Visit>
void for_each_bar_representation(std::size_t n, std::size_t alphabet_size, Visit visit) {
  const std::uint64_t total = bar_count(n, alphabet_size);
  if (n * alphabet_size > kMaxGeneratedBits) {
    throw CapacityError("BAR generation: too many representations", total,
                        std::uint64_t{1} << kMaxGeneratedBits);
  }
  checked_cell_count(alphabet_size, n, kDefaultCellBudget, "BAR function table");
  std::vector<std::uint8_t> bits(n * alphabet_size);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t b = 0; b < bits.size(); ++b) bits[b] = (mask >> b) & 1U;
    visit(BarFunction(alphabet_size, n, bits).to_lipschitz());
  }
}

}  // namespace

std::uint64_t count_bar_representations(std::size_t n, std::size_t alphabet_size) {
  std::uint64_t count = 0;
  for_each_bar_representation(n, alphabet_size, [&](const LipschitzFn& phi) {
    if (phi.lipschitz_const() <= 1.0 && phi.min_value() >= 0.0 &&
        phi.max_value() <= static_cast<double>(n)) {
      ++count;
    }
  });
  return count;
}

std::uint64_t count_distinct_bar_functions(std::size_t n, std::size_t alphabet_size) {
  std::set<std::vector<double>> seen;
  for_each_bar_representation(n, alphabet_size, [&](const LipschitzFn& phi) {
    seen.emplace(phi.values().begin(), phi.values().end());
  });
  return seen.size();
}

}  // namespace mixconc

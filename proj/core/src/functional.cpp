#include "mixconc/functional.hpp"

#include <algorithm>
#include <cmath>

#include "mixconc/bar.hpp"
#include "mixconc/error.hpp"
#include "mixconc/multi_index.hpp"

namespace mixconc {

Functional::Functional(Kind kind, std::string name, std::size_t radix, std::size_t n)
    : kind_(kind), name_(std::move(name)), radix_(radix), n_(n) {
  if (radix_ == 0 || n_ == 0) throw ValidationError("functional needs n >= 1 and a nonempty alphabet");
}

void Functional::finish_additive(std::vector<double> weights) {
  // For an additive function the extremes and the Lipschitz constant are
  // attained coordinate by coordinate.
  lipschitz_ = 0.0;
  min_ = 0.0;
  max_ = 0.0;
  for (std::size_t l = 0; l < n_; ++l) {
    const auto begin = weights.begin() + static_cast<std::ptrdiff_t>(l * radix_);
    const auto [lo, hi] = std::minmax_element(begin, begin + static_cast<std::ptrdiff_t>(radix_));
    min_ += *lo;
    max_ += *hi;
    lipschitz_ = std::max(lipschitz_, *hi - *lo);
  }
  weights_ = std::move(weights);
}

Functional Functional::hamming_weight(const Alphabet& alphabet, std::size_t n, std::string_view symbol) {
  const std::size_t target = alphabet.index_of(symbol);
  Functional out(Kind::hamming_weight, "hamming-weight:" + std::string(symbol), alphabet.size(), n);
  std::vector<double> weights(n * alphabet.size(), 0.0);
  for (std::size_t l = 0; l < n; ++l) weights[l * alphabet.size() + target] = 1.0;
  out.finish_additive(std::move(weights));
  return out;
}

Functional Functional::bar(const Alphabet& alphabet, std::size_t n, std::span<const std::string> rows) {
  const BarFunction parsed = BarFunction::parse(rows);
  if (parsed.radix() != alphabet.size() || parsed.n() != n) {
    throw ValidationError("bar functional: expected n rows of |S| bits");
  }
  std::string name = "bar:";
  for (std::size_t l = 0; l < rows.size(); ++l) name += (l ? "," : "") + rows[l];
  Functional out(Kind::bar, std::move(name), alphabet.size(), n);
  std::vector<double> weights(n * alphabet.size());
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t s = 0; s < alphabet.size(); ++s) weights[l * alphabet.size() + s] = parsed.bit(l + 1, s);
  }
  out.finish_additive(std::move(weights));
  return out;
}

Functional Functional::table(const Alphabet& alphabet, std::size_t n, std::vector<double> values) {
  Functional out(Kind::table, "table", alphabet.size(), n);
  const LipschitzFn fn(alphabet.size(), n, values);
  out.lipschitz_ = fn.lipschitz_const();
  out.min_ = fn.min_value();
  out.max_ = fn.max_value();
  out.values_ = std::move(values);
  return out;
}

Functional Functional::parse(std::string_view text, const Alphabet& alphabet, std::size_t n) {
  const std::size_t colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "hamming-weight" && !body.empty()) return hamming_weight(alphabet, n, body);
  if (head == "bar" && !body.empty()) {
    std::vector<std::string> rows;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = body.find(',', pos);
      rows.emplace_back(body.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return bar(alphabet, n, rows);
  }
  if (head == "table") throw ValidationError("table functionals need an explicit value array");
  throw ValidationError("unknown functional '" + std::string(text) + "'");
}

double Functional::evaluate(std::span<const std::size_t> x) const {
  if (x.size() != n_) throw ValidationError("functional: sequence length mismatch");
  for (std::size_t s : x) {
    if (s >= radix_) throw ValidationError("functional: unknown symbol index");
  }
  return evaluate_path(x);
}

LipschitzFn Functional::tabulate(std::uint64_t cell_budget) const {
  if (!weights_) return LipschitzFn(radix_, n_, values_);
  const std::size_t cells = checked_cell_count(radix_, n_, cell_budget, "functional table");
  std::vector<double> values(cells);
  std::vector<std::size_t> digits(n_);
  for (std::size_t x = 0; x < cells; ++x) {
    decode(x, radix_, digits);
    values[x] = evaluate_path(std::span<const std::size_t>(digits));
  }
  return LipschitzFn(radix_, n_, std::move(values));
}

}  // namespace mixconc

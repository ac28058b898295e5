#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace oracle {

std::vector<Seq> sequences(int s, int n) {
  std::vector<Seq> out{Seq{}};
  for (int pos = 0; pos < n; ++pos) {
    std::vector<Seq> next;
    for (const Seq& head : out) {
      for (int a = 0; a < s; ++a) {
        Seq x = head;
        x.push_back(a);
        next.push_back(x);
      }
    }
    out = next;
  }
  return out;
}

Law markov_law(const std::vector<double>& p0, const std::vector<Matrix>& kernels, int n) {
  Law out;
  for (const Seq& x : sequences(static_cast<int>(p0.size()), n)) {
    double p = p0[x[0]];
    for (int k = 1; k < n; ++k) {
      const Matrix& m = kernels.size() == 1 ? kernels[0] : kernels[k - 1];
      p *= m[x[k - 1]][x[k]];
    }
    out[x] = p;
  }
  return out;
}

Law from_joint(const mixconc::JointDist& dist) {
  Law out;
  const auto all = sequences(static_cast<int>(dist.radix()), static_cast<int>(dist.n()));
  for (std::size_t k = 0; k < all.size(); ++k) out[all[k]] = dist.mass()[k];
  return out;
}

Matrix to_matrix(const mixconc::StochasticMatrix& m) {
  Matrix out(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  }
  return out;
}

std::vector<Matrix> kernels_of(const mixconc::MarkovSpec& spec) {
  std::vector<Matrix> out;
  for (const auto& k : spec.kernels) out.push_back(to_matrix(k));
  return out;
}

double prefix_mass(const Law& law, const Seq& prefix) {
  double total = 0.0;
  for (const auto& [x, p] : law) {
    if (std::equal(prefix.begin(), prefix.end(), x.begin())) total += p;
  }
  return total;
}

Law future_law(const Law& law, const Seq& prefix, int j) {
  Law out;
  double total = 0.0;
  for (const auto& [x, p] : law) {
    if (!std::equal(prefix.begin(), prefix.end(), x.begin())) continue;
    out[Seq(x.begin() + (j - 1), x.end())] += p;
    total += p;
  }
  for (auto& [x, p] : out) p /= total;
  return out;
}

double tv(const Law& a, const Law& b) {
  Law keys = a;
  for (const auto& [x, p] : b) keys[x] += 0.0;
  double total = 0.0;
  for (const auto& [x, unused] : keys) {
    const double pa = a.count(x) ? a.at(x) : 0.0;
    const double pb = b.count(x) ? b.at(x) : 0.0;
    total += std::abs(pa - pb);
  }
  return 0.5 * total;
}

double eta_bar(const Law& law, int s, int i, int j) {
  double best = 0.0;
  for (const Seq& y : sequences(s, i - 1)) {
    for (int w = 0; w < s; ++w) {
      for (int v = 0; v < s; ++v) {
        if (v == w) continue;
        Seq a = y;
        a.push_back(w);
        Seq b = y;
        b.push_back(v);
        if (prefix_mass(law, a) <= 1e-300 || prefix_mass(law, b) <= 1e-300) continue;
        best = std::max(best, tv(future_law(law, a, j), future_law(law, b, j)));
      }
    }
  }
  return best;
}

double theta(const Matrix& m) {
  double best = 0.0;
  for (const auto& r1 : m) {
    for (const auto& r2 : m) {
      double d = 0.0;
      for (std::size_t c = 0; c < r1.size(); ++c) d += std::abs(r1[c] - r2[c]);
      best = std::max(best, 0.5 * d);
    }
  }
  return best;
}

double conditional_mean(const Law& law, const std::function<double(const Seq&)>& phi, const Seq& prefix) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& [x, p] : law) {
    if (!std::equal(prefix.begin(), prefix.end(), x.begin())) continue;
    num += p * phi(x);
    den += p;
  }
  return num / den;
}

double martingale_sup(const Law& law, const std::function<double(const Seq&)>& phi, int s, int i) {
  double best = 0.0;
  for (const Seq& z : sequences(s, i)) {
    if (prefix_mass(law, z) <= 1e-300) continue;
    const Seq shorter(z.begin(), z.end() - 1);
    best = std::max(best, std::abs(conditional_mean(law, phi, z) - conditional_mean(law, phi, shorter)));
  }
  return best;
}

double psi(const std::vector<double>& values, int s, int k) {
  if (k == 0) return 0.0;
  const auto all = sequences(s, k);
  std::map<Seq, double> projected;
  double positive = 0.0;
  for (std::size_t c = 0; c < all.size(); ++c) {
    positive += std::max(0.0, values[c]);
    projected[Seq(all[c].begin() + 1, all[c].end())] += values[c];
  }
  std::vector<double> next;
  for (const Seq& y : sequences(s, k - 1)) next.push_back(projected[y]);
  return positive + psi(next, s, k - 1);
}

namespace {

template <typename Visit>
void integer_lipschitz(int s, int k, Visit visit) {
  const auto all = sequences(s, k);
  const std::size_t cells = all.size();
  std::vector<int> phi(cells, 0);
  while (true) {
    bool ok = true;
    for (std::size_t a = 0; a < cells && ok; ++a) {
      for (std::size_t b = a + 1; b < cells && ok; ++b) {
        int d = 0;
        for (int p = 0; p < k; ++p) d += all[a][p] != all[b][p];
        ok = std::abs(phi[a] - phi[b]) <= d;
      }
    }
    if (ok) visit(phi);
    std::size_t pos = cells;
    while (pos > 0) {
      --pos;
      if (phi[pos] < k) {
        ++phi[pos];
        break;
      }
      phi[pos] = 0;
      if (pos == 0) return;
    }
  }
}

}  // namespace

double phi_norm_brute(const std::vector<double>& values, int s, int k) {
  double best = 0.0;
  integer_lipschitz(s, k, [&](const std::vector<int>& phi) {
    double dot = 0.0;
    for (std::size_t c = 0; c < phi.size(); ++c) dot += values[c] * phi[c];
    best = std::max(best, std::abs(dot));
  });
  return best;
}

long long count_integer_lipschitz(int s, int k) {
  long long count = 0;
  integer_lipschitz(s, k, [&](const std::vector<int>&) { ++count; });
  return count;
}

}  // namespace oracle

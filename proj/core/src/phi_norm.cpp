#include "mixconc/phi_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "mixconc/error.hpp"

namespace mixconc {
namespace {

// For each cell, the indices of Hamming neighbours that precede it in
// lexicographic order (same coordinates except one smaller digit).
std::vector<std::vector<std::size_t>> earlier_neighbours(std::size_t radix, std::size_t length) {
  const std::size_t cells = cell_count(radix, length);
  std::vector<std::vector<std::size_t>> out(cells);
  std::vector<std::size_t> digits(length);
  for (std::size_t x = 0; x < cells; ++x) {
    decode(x, radix, digits);
    std::size_t weight = 1;
    for (std::size_t pos = length; pos-- > 0;) {
      for (std::size_t d = 0; d < digits[pos]; ++d) out[x].push_back(x - (digits[pos] - d) * weight);
      weight *= radix;
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> all_neighbours(std::size_t radix, std::size_t length) {
  const std::size_t cells = cell_count(radix, length);
  std::vector<std::vector<std::size_t>> out(cells);
  std::vector<std::size_t> digits(length);
  for (std::size_t x = 0; x < cells; ++x) {
    decode(x, radix, digits);
    std::size_t weight = 1;
    for (std::size_t pos = length; pos-- > 0;) {
      for (std::size_t d = 0; d < radix; ++d) {
        if (d == digits[pos]) continue;
        out[x].push_back(x + d * weight - digits[pos] * weight);
      }
      weight *= radix;
    }
  }
  return out;
}

}  // namespace

std::uint64_t oracle_candidate_count(std::size_t radix, std::size_t length) {
  const std::uint64_t cells = saturating_power(radix, length);
  return saturating_power(length + 1, cells);
}

void for_each_lipschitz_vertex(std::size_t radix, std::size_t length, std::uint64_t budget,
                               const std::function<void(std::span<const double>)>& visit) {
  if (radix == 0) throw ValidationError("empty alphabet");
  const std::uint64_t candidates = oracle_candidate_count(radix, length);
  if (candidates > budget) {
    throw CapacityError("Phi-norm oracle: candidate space exceeds budget", candidates, budget);
  }
  const std::size_t cells = cell_count(radix, length);
  const int top = static_cast<int>(length);
  const auto earlier = earlier_neighbours(radix, length);
  std::vector<int> value(cells, 0);
  std::vector<double> as_real(cells, 0.0);

  // Iterative depth-first search: cell c takes values in [lo, hi] where the
  // window comes from its already-assigned neighbours.
  std::vector<int> hi(cells, 0);
  std::size_t c = 0;
  bool descend = true;
  while (true) {
    if (descend) {
      if (c == cells) {
        visit(as_real);
        descend = false;
        if (c == 0) return;
        --c;
        continue;
      }
      int lo = 0;
      int up = top;
      for (std::size_t nb : earlier[c]) {
        lo = std::max(lo, value[nb] - 1);
        up = std::min(up, value[nb] + 1);
      }
      if (lo > up) {
        descend = false;
        if (c == 0) return;
        --c;
        continue;
      }
      value[c] = lo;
      hi[c] = up;
      as_real[c] = lo;
      ++c;
    } else {
      if (value[c] < hi[c]) {
        ++value[c];
        as_real[c] = value[c];
        ++c;
        descend = true;
      } else {
        if (c == 0) return;
        --c;
      }
    }
  }
}

PhiNormResult phi_norm_oracle(const KernelFn& kappa, std::uint64_t budget) {
  // max |<kappa, phi>| = max(max <kappa, phi>, max <-kappa, phi>); each side keeps
  // its first maximizer, and the positive side wins a tie between the two.
  const auto kv = kappa.values();
  double best_plus = -std::numeric_limits<double>::infinity();
  double best_minus = -std::numeric_limits<double>::infinity();
  std::vector<double> plus_values;
  std::vector<double> minus_values;
  std::uint64_t visited = 0;
  for_each_lipschitz_vertex(kappa.radix(), kappa.length(), budget, [&](std::span<const double> phi) {
    ++visited;
    double dot = 0.0;
    for (std::size_t x = 0; x < phi.size(); ++x) dot += kv[x] * phi[x];
    if (dot > best_plus) {
      best_plus = dot;
      plus_values.assign(phi.begin(), phi.end());
    }
    if (-dot > best_minus) {
      best_minus = -dot;
      minus_values.assign(phi.begin(), phi.end());
    }
  });
  if (best_minus > best_plus) {
    return PhiNormResult{best_minus, LipschitzFn(kappa.radix(), kappa.length(), std::move(minus_values)), -1,
                         visited};
  }
  return PhiNormResult{best_plus, LipschitzFn(kappa.radix(), kappa.length(), std::move(plus_values)), 1,
                       visited};
}

namespace {

class Dinic {
 public:
  explicit Dinic(std::size_t nodes) : graph_(nodes), level_(nodes), iter_(nodes) {}

  void add_edge(std::size_t from, std::size_t to, double cap) {
    graph_[from].push_back({to, graph_[to].size(), cap});
    graph_[to].push_back({from, graph_[from].size() - 1, 0.0});
  }

  double max_flow(std::size_t source, std::size_t sink, double eps) {
    double flow = 0.0;
    while (bfs(source, sink, eps)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (true) {
        const double pushed = dfs(source, sink, std::numeric_limits<double>::infinity(), eps);
        if (pushed <= eps) break;
        flow += pushed;
      }
    }
    return flow;
  }

  /// Nodes reachable from source in the residual graph.
  std::vector<bool> source_side(std::size_t source, double eps) const {
    std::vector<bool> seen(graph_.size(), false);
    std::queue<std::size_t> queue;
    queue.push(source);
    seen[source] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (const Edge& e : graph_[u]) {
        if (e.cap > eps && !seen[e.to]) {
          seen[e.to] = true;
          queue.push(e.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    std::size_t to;
    std::size_t rev;
    double cap;
  };

  bool bfs(std::size_t source, std::size_t sink, double eps) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (const Edge& e : graph_[u]) {
        if (e.cap > eps && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          queue.push(e.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  double dfs(std::size_t u, std::size_t sink, double limit, double eps) {
    if (u == sink) return limit;
    for (std::size_t& k = iter_[u]; k < graph_[u].size(); ++k) {
      Edge& e = graph_[u][k];
      if (e.cap > eps && level_[e.to] == level_[u] + 1) {
        const double pushed = dfs(e.to, sink, std::min(limit, e.cap), eps);
        if (pushed > eps) {
          e.cap -= pushed;
          graph_[e.to][e.rev].cap += pushed;
          return pushed;
        }
      }
    }
    return 0.0;
  }

  std::vector<std::vector<Edge>> graph_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

// max <weights, phi> over integer 1-Lipschitz phi into {0..k}; returns the value
// and writes the maximizer.
double max_closure(std::span<const double> weights, std::size_t length,
                   const std::vector<std::vector<std::size_t>>& neighbours, std::vector<double>& phi) {
  const std::size_t cells = weights.size();
  phi.assign(cells, 0.0);
  if (length == 0) return 0.0;
  // Node (x, t) for t = 1..k has index (t-1)*cells + x; it is in the closure iff phi(x) >= t.
  const std::size_t nodes = cells * length;
  const std::size_t source = nodes;
  const std::size_t sink = nodes + 1;
  double scale = 0.0;
  for (double w : weights) scale += std::abs(w);
  const double infinite = static_cast<double>(length) * scale + 1.0;
  const double eps = 1e-14 * std::max(1.0, scale);

  Dinic flow(nodes + 2);
  for (std::size_t t = 1; t <= length; ++t) {
    for (std::size_t x = 0; x < cells; ++x) {
      const std::size_t node = (t - 1) * cells + x;
      if (weights[x] > 0.0) {
        flow.add_edge(source, node, weights[x]);
      } else if (weights[x] < 0.0) {
        flow.add_edge(node, sink, -weights[x]);
      }
      if (t > 1) {
        const std::size_t below = (t - 2) * cells;
        flow.add_edge(node, below + x, infinite);
        for (std::size_t y : neighbours[x]) flow.add_edge(node, below + y, infinite);
      }
    }
  }
  flow.max_flow(source, sink, eps);
  const auto closure = flow.source_side(source, eps);
  for (std::size_t t = 1; t <= length; ++t) {
    for (std::size_t x = 0; x < cells; ++x) {
      if (closure[(t - 1) * cells + x]) phi[x] = std::max(phi[x], static_cast<double>(t));
    }
  }
  // Report the exact inner product of the recovered maximizer rather than the
  // flow arithmetic, so value and argmax always agree.
  double dot = 0.0;
  for (std::size_t x = 0; x < cells; ++x) dot += weights[x] * phi[x];
  return dot;
}

}  // namespace

PhiNormResult phi_norm_maxflow(const KernelFn& kappa, std::uint64_t cell_budget) {
  const std::size_t cells =
      checked_cell_count(kappa.radix(), kappa.length(), cell_budget, "Phi-norm max-flow graph");
  if (static_cast<std::uint64_t>(cells) * kappa.length() > cell_budget) {
    throw CapacityError("Phi-norm max-flow graph exceeds budget", cells * kappa.length(), cell_budget);
  }
  const auto neighbours = all_neighbours(kappa.radix(), kappa.length());
  const auto values = kappa.values();
  std::vector<double> negated(values.begin(), values.end());
  for (double& v : negated) v = -v;

  std::vector<double> plus_phi;
  std::vector<double> minus_phi;
  const double plus = max_closure(values, kappa.length(), neighbours, plus_phi);
  const double minus = max_closure(negated, kappa.length(), neighbours, minus_phi);
  const std::uint64_t visited = static_cast<std::uint64_t>(cells) * kappa.length();
  if (minus > plus) {
    return PhiNormResult{minus, LipschitzFn(kappa.radix(), kappa.length(), std::move(minus_phi)), -1,
                         visited};
  }
  return PhiNormResult{plus, LipschitzFn(kappa.radix(), kappa.length(), std::move(plus_phi)), 1,
                       visited};
}

}  // namespace mixconc

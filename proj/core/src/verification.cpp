#include "mixconc/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "mixconc/bar.hpp"
#include "mixconc/certificate.hpp"
#include "mixconc/error.hpp"
#include "mixconc/kernel.hpp"
#include "mixconc/martingale.hpp"
#include "mixconc/mixing.hpp"
#include "mixconc/montecarlo.hpp"
#include "mixconc/phi_norm.hpp"
#include "mixconc/random.hpp"

namespace mixconc::verification {
namespace {

using random::Rng;

class Check {
 public:
  Check(std::string suite, std::string name) {
    result_.suite = std::move(suite);
    result_.name = std::move(name);
  }

  void le(double lhs, double rhs, double tol) { record(lhs - rhs, tol, lhs, rhs, "<="); }
  void eq(double lhs, double rhs, double tol) { record(std::abs(lhs - rhs), tol, lhs, rhs, "=="); }
  void truth(bool ok, const std::string& what) {
    ++result_.cases;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.detail = what;
    }
  }

  CheckResult done() && { return std::move(result_); }

 private:
  void record(double miss, double tol, double lhs, double rhs, const char* op) {
    ++result_.cases;
    result_.worst = std::max(result_.worst, std::max(0.0, miss));
    if (!(miss <= tol) && result_.passed) {
      result_.passed = false;
      std::ostringstream msg;
      msg.precision(17);
      msg << "expected " << lhs << ' ' << op << ' ' << rhs << " within " << tol;
      result_.detail = msg.str();
    }
  }

  CheckResult result_;
};

std::size_t cases(const Options& o, std::size_t base) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(base) * o.scale)));
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool enumerable(const ProcessSpec& spec, std::uint64_t budget) {
  std::size_t radix = observed_alphabet(spec).size();
  if (const auto* h = std::get_if<HmmSpec>(&spec)) radix *= h->hidden.alphabet.size();
  return saturating_power(radix, sequence_length(spec)) <= budget;
}

// Runs body, turning library errors into a failed check.
void guarded(Check& check, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    check.truth(false, std::string("error: ") + e.what());
  }
}

// ---- process ---------------------------------------------------------------

std::vector<CheckResult> process_suite(const Options& o) {
  std::vector<CheckResult> out;
  Rng rng(o.seed ^ 0x11);
  {
    Check c("process", "tv-metric-axioms");
    for (std::size_t k = 0; k < cases(o, 300); ++k) {
      const std::size_t s = pick(rng, 1, 6);
      const auto p = random::pmf(rng, s, true);
      const auto q = random::pmf(rng, s, true);
      const auto r = random::pmf(rng, s, true);
      c.eq(tv_distance(p, q), tv_distance(q, p), 1e-12);
      c.le(tv_distance(p, r), tv_distance(p, q) + tv_distance(q, r), 1e-12);
      c.eq(tv_distance(p, p), 0.0, 1e-12);
      c.le(0.0, tv_distance(p, q), 0.0);
      c.le(tv_distance(p, q), 1.0, 1e-12);
    }
    out.push_back(std::move(c).done());
  }
  {
    Check c("process", "markov-property-of-conditionals");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 40); ++k) {
        const std::size_t s = pick(rng, 2, 3);
        const std::size_t n = pick(rng, 2, 4);
        const MarkovSpec spec = random::markov_spec(rng, s, n, false, k % 2 == 1);
        const JointDist joint = build_markov_joint(spec);
        for (std::size_t i = 2; i < n; ++i) {
          const auto marginal = prefix_marginal(joint, i);
          for (std::size_t w = 0; w < s; ++w) {
            std::vector<double> reference;
            for (std::size_t cell = 0; cell < marginal.size(); ++cell) {
              if (cell % s != w || !(marginal[cell] > kPositiveProbability)) continue;
              const auto z = decode(cell, s, i);
              const Pmf law = conditional(joint, z, i + 1);
              if (reference.empty()) {
                reference.assign(law.mass().begin(), law.mass().end());
              } else {
                c.le(tv_distance(law.mass(), reference), 0.0, 1e-12);
              }
            }
          }
        }
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("process", "truncation-tv-and-monotonicity");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 30); ++k) {
        const std::size_t s = pick(rng, 2, 5);
        const std::size_t n = pick(rng, 1, 3);
        const JointDist joint = random::joint(rng, s, n, k % 2 == 0);
        double previous = 2.0;
        for (std::size_t m = 1; m <= s; ++m) {
          const JointDist cut = embed(truncate(joint, m), joint.alphabet());
          const double tv = tv_distance(joint, cut);
          const double outside = mass_outside(joint, m);
          c.le(tv, outside, 1e-12);
          c.le(outside, previous, 1e-12);
          previous = outside;
        }
        c.eq(tv_distance(joint, truncate(joint, s)), 0.0, 1e-12);
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("process", "identity-emission-hmm");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 20); ++k) {
        const std::size_t s = pick(rng, 1, 3);
        const std::size_t n = pick(rng, 1, 3);
        HmmSpec hmm;
        hmm.hidden = random::markov_spec(rng, s, n, false);
        hmm.observed = hmm.hidden.alphabet;
        hmm.emissions = {StochasticMatrix::identity(s)};
        hmm.homogeneous_emissions = true;
        const JointDist observed = build_hmm_joint(hmm).observed;
        const JointDist hidden = build_markov_joint(hmm.hidden);
        c.le(tv_distance(observed, hidden), 0.0, 1e-12);
      }
    });
    out.push_back(std::move(c).done());
  }
  for (const NamedSpec& f : o.fixtures) {
    if (!enumerable(f.spec, o.cell_budget)) continue;
    Check c("process", "fixture-normalized:" + f.name);
    guarded(c, [&] {
      const JointDist joint = observed_joint(f.spec, o.cell_budget);
      double total = 0.0;
      for (double v : joint.mass()) total += v;
      c.eq(total, 1.0, 1e-12);
    });
    out.push_back(std::move(c).done());
  }
  return out;
}

// ---- mixing ----------------------------------------------------------------

void check_markov_contraction(Check& c, const MarkovSpec& spec, std::uint64_t budget) {
  const JointDist joint = build_markov_joint(spec, budget);
  const MixingProfile profile = mixing_profile(joint);
  const ContractionProfile contraction = contraction_profile(spec);
  for (std::size_t i = 1; i <= spec.n; ++i) {
    for (std::size_t j = i + 1; j <= spec.n; ++j) c.le(profile.at(i, j), markov_eta_bound(spec, i, j), 1e-10);
  }
  c.le(profile.inf_norm, contraction.m_n, 1e-10);
}

void check_hmm_bound(Check& c, const HmmSpec& spec, std::uint64_t budget) {
  const JointDist observed = build_hmm_joint(spec, budget).observed;
  for (std::size_t i = 1; i <= spec.n(); ++i) {
    for (std::size_t j = i + 1; j <= spec.n(); ++j) c.le(eta_bar(observed, i, j), hmm_eta_bound(spec, i, j), 1e-10);
  }
}

std::vector<CheckResult> mixing_suite(const Options& o) {
  std::vector<CheckResult> out;
  Rng rng(o.seed ^ 0x22);
  {
    Check c("mixing", "markov-eta-below-theta-products");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 60); ++k) {
        const MarkovSpec spec =
            random::markov_spec(rng, pick(rng, 1, 3), pick(rng, 1, 4), k % 3 == 0, k % 4 == 1);
        check_markov_contraction(c, spec, o.cell_budget);
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("mixing", "hmm-eta-below-hidden-theta-products");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 40); ++k) {
        const HmmSpec spec = random::hmm_spec(rng, pick(rng, 1, 3), pick(rng, 1, 3), pick(rng, 1, 3), k % 3 == 1);
        check_hmm_bound(c, spec, o.cell_budget);
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("mixing", "kernel-contraction");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 1000); ++k) {
        const std::size_t s = pick(rng, 1, 5);
        const auto u = random::zero_sum_vector(rng, s);
        const StochasticMatrix p = random::stochastic_matrix(rng, s, s, k % 2 == 0);
        const auto v = apply_kernel_transpose(u, p);
        double lu = 0.0;
        double lv = 0.0;
        for (double x : u) lu += std::abs(x);
        for (double x : v) lv += std::abs(x);
        c.le(lv, theta(p) * lu, 1e-12);
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("mixing", "delta-matrix-structure");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 30); ++k) {
        const JointDist joint = random::joint(rng, pick(rng, 1, 3), pick(rng, 1, 3), k % 2 == 0);
        const MixingProfile p = mixing_profile(joint);
        double worst_row = 0.0;
        for (std::size_t i = 1; i <= p.n; ++i) {
          c.eq(p.at(i, i), 1.0, 0.0);
          double row = 0.0;
          for (std::size_t j = 1; j <= p.n; ++j) {
            if (j < i) c.eq(p.at(i, j), 0.0, 0.0);
            if (j > i) {
              c.le(0.0, p.at(i, j), 0.0);
              c.le(p.at(i, j), 1.0, 0.0);
            }
            row += p.at(i, j);
          }
          c.eq(p.h_rows[i - 1], row, 1e-12);
          worst_row = std::max(worst_row, row);
        }
        c.eq(p.inf_norm, worst_row, 1e-12);
        c.eq(p.h_rows.back(), 1.0, 0.0);
      }
    });
    out.push_back(std::move(c).done());
  }
  for (const NamedSpec& f : o.fixtures) {
    if (const auto* m = std::get_if<MarkovSpec>(&f.spec)) {
      Check c("mixing", "fixture-m_n-range:" + f.name);
      guarded(c, [&] {
        const ContractionProfile q = contraction_profile(*m);
        c.le(1.0, q.m_n, 0.0);
        const double worst = q.thetas.empty() ? 0.0 : *std::max_element(q.thetas.begin(), q.thetas.end());
        if (worst < 1.0) c.le(q.m_n, 1.0 / (1.0 - worst), 1e-12);
      });
      out.push_back(std::move(c).done());
    }
    if (!enumerable(f.spec, o.cell_budget)) continue;
    Check c("mixing", "fixture-bounds:" + f.name);
    guarded(c, [&] {
      if (const auto* m = std::get_if<MarkovSpec>(&f.spec)) check_markov_contraction(c, *m, o.cell_budget);
      else if (const auto* h = std::get_if<HmmSpec>(&f.spec)) check_hmm_bound(c, *h, o.cell_budget);
      else mixing_profile(std::get<JointDist>(f.spec));
      c.truth(true, "");
    });
    out.push_back(std::move(c).done());
  }
  return out;
}

// ---- martingale ------------------------------------------------------------

constexpr std::uint64_t kSmallOracle = 1U << 17;

std::vector<CheckResult> martingale_suite(const Options& o) {
  std::vector<CheckResult> out;
  Rng rng(o.seed ^ 0x33);
  const std::pair<std::size_t, std::size_t> shapes[] = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}};
  {
    Check c("martingale", "phi-norm-below-psi-norm");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 200); ++k) {
        const auto [s, len] = shapes[k % 5];
        const KernelFn kappa = random::kernel(rng, s, len);
        const double psi_value = psi(kappa);
        const PhiNormResult phi = phi_norm_oracle(kappa, kSmallOracle);
        c.le(phi.value, psi_norm(kappa), 1e-9);
        c.eq(phi_norm_maxflow(kappa).value, phi.value, 1e-9);
        for_each_lipschitz_vertex(s, len, kSmallOracle,
                                  [&](std::span<const double> v) { c.le(inner(kappa, v), psi_value, 1e-9); });
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("martingale", "level-sums-equal-eta");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 20); ++k) {
        const std::size_t s = pick(rng, 2, 3);
        const std::size_t n = pick(rng, 2, 3);
        const JointDist joint = random::joint(rng, s, n, k % 2 == 1);
        for (std::size_t i = 1; i < n; ++i) {
          const auto marginal = prefix_marginal(joint, i);
          for (std::size_t a = 0; a < marginal.size(); ++a) {
            for (std::size_t b = a + 1; b < marginal.size(); ++b) {
              if (a / s != b / s) continue;
              if (!(marginal[a] > kPositiveProbability && marginal[b] > kPositiveProbability)) continue;
              const auto y = decode(a / s, s, i - 1);
              const KernelFn kappa = kappa_pair(joint, i, y, a % s, b % s);
              KernelFn level = prefix_reduce(kappa, y);
              double bound = 1.0;
              for (std::size_t j = i + 1; j <= n; ++j) {
                level = project(level);
                const double e = eta(joint, i, j, y, a % s, b % s);
                c.eq(level.positive_sum(), e, 1e-12);
                bound += e;
              }
              const KernelFn reduced = prefix_reduce(kappa, y);
              c.le(psi(reduced), bound, 1e-12);
              c.le(psi(-reduced), bound, 1e-12);
              c.eq(kappa.sum(), 0.0, 1e-12);
            }
          }
        }
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("martingale", "martingale-differences-below-h-rows");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 10); ++k) {
        const std::size_t s = pick(rng, 2, 3);
        const std::size_t n = s == 3 ? pick(rng, 1, 2) : pick(rng, 1, 3);
        const JointDist joint = random::joint(rng, s, n, k % 2 == 0);
        const MixingProfile profile = mixing_profile(joint);
        for_each_lipschitz_vertex(s, n, kSmallOracle, [&](std::span<const double> phi) {
          const auto norms = martingale_sup_norms(joint, phi);
          for (std::size_t i = 0; i < n; ++i) c.le(norms[i], profile.h_rows[i], 1e-9);
        });
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("martingale", "psi-section-identity-and-commuting");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 100); ++k) {
        const std::size_t s = pick(rng, 1, 3);
        const std::size_t len = pick(rng, 1, 4);
        const KernelFn kappa = random::kernel(rng, s, len);
        double rebuilt = 0.0;
        for (std::size_t y = 0; y < s; ++y) {
          const KernelFn sec = section(kappa, y);
          rebuilt += psi(sec) + std::max(0.0, sec.sum());
          if (len >= 2) {
            const KernelFn a = project(sec);
            const KernelFn b = section(project(kappa), y);
            for (std::size_t x = 0; x < a.cells(); ++x) c.eq(a[x], b[x], 1e-12);
            c.eq(a.sum(), sec.sum(), 1e-12);
          }
        }
        c.eq(psi(kappa), rebuilt, 1e-12);
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("martingale", "norm-axioms");
    guarded(c, [&] {
      std::uniform_real_distribution<double> scale(-3.0, 3.0);
      for (std::size_t k = 0; k < cases(o, 100); ++k) {
        const auto [s, len] = shapes[k % 5];
        const KernelFn a = random::kernel(rng, s, len);
        const KernelFn b = random::kernel(rng, s, len);
        const double factor = scale(rng);
        const auto phi = [&](const KernelFn& x) { return phi_norm_oracle(x, kSmallOracle).value; };
        c.le(0.0, psi_norm(a), 0.0);
        c.eq(psi_norm(a.scaled(factor)), std::abs(factor) * psi_norm(a), 1e-9);
        c.le(psi_norm(a + b), psi_norm(a) + psi_norm(b), 1e-9);
        c.le(0.0, phi(a), 0.0);
        c.eq(phi(a.scaled(factor)), std::abs(factor) * phi(a), 1e-9);
        c.le(phi(a + b), phi(a) + phi(b), 1e-9);
      }
      const KernelFn zero = KernelFn::zero(2, 2);
      c.eq(psi_norm(zero), 0.0, 0.0);
      c.eq(phi_norm_oracle(zero).value, 0.0, 0.0);
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("martingale", "kappa-kernels-sum-to-zero");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 20); ++k) {
        const std::size_t s = pick(rng, 1, 3);
        const std::size_t n = pick(rng, 1, 3);
        const JointDist joint = random::joint(rng, s, n, k % 2 == 0);
        for (std::size_t i = 1; i <= n; ++i) {
          const auto marginal = prefix_marginal(joint, i);
          for (std::size_t cell = 0; cell < marginal.size(); ++cell) {
            if (!(marginal[cell] > kPositiveProbability)) continue;
            const auto z = decode(cell, s, i);
            c.eq(kappa_prefix(joint, z).sum(), 0.0, 1e-12);
          }
        }
      }
    });
    out.push_back(std::move(c).done());
  }
  return out;
}

// ---- bar -------------------------------------------------------------------

void check_extremal(Check& c, const MarkovSpec& spec, std::uint64_t budget) {
  const ExtremalReport r = verify_extremal(spec, 1, {budget, kSmallOracle});
  for (const ExtremalEntry& e : r.entries) {
    c.eq(e.own_bar_gap, 0.0, 1e-10);
    c.le(e.phi_norm, r.lhs, 1e-9);
  }
  c.eq(r.lhs, r.rhs, 1e-10);
}

std::vector<CheckResult> bar_suite(const Options& o) {
  std::vector<CheckResult> out;
  Rng rng(o.seed ^ 0x44);
  {
    Check c("bar", "bar-attains-psi-at-first-position");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 40); ++k) {
        const std::size_t s = pick(rng, 1, 3);
        const std::size_t n = pick(rng, 1, 3);
        check_extremal(c, random::markov_spec(rng, s, n, k % 2 == 0), o.cell_budget);
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("bar", "bar-functions-are-1-lipschitz");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 40); ++k) {
        const std::size_t s = pick(rng, 1, 3);
        const std::size_t n = pick(rng, 1, 4);
        const MarkovSpec spec = random::markov_spec(rng, s, n, false, k % 2 == 0);
        const std::size_t z = pick(rng, 0, s - 1);
        const LipschitzFn phi = build_bar(spec, z).to_lipschitz();
        c.le(phi.lipschitz_const(), 1.0, 0.0);
        c.le(0.0, phi.min_value(), 0.0);
        c.le(phi.max_value(), static_cast<double>(n), 0.0);
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("bar", "bar-count-matches-generation");
    guarded(c, [&] {
      for (std::size_t n = 1; n <= 4; ++n) {
        for (std::size_t s = 1; n * s <= 8; ++s) {
          c.eq(static_cast<double>(count_bar_representations(n, s)), static_cast<double>(bar_count(n, s)), 0.0);
        }
      }
    });
    out.push_back(std::move(c).done());
  }
  for (const NamedSpec& f : o.fixtures) {
    const auto* m = std::get_if<MarkovSpec>(&f.spec);
    if (!m || !m->full_support() || saturating_power(m->alphabet.size(), m->n) > 4096) continue;
    Check c("bar", "fixture-extremal:" + f.name);
    guarded(c, [&] { check_extremal(c, *m, o.cell_budget); });
    out.push_back(std::move(c).done());
  }
  return out;
}

// ---- certificates ----------------------------------------------------------

std::vector<CheckResult> certificate_suite(const Options& o) {
  std::vector<CheckResult> out;
  Rng rng(o.seed ^ 0x55);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  {
    Check c("certificates", "general-equals-azuma-pipeline");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 30); ++k) {
        const JointDist joint = random::joint(rng, pick(rng, 1, 3), pick(rng, 1, 3));
        const MixingProfile p = mixing_profile(joint);
        const double cc = 0.1 + 2.0 * unit(rng);
        const double d = std::sqrt(static_cast<double>(p.n)) * cc * p.inf_norm;
        for (double t = 0.0; t <= 6.0; t += 0.5) c.eq(certify_general(p, cc, t), azuma_bound(d, t), 1e-12);
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("certificates", "exact-delta-dominates-contraction-surrogate");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 30); ++k) {
        const MarkovSpec spec = random::markov_spec(rng, pick(rng, 1, 3), pick(rng, 1, 4), k % 2 == 0);
        const MixingProfile p = mixing_profile(build_markov_joint(spec));
        const ContractionProfile q = contraction_profile(spec);
        for (double t = 0.0; t <= 6.0; t += 0.5) {
          c.le(certify_general(p, 1.0, t), certify_markov(q, 1.0, t, Metric::hamming), 1e-12);
        }
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("certificates", "median-bound-is-shifted-alpha");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 30); ++k) {
        const JointDist joint = random::joint(rng, pick(rng, 2, 3), pick(rng, 1, 3));
        const MixingProfile p = mixing_profile(joint);
        const double t0 = median_threshold(p);
        c.eq(concentration_alpha(p, t0), 0.5, 1e-12);
        for (double extra = 0.05; extra < 3.0; extra += 0.25) {
          c.eq(median_bound(p, t0 + extra), concentration_alpha(p, extra), 1e-12);
        }
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("certificates", "bounds-monotone-and-start-at-two");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 30); ++k) {
        const Certificate cert{pick(rng, 1, 50), 0.1 + unit(rng), k % 2 ? Metric::hamming : Metric::normalized_hamming,
                               ConstantKind::m_n, 1.0 + 3.0 * unit(rng), ""};
        c.eq(cert.bound(0.0), 2.0, 0.0);
        double previous = 2.0;
        for (double t = 0.0; t < 10.0; t += 0.1) {
          c.le(cert.bound(t), previous, 0.0);
          c.le(cert.effective(t), 1.0, 0.0);
          previous = cert.bound(t);
        }
      }
    });
    out.push_back(std::move(c).done());
  }
  return out;
}

// ---- montecarlo ------------------------------------------------------------

void check_exact_domination(Check& c, const MarkovSpec& spec, std::uint64_t budget) {
  const JointDist joint = build_markov_joint(spec, budget);
  const MixingProfile p = mixing_profile(joint);
  const ContractionProfile q = contraction_profile(spec);
  for (std::size_t s = 0; s < spec.alphabet.size(); ++s) {
    const Functional phi = Functional::hamming_weight(spec.alphabet, spec.n, spec.alphabet.label(s));
    const double mean = exact_mean(joint, phi);
    c.eq(mean, exact_mean(spec, phi), 1e-12);
    for (double t = 0.0; t <= static_cast<double>(spec.n) + 0.5; t += 0.25) {
      const double tail = exact_tail(joint, phi, mean, t);
      c.le(tail, certify_general(p, 1.0, t), 1e-12);
      c.le(tail, certify_markov(q, 1.0, t, Metric::hamming), 1e-12);
    }
  }
}

std::vector<CheckResult> montecarlo_suite(const Options& o) {
  std::vector<CheckResult> out;
  Rng rng(o.seed ^ 0x66);
  {
    Check c("montecarlo", "exact-tails-below-certificates");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 40); ++k) {
        check_exact_domination(c, random::markov_spec(rng, pick(rng, 1, 3), pick(rng, 1, 4), k % 2 == 0, k % 3 == 0),
                               o.cell_budget);
      }
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("montecarlo", "sampling-independent-of-workers");
    guarded(c, [&] {
      const MarkovSpec spec = random::markov_spec(rng, 3, 5, false);
      const auto a = sample_paths(spec, o.seed, 2000, 1);
      const auto b = sample_paths(spec, o.seed, 2000, 3);
      const auto d = sample_paths(spec, o.seed, 2000, 8);
      c.truth(a.symbols == b.symbols && a.symbols == d.symbols, "paths differ across worker counts");
    });
    out.push_back(std::move(c).done());
  }
  {
    Check c("montecarlo", "monte-carlo-matches-enumeration");
    guarded(c, [&] {
      for (std::size_t k = 0; k < cases(o, 5); ++k) {
        const MarkovSpec spec = random::markov_spec(rng, 2, 3, false);
        const JointDist joint = build_markov_joint(spec);
        const Functional phi = Functional::hamming_weight(spec.alphabet, spec.n, spec.alphabet.label(0));
        const double mean = exact_mean(joint, phi);
        const std::vector<double> grid{0.25, 0.75, 1.25, 1.75};
        const auto paths = sample_paths(spec, o.seed + k, 20000);
        const TailEstimate est = empirical_tail(paths, phi, grid, MeanSpec::exact(mean));
        for (std::size_t g = 0; g < grid.size(); ++g) {
          const double p = std::clamp(exact_tail(joint, phi, mean, grid[g]), 0.0, 1.0);
          c.le(std::abs(est.empirical[g] - p), 5.0 * std::sqrt(p * (1.0 - p) / 20000.0) + 1e-12, 0.0);
        }
      }
    });
    out.push_back(std::move(c).done());
  }
  for (const NamedSpec& f : o.fixtures) {
    const auto* m = std::get_if<MarkovSpec>(&f.spec);
    if (!m || saturating_power(m->alphabet.size(), m->n) > 4096) continue;
    Check c("montecarlo", "fixture-exact-tails:" + f.name);
    guarded(c, [&] { check_exact_domination(c, *m, o.cell_budget); });
    out.push_back(std::move(c).done());
  }
  return out;
}

using SuiteFn = std::vector<CheckResult> (*)(const Options&);

struct SuiteEntry {
  std::string_view name;
  SuiteFn run;
};

constexpr SuiteEntry kSuites[] = {
    {"process", process_suite},         {"mixing", mixing_suite},
    {"martingale", martingale_suite},   {"bar", bar_suite},
    {"certificates", certificate_suite}, {"montecarlo", montecarlo_suite},
};

}  // namespace

std::vector<std::string_view> suite_names() {
  std::vector<std::string_view> out;
  for (const auto& s : kSuites) out.push_back(s.name);
  return out;
}

std::vector<CheckResult> run_suite(std::string_view name, const Options& options) {
  std::vector<CheckResult> out;
  bool found = false;
  for (const auto& s : kSuites) {
    if (name != "all" && name != s.name) continue;
    found = true;
    auto part = s.run(options);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  if (!found) throw ValidationError("unknown suite '" + std::string(name) + "'");
  return out;
}

}  // namespace mixconc::verification

#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "mixconc/error.hpp"
#include "mixconc/martingale.hpp"
#include "mixconc/mixing.hpp"
#include "mixconc/random.hpp"
#include "oracles.hpp"

using namespace mixconc;

namespace {

// count of symbol 0 over S^n
std::vector<double> count_first(std::size_t s, std::size_t n) {
  std::vector<double> phi(cell_count(s, n));
  std::vector<std::size_t> digits(n);
  for (std::size_t c = 0; c < phi.size(); ++c) {
    decode(c, s, digits);
    for (std::size_t d : digits) phi[c] += d == 0 ? 1.0 : 0.0;
  }
  return phi;
}

std::vector<double> random_lipschitz(std::mt19937_64& rng, std::size_t s, std::size_t n) {
  // a random 1-Lipschitz function: sum of per-coordinate weights in [0, 1]
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> weight(n, std::vector<double>(s));
  for (auto& row : weight) {
    for (double& w : row) w = u(rng);
  }
  std::vector<double> phi(cell_count(s, n));
  std::vector<std::size_t> digits(n);
  for (std::size_t c = 0; c < phi.size(); ++c) {
    decode(c, s, digits);
    for (std::size_t k = 0; k < n; ++k) phi[c] += weight[k][digits[k]];
  }
  return phi;
}

}  // namespace

TEST_SUITE("martingale") {

TEST_CASE("kappa of a pair on F1") {
  const JointDist joint = build_markov_joint(fixture::f1());
  const KernelFn k = kappa_pair(joint, 1, std::vector<std::size_t>{}, 0, 1);
  CHECK(std::abs(k.sum()) <= 1e-15);
  CHECK(std::abs(k.positive_sum() - 1.0) <= 1e-15);
  CHECK(std::abs(psi(k) - 1.75) <= 1e-12);
  const KernelFn last = kappa_pair(joint, 3, std::vector<std::size_t>{0, 0}, 0, 1);
  CHECK(last[0] == 1.0);
  CHECK(last[1] == -1.0);
  // the two point masses differ in the last coordinate, so they never merge
  CHECK(psi(last) == 3.0);
  CHECK_THROWS_AS(kappa_pair(joint, 2, std::vector<std::size_t>{}, 0, 1), ValidationError);
  CHECK_THROWS_AS(kappa_pair(joint, 1, std::vector<std::size_t>{}, 0, 2), ValidationError);
}

TEST_CASE("kappa of a prefix on F1") {
  const JointDist joint = build_markov_joint(fixture::f1());
  const KernelFn k = kappa_prefix(joint, std::vector<std::size_t>{0});
  CHECK(std::abs(k.sum()) <= 1e-15);
  CHECK(std::abs(k.positive_sum() - 0.5) <= 1e-15);
  CHECK(std::abs(psi(k) - 0.875) <= 1e-12);
  CHECK_THROWS_AS(kappa_prefix(joint, std::vector<std::size_t>{}), ValidationError);
}

TEST_CASE("null prefixes raise a conditioning error") {
  const JointDist joint(Alphabet({"a", "b"}), 2, {0.5, 0.5, 0.0, 0.0});
  try {
    kappa_prefix(joint, std::vector<std::size_t>{1});
    FAIL("expected a conditioning error");
  } catch (const ConditioningError& e) {
    CHECK(e.prefix() == std::vector<std::size_t>{1});
  }
}

TEST_CASE("martingale differences of the count of a on F1") {
  const JointDist joint = build_markov_joint(fixture::f1());
  const auto phi = count_first(2, 3);
  CHECK(std::abs(martingale_diff(joint, phi, 1, diff::AtPoint{{0}}) - 0.875) <= 1e-12);
  CHECK(std::abs(martingale_diff(joint, phi, 1, diff::AtPoint{{1}}) + 0.875) <= 1e-12);
  CHECK(std::abs(martingale_diff(joint, phi, 3, diff::AtPoint{{0, 0, 0}}) - 0.25) <= 1e-12);
  CHECK(std::abs(martingale_diff(joint, phi, 1, diff::SupNorm{}) - 0.875) <= 1e-12);
  CHECK(std::abs(martingale_diff(joint, phi, 1, diff::Pairwise{{}, 0, 1}) - 1.75) <= 1e-12);
  const std::vector<double> constant(8, 3.0);
  for (std::size_t i = 1; i <= 3; ++i) CHECK(std::abs(martingale_diff(joint, constant, i, diff::SupNorm{})) <= 1e-12);
  CHECK_THROWS_AS(martingale_diff(joint, phi, 2, diff::AtPoint{{0}}), ValidationError);
}

TEST_CASE("differences equal the kernel pairing") {
  random::Rng rng(31);
  std::mt19937_64 frng(32);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t s = 2 + rep % 2;
    const std::size_t n = 2 + rep % 2;
    const JointDist joint = random::joint(rng, s, n);
    const auto phi = random_lipschitz(frng, s, n);
    for (std::size_t i = 1; i <= n; ++i) {
      std::vector<std::size_t> z(i);
      for (std::size_t c = 0; c < cell_count(s, i); ++c) {
        decode(c, s, z);
        const double v = martingale_diff(joint, phi, i, diff::AtPoint{z});
        CHECK(std::abs(v - inner(kappa_prefix(joint, z), phi)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("sup norms match brute-force conditional means") {
  random::Rng rng(33);
  std::mt19937_64 frng(34);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t s = 2 + rep % 2;
    const std::size_t n = 1 + rep % 3;
    const JointDist joint = random::joint(rng, s, n, rep % 3 == 0);
    const auto law = oracle::from_joint(joint);
    const auto phi = random_lipschitz(frng, s, n);
    auto fn = [&](const oracle::Seq& x) {
      std::size_t c = 0;
      for (int d : x) c = c * s + static_cast<std::size_t>(d);
      return phi[c];
    };
    const auto norms = martingale_sup_norms(joint, phi);
    for (std::size_t i = 1; i <= n; ++i) {
      CHECK(std::abs(norms[i - 1] - oracle::martingale_sup(law, fn, static_cast<int>(s), static_cast<int>(i))) <= 1e-12);
    }
  }
}

TEST_CASE("differences telescope to phi minus its mean") {
  random::Rng rng(35);
  std::mt19937_64 frng(36);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t s = 3;
    const std::size_t n = 3;
    const JointDist joint = random::joint(rng, s, n);
    const auto phi = random_lipschitz(frng, s, n);
    const ConditionalMeans means(joint, phi);
    std::vector<std::size_t> x(n);
    for (std::size_t c = 0; c < joint.cells(); ++c) {
      decode(c, s, x);
      double total = 0.0;
      for (std::size_t i = 1; i <= n; ++i) total += martingale_diff(joint, phi, i, diff::AtPoint{{x.begin(), x.begin() + i}});
      CHECK(std::abs(total - (phi[c] - means.mean(0)[0])) <= 1e-12);
    }
  }
}

TEST_CASE("sup norms are invariant under translation and scale with phi") {
  random::Rng rng(37);
  std::mt19937_64 frng(38);
  for (int rep = 0; rep < 20; ++rep) {
    const JointDist joint = random::joint(rng, 2, 3);
    auto phi = random_lipschitz(frng, 2, 3);
    const auto base = martingale_sup_norms(joint, phi);
    auto shifted = phi;
    for (double& v : shifted) v = 0.5 * v + 7.0;
    const auto other = martingale_sup_norms(joint, shifted);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(other[i] - 0.5 * base[i]) <= 1e-12);
  }
}

TEST_CASE("level sums of a pair kernel are the eta coefficients") {
  random::Rng rng(39);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t s = 2 + rep % 2;
    const std::size_t n = 3;
    const JointDist joint = random::joint(rng, s, n);
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::size_t> y(i - 1);
      for (std::size_t c = 0; c < cell_count(s, i - 1); ++c) {
        decode(c, s, y);
        for (std::size_t w = 0; w < s; ++w) {
          for (std::size_t wh = 0; wh < s; ++wh) {
            const auto levels = psi_levels(kappa_pair(joint, i, y, w, wh));
            for (std::size_t j = i + 1; j <= n; ++j) {
              CHECK(std::abs(levels[j - 1] - eta(joint, i, j, y, w, wh)) <= 1e-12);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("martingale bound holds for random Lipschitz functions") {
  random::Rng rng(40);
  std::mt19937_64 frng(41);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t s = 2 + rep % 2;
    const std::size_t n = 1 + rep % 3;
    const JointDist joint = random::joint(rng, s, n, rep % 2 == 0);
    const MixingProfile profile = mixing_profile(joint);
    const auto norms = martingale_sup_norms(joint, random_lipschitz(frng, s, n));
    for (std::size_t i = 1; i <= n; ++i) CHECK(norms[i - 1] <= profile.h_rows[i - 1] + 1e-9);
  }
}

}  // TEST_SUITE

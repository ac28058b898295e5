#include <doctest.h>

#include <cmath>

#include "mixconc/error.hpp"
#include "mixconc/kernel.hpp"
#include "mixconc/random.hpp"
#include "oracles.hpp"

using namespace mixconc;

namespace {

bool close(const KernelFn& a, const KernelFn& b, double tol) {
  if (a.radix() != b.radix() || a.length() != b.length()) return false;
  for (std::size_t c = 0; c < a.cells(); ++c) {
    if (std::abs(a[c] - b[c]) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("martingale") {

TEST_CASE("project, section and prefix reduction on a small table") {
  // cells of S^2 with S = {0, 1}: 00, 01, 10, 11
  const KernelFn k(2, 2, {1.0, 2.0, 3.0, 4.0});
  CHECK(project(k).values()[0] == 4.0);
  CHECK(project(k).values()[1] == 6.0);
  CHECK(section(k, 0).values()[0] == 1.0);
  CHECK(section(k, 0).values()[1] == 3.0);
  CHECK(section(k, 1).values()[1] == 4.0);
  const std::vector<std::size_t> z{1};
  CHECK(prefix_reduce(k, z).values()[0] == 3.0);
  CHECK(prefix_reduce(k, z).values()[1] == 4.0);
  CHECK(prefix_reduce(k, std::vector<std::size_t>{}).cells() == 4);
  CHECK_THROWS_AS(prefix_reduce(k, std::vector<std::size_t>{1, 0}), ValidationError);
  CHECK(project(project(k)).values()[0] == 10.0);
  CHECK_THROWS_AS(project(project(project(k))), ValidationError);
  CHECK_THROWS_AS(section(k, 2), ValidationError);
  CHECK_THROWS_AS(KernelFn(2, 2, {1.0}), ValidationError);
}

TEST_CASE("psi examples") {
  CHECK(psi(KernelFn::zero(3, 2)) == 0.0);
  CHECK(psi(KernelFn::delta(2, 3, 5)) == 3.0);
  CHECK(psi(-KernelFn::delta(2, 3, 5)) == 0.0);
  CHECK(psi_norm(KernelFn::delta(2, 3, 5)) == 3.0);
  const auto levels = psi_levels(KernelFn::delta(3, 2, 4));
  CHECK(levels == std::vector<double>{1.0, 1.0});
  // difference of two point masses: one unit at every level until they merge
  const KernelFn d = KernelFn::delta(2, 3, 0) - KernelFn::delta(2, 3, 1);
  CHECK(psi_levels(d) == std::vector<double>{1.0, 1.0, 1.0});
  const KernelFn e = KernelFn::delta(2, 3, 0) - KernelFn::delta(2, 3, 4);
  CHECK(psi_levels(e) == std::vector<double>{1.0, 0.0, 0.0});
}

TEST_CASE("psi matches the recursive definition") {
  random::Rng rng(5);
  const std::vector<std::pair<std::size_t, std::size_t>> shapes{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {3, 3}, {4, 2}};
  for (const auto& [s, k] : shapes) {
    for (int rep = 0; rep < 20; ++rep) {
      const KernelFn kappa = random::kernel(rng, s, k);
      const std::vector<double> values(kappa.values().begin(), kappa.values().end());
      CHECK(std::abs(psi(kappa) - oracle::psi(values, static_cast<int>(s), static_cast<int>(k))) <= 1e-12);
    }
  }
}

TEST_CASE("section and projection commute") {
  random::Rng rng(6);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t s = 2 + rep % 2;
    const KernelFn kappa = random::kernel(rng, s, 2 + rep % 2);
    for (std::size_t y = 0; y < s; ++y) CHECK(close(project(section(kappa, y)), section(project(kappa), y), 1e-12));
  }
}

TEST_CASE("psi decomposes over sections of the last coordinate") {
  random::Rng rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t s = 2 + rep % 3;
    const std::size_t k = 1 + rep % 3;
    const KernelFn kappa = random::kernel(rng, s, k);
    double rhs = 0.0;
    for (std::size_t y = 0; y < s; ++y) {
      const KernelFn part = section(kappa, y);
      rhs += psi(part) + std::max(part.sum(), 0.0);
    }
    CHECK(std::abs(psi(kappa) - rhs) <= 1e-12);
  }
}

TEST_CASE("psi norm axioms") {
  random::Rng rng(8);
  std::uniform_real_distribution<double> scale(0.0, 5.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t s = 2 + rep % 2;
    const std::size_t k = 1 + rep % 3;
    const KernelFn a = random::kernel(rng, s, k);
    const KernelFn b = random::kernel(rng, s, k);
    const double c = scale(rng);
    CHECK(psi_norm(a) >= 0.0);
    CHECK(std::abs(psi(a.scaled(c)) - c * psi(a)) <= 1e-12);
    CHECK(std::abs(psi_norm(a.scaled(-c)) - c * psi_norm(a)) <= 1e-12);
    CHECK(psi_norm(-a) == psi_norm(a));
    CHECK(psi(a + b) <= psi(a) + psi(b) + 1e-12);
    CHECK(psi_norm(a + b) <= psi_norm(a) + psi_norm(b) + 1e-12);
    CHECK(psi_norm(a) >= psi(a));
  }
  CHECK(psi_norm(KernelFn::zero(2, 3)) == 0.0);
}

TEST_CASE("zero-sum kernels have equal positive and negative parts at every level") {
  random::Rng rng(9);
  for (int rep = 0; rep < 50; ++rep) {
    KernelFn kappa = random::kernel(rng, 3, 2);
    const double shift = kappa.sum() / static_cast<double>(kappa.cells());
    std::vector<double> v(kappa.values().begin(), kappa.values().end());
    for (double& x : v) x -= shift;
    const KernelFn z(3, 2, v);
    CHECK(std::abs(psi(z) - psi(-z)) <= 1e-12);
    CHECK(std::abs(psi_levels(z).back() - 0.5 * (std::abs(project(z)[0]) + std::abs(project(z)[1]) +
                                                  std::abs(project(z)[2]))) <= 1e-12);
  }
}

TEST_CASE("inner product") {
  const KernelFn k(2, 1, {2.0, -1.0});
  CHECK(inner(k, std::vector<double>{3.0, 1.0}) == 5.0);
  CHECK_THROWS_AS(inner(k, std::vector<double>{1.0}), ValidationError);
}

}  // TEST_SUITE

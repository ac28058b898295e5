#include <doctest.h>

#include <cmath>
#include <string>

#include "fixtures.hpp"
#include "mixconc/bar.hpp"
#include "mixconc/error.hpp"
#include "mixconc/kernel.hpp"
#include "mixconc/martingale.hpp"
#include "mixconc/phi_norm.hpp"
#include "mixconc/random.hpp"

using namespace mixconc;

namespace {

MarkovSpec flat_chain(std::size_t n) {
  return MarkovSpec::homogeneous_chain(Alphabet({"a", "b", "c"}), n, {0.2, 0.3, 0.5},
                                       StochasticMatrix::from_rows({{0.1, 0.6, 0.3}, {0.1, 0.6, 0.3}, {0.1, 0.6, 0.3}}));
}

}  // namespace

TEST_SUITE("bar") {

TEST_CASE("F1 sign sequence") {
  const SignSequence seq = sign_sequence(fixture::f1(), 0);
  CHECK(seq.start == 1);
  REQUIRE(seq.levels.size() == 3);
  CHECK(seq.levels[0] == std::vector<double>{0.5, -0.5});
  CHECK(seq.levels[1] == std::vector<double>{0.25, -0.25});
  CHECK(seq.levels[2] == std::vector<double>{0.125, -0.125});
  const SignSequence neg = sign_sequence(fixture::f1(), std::vector<std::size_t>{0}, -1.0);
  CHECK(neg.levels[1] == std::vector<double>{-0.25, 0.25});
  const SignSequence later = sign_sequence(fixture::f1(), std::vector<std::size_t>{0, 1});
  CHECK(later.start == 2);
  CHECK(later.levels.size() == 2);
  CHECK(later.levels[0] == std::vector<double>{-0.75, 0.75});
}

TEST_CASE("a memoryless chain forgets the seed after one step") {
  const SignSequence seq = sign_sequence(flat_chain(4), 1);
  CHECK(std::abs(seq.levels[0][1] - 0.7) <= 1e-15);
  for (std::size_t k = 1; k < 4; ++k) {
    for (double v : seq.levels[k]) CHECK(std::abs(v) <= 1e-15);
  }
  const BarFunction bar = build_bar(flat_chain(4), 1);
  CHECK(bar.rows() == std::vector<std::string>{"010", "000", "000", "000"});
}

TEST_CASE("F1 BAR function") {
  const BarFunction bar = build_bar(fixture::f1(), 0);
  CHECK(bar.rows() == std::vector<std::string>{"10", "10", "10"});
  CHECK(bar.evaluate(std::vector<std::size_t>{0, 0, 1}) == 2.0);
  CHECK(bar.bit(1, 0));
  CHECK_FALSE(bar.bit(3, 1));
  const LipschitzFn f = bar.to_lipschitz();
  CHECK(f.lipschitz_const() == 1.0);
  CHECK(f.values()[0] == 3.0);
  const BarFunction later = build_bar(fixture::f1(), std::vector<std::size_t>{0, 1});
  CHECK(later.rows() == std::vector<std::string>{"00", "01", "01"});
}

TEST_CASE("parse") {
  const std::vector<std::string> rows{"10", "01"};
  const BarFunction bar = BarFunction::parse(rows);
  CHECK(bar.n() == 2);
  CHECK(bar.radix() == 2);
  CHECK(bar.rows() == rows);
  CHECK_THROWS_AS(BarFunction::parse(std::vector<std::string>{"10", "1"}), ValidationError);
  CHECK_THROWS_AS(BarFunction::parse(std::vector<std::string>{"12"}), ValidationError);
  CHECK_THROWS_AS(BarFunction::parse(std::vector<std::string>{}), ValidationError);
}

TEST_CASE("extremality on F1") {
  const ExtremalReport r = verify_extremal(fixture::f1(), 1);
  CHECK(std::abs(r.lhs - 0.875) <= 1e-12);
  CHECK(std::abs(r.rhs - 0.875) <= 1e-12);
  CHECK(std::abs(r.max_phi_norm - 0.875) <= 1e-12);
  CHECK(r.dominates_phi);
  CHECK(r.full_support);
  CHECK(r.warnings.empty());
  CHECK(r.argmax_z == std::vector<std::size_t>{0});
  REQUIRE(r.bar.has_value());
  CHECK(r.bar->rows() == std::vector<std::string>{"10", "10", "10"});
  REQUIRE(r.entries.size() == 2);
  for (const auto& e : r.entries) {
    CHECK(std::abs(e.own_bar_gap) <= 1e-12);
    CHECK(e.phi_route == "enumeration");
  }
}

TEST_CASE("extremality at a later position") {
  const ExtremalReport r = verify_extremal(fixture::f1(), 2);
  CHECK(std::abs(r.rhs - 1.125) <= 1e-12);
  CHECK(r.argmax_z == std::vector<std::size_t>{0, 1});
  CHECK(r.lhs >= r.rhs - 1e-12);
  CHECK(r.entries.size() == 4);
  CHECK(r.dominates_phi);
}

TEST_CASE("degenerate extremal cases") {
  const MarkovSpec single = MarkovSpec::homogeneous_chain(Alphabet({"a"}), 3, {1.0}, StochasticMatrix::identity(1));
  const ExtremalReport one = verify_extremal(single, 1);
  CHECK(one.lhs == 0.0);
  CHECK(one.rhs == 0.0);
  const ExtremalReport flat = verify_extremal(flat_chain(3), 1);
  CHECK(std::abs(flat.rhs - 0.8) <= 1e-12);
  CHECK(std::abs(flat.lhs - 0.8) <= 1e-12);
}

TEST_CASE("zeros in the kernel are reported") {
  const MarkovSpec spec = MarkovSpec::homogeneous_chain(Alphabet({"a", "b"}), 3, {0.5, 0.5},
                                                        StochasticMatrix::from_rows({{1.0, 0.0}, {0.5, 0.5}}));
  const ExtremalReport r = verify_extremal(spec, 1);
  CHECK_FALSE(r.full_support);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("the BAR function attains psi on random full-support chains") {
  random::Rng rng(61);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t s = 2 + rep % 2;
    const std::size_t n = 1 + rep % 3;
    const MarkovSpec spec = random::markov_spec(rng, s, n, rep % 2 == 0, false);
    const JointDist joint = build_markov_joint(spec);
    for (std::size_t z = 0; z < s; ++z) {
      const KernelFn kappa = kappa_prefix(joint, std::vector<std::size_t>{z});
      const LipschitzFn bar = build_bar(spec, z).to_lipschitz();
      CHECK(std::abs(inner(kappa, bar) - psi(kappa)) <= 1e-10);
      const LipschitzFn neg = build_bar(spec, std::vector<std::size_t>{z}, -1.0).to_lipschitz();
      CHECK(std::abs(-inner(kappa, neg) - psi(-kappa)) <= 1e-10);
    }
    const ExtremalReport r = verify_extremal(spec, 1);
    CHECK(r.dominates_phi);
    CHECK(r.lhs >= r.rhs - 1e-10);
  }
}

TEST_CASE("projections of a Markov kernel follow the sign sequence") {
  random::Rng rng(62);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t s = 2 + rep % 2;
    const std::size_t n = 3;
    const MarkovSpec spec = random::markov_spec(rng, s, n, false, false);
    const JointDist joint = build_markov_joint(spec);
    const std::size_t z = static_cast<std::size_t>(rep) % s;
    const SignSequence seq = sign_sequence(spec, z);
    KernelFn kappa = kappa_prefix(joint, std::vector<std::size_t>{z});
    for (std::size_t m = 0; m < n; ++m) {
      std::vector<std::size_t> x(n - m);
      for (std::size_t c = 0; c < kappa.cells(); ++c) {
        decode(c, s, x);
        double expected = seq.levels[m][x[0]];
        for (std::size_t l = 1; l < x.size(); ++l) expected *= spec.kernel(m + l)(x[l - 1], x[l]);
        CHECK(std::abs(kappa[c] - expected) <= 1e-12);
      }
      if (m + 1 < n) kappa = project(kappa);
    }
  }
}

TEST_CASE("BAR cardinality") {
  CHECK(bar_count(3, 2) == 64);
  CHECK(bar_count(1, 1) == 2);
  CHECK(bar_count(2, 2) == 16);
  CHECK_THROWS_AS(bar_count(32, 2), ValidationError);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t s = 1; n * s <= 8; ++s) {
      CHECK(count_bar_representations(n, s) == bar_count(n, s));
      CHECK(count_distinct_bar_functions(n, s) <= bar_count(n, s));
    }
  }
  // constant rows collapse: mu = (00, 11) and (11, 00) give the same function
  CHECK(count_distinct_bar_functions(2, 2) < 16);
  CHECK(count_distinct_bar_functions(1, 2) == 4);
}

}  // TEST_SUITE

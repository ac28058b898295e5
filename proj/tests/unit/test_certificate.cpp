#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "mixconc/certificate.hpp"
#include "mixconc/error.hpp"
#include "mixconc/random.hpp"

using namespace mixconc;

TEST_SUITE("certificates") {

TEST_CASE("azuma") {
  CHECK(azuma_bound(1.0, 2.0) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-15));
  CHECK(azuma_bound(1.0, 0.0) == 2.0);
  CHECK_THROWS_AS(azuma_bound(0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(azuma_bound(1.0, -1.0), ValidationError);
  const Certificate cert = make_azuma_certificate(4, 2.0);
  CHECK(cert.kind == ConstantKind::explicit_d);
  CHECK(cert.bound(2.0) == azuma_bound(2.0, 2.0));
}

TEST_CASE("F1 certificates") {
  const MixingProfile profile = mixing_profile(build_markov_joint(fixture::f1()));
  const double expected = 2.0 * std::exp(-1.0 / 18.375);
  CHECK(std::abs(certify_general(profile, 1.0, 1.0) - expected) <= 1e-12);
  CHECK(std::abs(certify_markov(contraction_profile(fixture::f1()), 1.0, 1.0, Metric::hamming) - expected) <= 1e-12);
  CHECK(certify_general(profile, 1.0, 0.0) == 2.0);
  const Certificate cert = make_general_certificate(profile, 1.0, Metric::hamming);
  CHECK(cert.n == 3);
  CHECK(cert.constant == doctest::Approx(1.75));
  CHECK(std::abs(cert.bound(1.0) - expected) <= 1e-12);
  CHECK(cert.effective(1.0) == 1.0);
  CHECK(cert.effective(20.0) == cert.bound(20.0));
  CHECK_THROWS_AS(certify_general(profile, -1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(certify_general(profile, 1.0, -0.5), ValidationError);
}

TEST_CASE("product measure concentration") {
  // independent coordinates: Delta_n is the identity
  MixingProfile profile;
  profile.n = 100;
  profile.h_rows.assign(100, 1.0);
  profile.inf_norm = 1.0;
  CHECK(mixing_profile(fixture::product(3, {0.5, 0.5})).inf_norm == doctest::Approx(1.0));
  CHECK(std::abs(concentration_alpha(profile, 0.3) - 2.0 * std::exp(-4.5)) <= 1e-15);
  const double t0 = median_threshold(profile);
  CHECK(std::abs(t0 - std::sqrt(2.0 * std::log(4.0) / 100.0)) <= 1e-15);
  CHECK(std::abs(concentration_alpha(profile, t0) - 0.5) <= 1e-12);
  CHECK(std::abs(median_bound(profile, 0.5) - concentration_alpha(profile, 0.5 - t0)) <= 1e-15);
  CHECK_THROWS_AS(median_bound(profile, t0), OutOfValidityError);
  CHECK_THROWS_AS(median_bound(profile, 0.01), OutOfValidityError);
}

TEST_CASE("normalized metric") {
  const ContractionProfile profile = contraction_profile(fixture::two_state(100, 0.75));
  const double m = profile.m_n;
  CHECK(std::abs(certify_markov(profile, 1.0, 0.5, Metric::normalized_hamming) -
                 2.0 * std::exp(-100.0 * 0.25 / (2.0 * m * m))) <= 1e-15);
  // a 1-Lipschitz function in Hamming is n-Lipschitz in the normalized metric
  const double t = 10.0;
  CHECK(std::abs(certify_markov(profile, 1.0, t, Metric::hamming) -
                 certify_markov(profile, 100.0, t, Metric::normalized_hamming)) <= 1e-15);
  const Certificate cert = make_markov_certificate(profile, 1.0, Metric::normalized_hamming);
  CHECK(cert.metric == Metric::normalized_hamming);
  CHECK(cert.bound(0.5) == certify_markov(profile, 1.0, 0.5, Metric::normalized_hamming));
  CHECK(parse_metric("hamming") == Metric::hamming);
  CHECK(parse_metric("normalized-hamming") == Metric::normalized_hamming);
  CHECK_THROWS_AS(parse_metric("euclid"), ValidationError);
}

TEST_CASE("Markov certificates are weaker than the general ones and decrease in t") {
  random::Rng rng(71);
  for (int rep = 0; rep < 50; ++rep) {
    const MarkovSpec spec = random::markov_spec(rng, 2 + rep % 2, 1 + rep % 4, rep % 2 == 0, rep % 3 == 0);
    const Certificate general = make_general_certificate(mixing_profile(build_markov_joint(spec)), 1.0, Metric::hamming);
    const Certificate markov = make_markov_certificate(contraction_profile(spec), 1.0, Metric::hamming);
    double previous = 2.0;
    for (double t = 0.0; t <= 10.0; t += 0.25) {
      CHECK(general.bound(t) <= markov.bound(t) + 1e-12);
      CHECK(general.bound(t) <= previous);
      previous = general.bound(t);
    }
  }
}

TEST_CASE("t grids") {
  CHECK(parse_t_grid("0:0.5:2") == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  CHECK(parse_t_grid("1.5") == std::vector<double>{1.5});
  CHECK(parse_t_grid("0:0.1:0.3").size() == 4);
  CHECK(parse_t_grid("0:0.5:20").size() == 41);
  CHECK(parse_t_grid("0:0.4:1") == std::vector<double>{0.0, 0.4, 0.8});
  CHECK_THROWS_AS(parse_t_grid("0:0:1"), ValidationError);
  CHECK_THROWS_AS(parse_t_grid("0:-1:1"), ValidationError);
  CHECK_THROWS_AS(parse_t_grid("-1"), ValidationError);
  CHECK_THROWS_AS(parse_t_grid("a:b"), ValidationError);
  CHECK_THROWS_AS(parse_t_grid("2:1:1"), ValidationError);
  CHECK_THROWS_AS(parse_t_grid(""), ValidationError);
}

}  // TEST_SUITE

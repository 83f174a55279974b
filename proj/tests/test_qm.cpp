#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "belltime/inequalities.hpp"
#include "belltime/qm.hpp"

using namespace belltime;
using std::numbers::pi;
using std::numbers::sqrt2;

TEST_CASE("pair probability follows the squared-cosine overlap") {
  CHECK(qm_pair_probability(Angle(0.0), Angle(0.0)) == Catch::Approx(0.5));
  CHECK(qm_pair_probability(Angle(0.0), Angle(pi / 8.0)) ==
        Catch::Approx(0.4267766952966369).margin(1e-12));
  CHECK(qm_pair_probability(Angle(0.0), Angle(3.0 * pi / 8.0)) ==
        Catch::Approx(0.07322330470336313).margin(1e-12));
}

TEST_CASE("singles are unpolarized") {
  for (double a : {0.0, pi / 4.0, 3.0 * pi / 8.0, 1.234}) {
    CHECK(qm_singles_probability(Angle(a)) == 0.5);
  }
}

TEST_CASE("expectation values") {
  CHECK(qm_expectation(Angle(0.0), Angle(0.0)) == 1.0);
  CHECK(qm_expectation(Angle(0.0), Angle(pi / 8.0)) ==
        Catch::Approx(sqrt2 / 2.0).margin(1e-12));
  CHECK(qm_expectation(Angle(0.0), Angle(pi / 4.0)) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("joint outcome table is a distribution and reproduces E") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> dist(0.0, pi);
  for (int i = 0; i < 500; ++i) {
    const Angle a(dist(gen)), b(dist(gen));
    const JointOutcomeProbs p = qm_joint_outcome_probs(a, b);
    for (double v : {p.pp, p.pm, p.mp, p.mm}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(p.pp + p.pm + p.mp + p.mm == Catch::Approx(1.0).margin(1e-14));
    // +-1-weighted sum of the outcome table equals the closed-form expectation
    CHECK(p.pp + p.mm - p.pm - p.mp ==
          Catch::Approx(qm_expectation(a, b)).margin(1e-13));
  }
}

TEST_CASE("symmetries of the pair probability") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> dist(0.0, pi);
  for (int i = 0; i < 300; ++i) {
    const Angle a(dist(gen)), b(dist(gen));
    CHECK(qm_pair_probability(a, b) == Catch::Approx(qm_pair_probability(b, a)));
    CHECK(qm_pair_probability(a, b) ==
          Catch::Approx(qm_pair_probability(Angle(a.radians() + pi), b)).margin(1e-13));
  }
}

TEST_CASE("standard quad reference data") {
  const CorrelationData d = qm_correlation_data(SettingsQuad::standard());

  CHECK(d.pair_prob(SettingsPair::ab) == Catch::Approx(0.4267766952966369).margin(1e-13));
  CHECK(d.pair_prob(SettingsPair::ab_prime) ==
        Catch::Approx(0.07322330470336313).margin(1e-13));
  CHECK(d.pair_prob(SettingsPair::a_prime_b) ==
        Catch::Approx(0.4267766952966369).margin(1e-13));
  CHECK(d.pair_prob(SettingsPair::a_prime_b_prime) ==
        Catch::Approx(0.4267766952966369).margin(1e-13));
  CHECK(d.single_a_prime == 0.5);
  CHECK(d.single_b == 0.5);
  CHECK(d.expectation(SettingsPair::ab) == Catch::Approx(sqrt2 / 2.0).margin(1e-13));
  CHECK(d.expectation(SettingsPair::ab_prime) ==
        Catch::Approx(-sqrt2 / 2.0).margin(1e-13));

  SECTION("probability-form sum equals (1 + sqrt 2)/2 to machine precision") {
    CHECK(std::fabs(ch_pair_sum(d) - 0.5 * (1.0 + sqrt2)) < 1e-12);
  }
  SECTION("expectation-form S equals 2 sqrt 2 to machine precision") {
    CHECK(std::fabs(chsh_s(d).value - 2.0 * sqrt2) < 1e-12);
  }
}

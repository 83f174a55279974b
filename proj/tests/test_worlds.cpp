#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "belltime/qm.hpp"
#include "belltime/worlds.hpp"

using namespace belltime;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

const SettingsQuad kStandard = SettingsQuad::standard();
const CorrelationData kQm = qm_correlation_data(kStandard);

// Independent assembly of the overlap-weighted pair combination: walk the four
// quarters of the default layout and weight each factual pair probability by
// the overlap of every station whose requested setting was not in force.
double brute_force_qm_like_pair_sum(const CorrelationData& d, const SettingsQuad& quad) {
  const double wa = std::pow(std::cos(quad.alpha.radians() - quad.alpha_prime.radians()), 2);
  const double wb = std::pow(std::cos(quad.beta.radians() - quad.beta_prime.radians()), 2);
  const std::array<SettingsPair, 4> layout = {SettingsPair::ab_prime, SettingsPair::ab,
                                              SettingsPair::a_prime_b,
                                              SettingsPair::a_prime_b_prime};
  auto full_average = [&](SettingsPair target) {
    double sum = 0.0;
    for (SettingsPair scheduled : layout) {
      double w = 1.0;
      if (a_index(target) != a_index(scheduled)) w *= wa;
      if (b_index(target) != b_index(scheduled)) w *= wb;
      sum += w * d.pair_prob(scheduled);
    }
    return sum / 4.0;
  };
  return full_average(SettingsPair::ab) - full_average(SettingsPair::ab_prime) +
         full_average(SettingsPair::a_prime_b) +
         full_average(SettingsPair::a_prime_b_prime);
}

}  // namespace

TEST_CASE("counterfactual expectation terms per world") {
  const std::array<double, 4> e = {0.707, -0.707, 0.707, 0.707};

  SECTION("equal-average world triples the factual terms") {
    const auto cf =
        world_counterfactual_expectations(WorldAssumption::average_equal, e, kStandard);
    for (int i = 0; i < 4; ++i) CHECK(cf[i] == Catch::Approx(3.0 * e[i]).margin(1e-12));
    CHECK(cf[0] == Catch::Approx(2.121).margin(1e-3));
  }
  SECTION("zero world zeroes them") {
    const auto cf = world_counterfactual_expectations(WorldAssumption::zero, e, kStandard);
    for (double v : cf) CHECK(v == 0.0);
  }
  SECTION("overlap world scales by 5/4 at the standard quad") {
    const auto cf = world_counterfactual_expectations(WorldAssumption::qm_like, e, kStandard);
    CHECK(cf[0] == Catch::Approx(0.884).margin(1e-3));
    for (int i = 0; i < 4; ++i) CHECK(cf[i] == Catch::Approx(1.25 * e[i]).margin(1e-12));
  }
  SECTION("pointwise world implies the average world's terms") {
    const auto a =
        world_counterfactual_expectations(WorldAssumption::pointwise_equal, e, kStandard);
    const auto b =
        world_counterfactual_expectations(WorldAssumption::average_equal, e, kStandard);
    CHECK(a == b);
  }
}

TEST_CASE("overlap weights at the standard quad are (1/2, 1/2, 1/4)") {
  const WorldWeights w = qm_like_weights(kStandard);
  CHECK(w.w_a == Catch::Approx(0.5).margin(1e-15));
  CHECK(w.w_b == Catch::Approx(0.5).margin(1e-15));
  CHECK(w.w_a * w.w_b == Catch::Approx(0.25).margin(1e-15));
  CHECK(w.sum() == Catch::Approx(1.25).margin(1e-14));
}

TEST_CASE("probability-form reports per world") {
  SECTION("equal-average world keeps the usual window, reference data violates") {
    const WorldReport r = world_ch_report(WorldAssumption::average_equal, kQm, kStandard);
    CHECK(r.ch_value == Catch::Approx(0.5 * (1.0 + sqrt2)).margin(1e-12));
    CHECK(r.ch_lower == 0.0);
    CHECK(r.ch_upper == 1.0);
    CHECK(r.ch_violated);
  }
  SECTION("zero world: quarter-weighted value sits inside [-1, 0]") {
    const WorldReport r = world_ch_report(WorldAssumption::zero, kQm, kStandard);
    CHECK(r.ch_pair_sum == Catch::Approx(0.25 * 0.5 * (1.0 + sqrt2)).margin(1e-12));
    CHECK(r.ch_value == Catch::Approx(-0.19822330470336313).margin(1e-12));
    CHECK(r.ch_value >= -1.0);
    CHECK(r.ch_value <= 0.0);
    CHECK_FALSE(r.ch_violated);
  }
  SECTION("overlap world: weighted pair sum reproduces 0.458") {
    const WorldReport r = world_ch_report(WorldAssumption::qm_like, kQm, kStandard);
    CHECK(r.ch_pair_sum == Catch::Approx(0.458).margin(5e-4));
    CHECK(r.ch_pair_sum == Catch::Approx(0.45802669529663687).margin(1e-12));
    CHECK(r.ch_value == Catch::Approx(0.45802669529663687 - 0.75).margin(1e-12));
    CHECK_FALSE(r.ch_violated);

    SECTION("general-weight assembly matches an independent brute-force build") {
      CHECK(r.ch_pair_sum ==
            Catch::Approx(brute_force_qm_like_pair_sum(kQm, kStandard)).margin(1e-13));
    }
    SECTION("the quarter-weighted singles reading lands above the window") {
      const double alt = qm_like_ch_value_quarter_weighted_singles(kQm, kStandard);
      CHECK(alt == Catch::Approx(0.45802669529663687 - 0.375).margin(1e-12));
      CHECK(alt > 0.0);
    }
  }
}

TEST_CASE("expectation-form reports per world") {
  SECTION("equal-average world: bound 2, violated") {
    const WorldReport r = world_chsh_report(WorldAssumption::average_equal, kQm, kStandard);
    CHECK(r.chsh_bound == 2.0);
    CHECK(r.chsh_value == Catch::Approx(2.0 * sqrt2).margin(1e-12));
    CHECK(r.chsh_violated);
  }
  SECTION("zero world: bound 8, not violated") {
    const WorldReport r = world_chsh_report(WorldAssumption::zero, kQm, kStandard);
    CHECK(r.chsh_bound == 8.0);
    CHECK_FALSE(r.chsh_violated);
  }
  SECTION("overlap world: bound 32/9, not violated") {
    const WorldReport r = world_chsh_report(WorldAssumption::qm_like, kQm, kStandard);
    CHECK(std::fabs(r.chsh_bound - 32.0 / 9.0) < 1e-12);
    CHECK_FALSE(r.chsh_violated);
  }
  SECTION("violation flags always equal value-vs-bound") {
    for (WorldAssumption w : all_worlds) {
      const WorldReport r = world_report(w, kQm, kStandard);
      CHECK(r.chsh_violated == (r.chsh_value > r.chsh_bound));
      CHECK(r.ch_violated == (r.ch_value < r.ch_lower || r.ch_value > r.ch_upper));
    }
  }
}

TEST_CASE("overlap world generalizes to non-standard quads") {
  const SettingsQuad quad(Angle(0.0), Angle(pi / 3.0), Angle(pi / 6.0), Angle(pi / 2.0));
  const WorldWeights w = qm_like_weights(quad);
  CHECK(w.w_a == Catch::Approx(0.25).margin(1e-14));
  CHECK(w.w_b == Catch::Approx(0.25).margin(1e-14));

  const CorrelationData d = qm_correlation_data(quad);
  const WorldReport chsh = world_chsh_report(WorldAssumption::qm_like, d, quad);
  CHECK(chsh.chsh_bound == Catch::Approx(8.0 / (1.0 + 9.0 / 16.0)).margin(1e-12));

  const WorldReport ch = world_ch_report(WorldAssumption::qm_like, d, quad);
  CHECK(ch.ch_pair_sum ==
        Catch::Approx(brute_force_qm_like_pair_sum(d, quad)).margin(1e-13));

  const std::array<double, 4> e = {0.5, -0.25, 0.75, 0.1};
  const auto cf = world_counterfactual_expectations(WorldAssumption::qm_like, e, quad);
  for (int i = 0; i < 4; ++i) {
    CHECK(cf[i] == Catch::Approx(w.sum() * e[i]).margin(1e-13));
  }
}

TEST_CASE("world reports for simulated-style data keep flags consistent") {
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> prob(0.0, 0.5);
  std::uniform_real_distribution<double> expect(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    CorrelationData d;
    for (double& p : d.pair_probs) p = prob(gen);
    d.single_a_prime = 0.5;
    d.single_b = 0.5;
    for (double& e : d.expectations) e = expect(gen);
    for (WorldAssumption w : all_worlds) {
      const WorldReport r = world_report(w, d, kStandard);
      CHECK(r.ch_violated == (r.ch_value < r.ch_lower || r.ch_value > r.ch_upper));
      CHECK(r.chsh_violated == (r.chsh_value > r.chsh_bound));
    }
  }
}

#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "belltime/angles.hpp"
#include "belltime/schedule.hpp"

using namespace belltime;
using std::numbers::pi;

TEST_CASE("angle canonicalization") {
  CHECK(Angle(0.0).radians() == 0.0);
  CHECK(Angle(pi).radians() == 0.0);
  CHECK(Angle(-pi / 2.0).radians() == Catch::Approx(pi / 2.0));
  CHECK(Angle(5.0 * pi / 4.0).radians() == Catch::Approx(pi / 4.0));

  SECTION("idempotent") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> dist(-20.0, 20.0);
    for (int i = 0; i < 200; ++i) {
      const double v = Angle::canonicalize(dist(gen));
      CHECK(Angle::canonicalize(v) == v);
      CHECK(v >= 0.0);
      CHECK(v < pi);
    }
  }

  SECTION("orientations equal iff they differ by a multiple of pi") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> dist(0.0, pi);
    std::uniform_int_distribution<int> mult(-3, 3);
    for (int i = 0; i < 200; ++i) {
      const double base = dist(gen);
      const Angle a(base);
      const Angle shifted(base + mult(gen) * pi);
      CHECK(angular_separation(a, shifted) < 1e-9);
      const Angle other(base + 0.37);
      CHECK(angular_separation(a, other) > 1e-3);
    }
  }

  SECTION("non-finite rejected") {
    CHECK_THROWS_AS(Angle(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
    CHECK_THROWS_AS(Angle(std::numeric_limits<double>::infinity()), std::invalid_argument);
  }
}

TEST_CASE("settings quad invariants") {
  CHECK_NOTHROW(SettingsQuad::standard());
  // alpha = alpha' is not a usable quad, even when written pi apart.
  CHECK_THROWS_AS(SettingsQuad(Angle(0.0), Angle(pi), Angle(0.1), Angle(0.2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(SettingsQuad(Angle(0.0), Angle(0.5), Angle(0.2), Angle(0.2)),
                  std::invalid_argument);

  const SettingsQuad q = SettingsQuad::standard();
  CHECK(q.alpha.radians() == 0.0);
  CHECK(q.alpha_prime.radians() == Catch::Approx(pi / 4.0));
  CHECK(q.beta.radians() == Catch::Approx(pi / 8.0));
  CHECK(q.beta_prime.radians() == Catch::Approx(3.0 * pi / 8.0));
}

TEST_CASE("default schedule layout") {
  const Schedule s = build_schedule(1.0, SettingsQuad::standard());

  SECTION("settings at sample times") {
    // quarter 1 carries (alpha, beta'), quarter 2 (alpha, beta), ...
    auto at = [&](double t) { return s.settings_at(t); };
    CHECK(at(0.1).first.radians() == 0.0);
    CHECK(at(0.1).second.radians() == Catch::Approx(3.0 * pi / 8.0));
    CHECK(at(0.3).first.radians() == 0.0);
    CHECK(at(0.3).second.radians() == Catch::Approx(pi / 8.0));
    CHECK(at(0.99).first.radians() == Catch::Approx(pi / 4.0));
    CHECK(at(0.99).second.radians() == Catch::Approx(3.0 * pi / 8.0));
  }

  SECTION("boundaries belong to the later quarter") {
    CHECK(s.pair_at(0.0) == SettingsPair::ab_prime);
    CHECK(s.pair_at(0.5) == SettingsPair::a_prime_b);
    CHECK(s.pair_at(3.0 / 8.0) == SettingsPair::ab);
    CHECK(s.pair_at(0.25) == SettingsPair::ab);
    CHECK(s.pair_at(0.75) == SettingsPair::a_prime_b_prime);
    CHECK(s.pair_at(1.0) == SettingsPair::a_prime_b_prime);
  }

  SECTION("time domain enforced") {
    CHECK_THROWS_AS(s.settings_at(-0.01), std::out_of_range);
    CHECK_THROWS_AS(s.settings_at(1.01), std::out_of_range);
  }

  SECTION("station blocks: A constant per half, B constant on the middle half") {
    for (double t = 0.0; t < 0.5; t += 1.0 / 512.0) {
      CHECK(s.settings_at(t).first == s.quad().alpha);
      CHECK(s.settings_at(t + 0.5).first == s.quad().alpha_prime);
    }
    for (double t = 0.25; t < 0.75; t += 1.0 / 512.0) {
      CHECK(s.settings_at(t).second == s.quad().beta);
    }
    for (double t = 0.0; t < 0.25; t += 1.0 / 512.0) {
      CHECK(s.settings_at(t).second == s.quad().beta_prime);
      CHECK(s.settings_at(t + 0.75).second == s.quad().beta_prime);
    }
  }

  SECTION("piecewise constant with exactly three interior breakpoints") {
    const int n = 4096;
    int transitions = 0;
    SettingsPair prev = s.pair_at(0.0);
    for (int i = 1; i <= n; ++i) {
      const SettingsPair cur = s.pair_at(static_cast<double>(i) / n);
      if (cur != prev) ++transitions;
      prev = cur;
    }
    CHECK(transitions == 3);
  }

  SECTION("quarters tile the run") {
    CHECK(s.quarter_duration() == Catch::Approx(0.25));
    double end_prev = 0.0;
    for (int q = 0; q < 4; ++q) {
      const auto [lo, hi] = s.quarter_bounds(q);
      CHECK(lo == Catch::Approx(end_prev));
      CHECK(hi - lo == Catch::Approx(0.25));
      end_prev = hi;
    }
    CHECK(end_prev == Catch::Approx(1.0));
  }
}

TEST_CASE("schedule construction errors") {
  const SettingsQuad q = SettingsQuad::standard();
  CHECK_THROWS_AS(build_schedule(0.0, q), std::invalid_argument);
  CHECK_THROWS_AS(build_schedule(-1.0, q), std::invalid_argument);
  // every settings pair must be measured exactly once
  CHECK_THROWS_AS(build_schedule(1.0, q,
                                 {SettingsPair::ab, SettingsPair::ab,
                                  SettingsPair::a_prime_b, SettingsPair::a_prime_b_prime}),
                  std::invalid_argument);
}

TEST_CASE("general quarter map") {
  const SettingsQuad q = SettingsQuad::standard();
  const Schedule s = build_schedule(2.0, q,
                                    {SettingsPair::ab, SettingsPair::ab_prime,
                                     SettingsPair::a_prime_b_prime, SettingsPair::a_prime_b});
  CHECK(s.pair_at(0.1) == SettingsPair::ab);
  CHECK(s.pair_at(0.6) == SettingsPair::ab_prime);
  CHECK(s.pair_at(1.1) == SettingsPair::a_prime_b_prime);
  CHECK(s.pair_at(1.9) == SettingsPair::a_prime_b);
  CHECK(s.quarter_of(SettingsPair::a_prime_b) == 3);
}

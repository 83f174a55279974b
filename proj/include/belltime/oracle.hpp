#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "belltime/inequalities.hpp"
#include "belltime/rng.hpp"
#include "belltime/time_averages.hpp"

namespace belltime {

// Brute-force verification layer, independent of the evaluators it checks:
// the algebraic identity behind the probability-form bound, exhaustive
// enumeration of the deterministic local strategies, and a convexity check
// for static models.

// One deterministic local strategy: a fixed +-1 answer for each local
// setting.  These are the extreme points over which any static
// hidden-variable mixture averages.
struct DeterministicStrategy {
  std::array<int, 2> a_out;  // outcomes for {alpha, alpha'}
  std::array<int, 2> b_out;  // outcomes for {beta, beta'}
};

inline std::array<DeterministicStrategy, 16> all_deterministic_strategies() {
  std::array<DeterministicStrategy, 16> out{};
  int k = 0;
  for (int a0 : {+1, -1})
    for (int a1 : {+1, -1})
      for (int b0 : {+1, -1})
        for (int b1 : {+1, -1}) out[k++] = {{a0, a1}, {b0, b1}};
  return out;
}

inline double strategy_expectation(const DeterministicStrategy& s, SettingsPair p) {
  return static_cast<double>(s.a_out[a_index(p)] * s.b_out[b_index(p)]);
}

inline double strategy_chsh_abs(const DeterministicStrategy& s) {
  std::array<double, 4> e{};
  for (SettingsPair p : all_settings_pairs) e[pair_index(p)] = strategy_expectation(s, p);
  return chsh_s_value(e);
}

inline double strategy_chsh_signed(const DeterministicStrategy& s) {
  return strategy_expectation(s, SettingsPair::ab) -
         strategy_expectation(s, SettingsPair::ab_prime) +
         strategy_expectation(s, SettingsPair::a_prime_b) +
         strategy_expectation(s, SettingsPair::a_prime_b_prime);
}

// Probability-form window value for one strategy under the detection
// convention (an outcome of +1 is a detection, so P_AB = 1 iff both answers
// are +1).  Deterministic singles are 0 or 1, never 1/2, so the bare pair sum
// carries no [0, 1] window; the window quantity is the singles-subtracted
// combination shifted by +1, which ranges over exactly {0, 1} at the extremes.
inline double strategy_ch_window(const DeterministicStrategy& s) {
  const auto detect = [](int outcome) { return outcome > 0 ? 1.0 : 0.0; };
  const auto pair_prob = [&](SettingsPair p) {
    return detect(s.a_out[a_index(p)]) * detect(s.b_out[b_index(p)]);
  };
  const double m = pair_prob(SettingsPair::ab) - pair_prob(SettingsPair::ab_prime) +
                   pair_prob(SettingsPair::a_prime_b) +
                   pair_prob(SettingsPair::a_prime_b_prime) - detect(s.b_out[0]) -
                   detect(s.a_out[1]);
  return m + 1.0;
}

struct StrategyExtremes {
  double max_chsh_abs = 0.0;
  double min_chsh_abs = 0.0;
  double max_chsh_signed = 0.0;
  double min_chsh_signed = 0.0;
  double max_ch = 0.0;
  double min_ch = 0.0;
};

// Extremes over all 16 strategies.  Independent of any angle choice: strategy
// payoffs depend only on the outcome assignments.
inline StrategyExtremes enumerate_strategies() {
  StrategyExtremes ex;
  bool first = true;
  for (const DeterministicStrategy& s : all_deterministic_strategies()) {
    const double sa = strategy_chsh_abs(s);
    const double ss = strategy_chsh_signed(s);
    const double ch = strategy_ch_window(s);
    if (first) {
      ex = {sa, sa, ss, ss, ch, ch};
      first = false;
    } else {
      ex.max_chsh_abs = std::max(ex.max_chsh_abs, sa);
      ex.min_chsh_abs = std::min(ex.min_chsh_abs, sa);
      ex.max_chsh_signed = std::max(ex.max_chsh_signed, ss);
      ex.min_chsh_signed = std::min(ex.min_chsh_signed, ss);
      ex.max_ch = std::max(ex.max_ch, ch);
      ex.min_ch = std::min(ex.min_ch, ch);
    }
  }
  return ex;
}

// xy - xy' + x'y + x'y' - Xy - Yx' with X = Y = 1, over x, x', y, y' in
// [0, 1]: algebraically confined to [-1, 0].
inline double probability_form_identity(double x, double xp, double y, double yp) {
  return x * y - x * yp + xp * y + xp * yp - y - xp;
}

struct IdentityCheckResult {
  double worst_excursion = 0.0;  // distance outside [-1, 0]
  double min_value = 0.0;
  double max_value = 0.0;
  bool corners_attain_bounds = false;  // -1 and 0 both hit at corner points
  std::uint64_t samples = 0;
};

// Checks the identity at all 2^4 corners (where the extremes of a multilinear
// form live) plus n_samples random interior points.
inline IdentityCheckResult verify_probability_form_identity(std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) {
    throw std::invalid_argument("verify_probability_form_identity: sample count must be positive");
  }
  IdentityCheckResult res;
  res.samples = n_samples;
  double lo = 1.0, hi = -1.0;
  double corner_lo = 1.0, corner_hi = -1.0;
  auto take = [&](double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    res.worst_excursion = std::max({res.worst_excursion, v - 0.0, -1.0 - v});
  };
  for (int mask = 0; mask < 16; ++mask) {
    const double v = probability_form_identity(mask & 1 ? 1.0 : 0.0, mask & 2 ? 1.0 : 0.0,
                                               mask & 4 ? 1.0 : 0.0, mask & 8 ? 1.0 : 0.0);
    corner_lo = std::min(corner_lo, v);
    corner_hi = std::max(corner_hi, v);
    take(v);
  }
  res.corners_attain_bounds = corner_lo == -1.0 && corner_hi == 0.0;
  Rng rng(seed);
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    take(probability_form_identity(rng.uniform01(), rng.uniform01(), rng.uniform01(),
                                   rng.uniform01()));
  }
  res.min_value = lo;
  res.max_value = hi;
  return res;
}

// For a static model, the full-interval averages are mixtures of
// deterministic-strategy behavior, so they must respect the enumerated
// extremes: M in [-1, 0], |S| <= 2, and (when the singles are unpolarized)
// the pair sum in [0, 1].  Returns the worst distance outside those bounds.
inline double mixture_consistency(const LocalModel& model, const Schedule& schedule,
                                  const QuadratureOptions& opt = {}) {
  if (model.time_dependent()) {
    throw std::invalid_argument(
        "mixture_consistency: applies to time-independent models only");
  }
  const TimeAverages ta = exact_time_averages(model, schedule, opt);
  const CorrelationData full = ta.full_interval();

  const double m = ch_m_value(full);
  double dev = std::max({m - 0.0, -1.0 - m, 0.0});

  const double s = chsh_s_value(full.expectations);
  dev = std::max(dev, s - 2.0);

  if (std::fabs(full.single_a_prime - 0.5) <= 1e-9 &&
      std::fabs(full.single_b - 0.5) <= 1e-9) {
    const double cs = ch_pair_sum(full);
    dev = std::max({dev, cs - 1.0, 0.0 - cs});
  }
  return dev;
}

}  // namespace belltime

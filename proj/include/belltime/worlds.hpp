#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "belltime/correlation_data.hpp"
#include "belltime/inequalities.hpp"

namespace belltime {

// The four valuation rules for counterfactual terms.  A: counterfactual and
// factual quantities are equal pointwise in time.  B: their time averages are
// equal.  C: counterfactual quantities are zero.  D: an analyzer set at one
// orientation behaves as the other with the squared-cosine overlap
// probability.
enum class WorldAssumption { pointwise_equal, average_equal, zero, qm_like };

inline constexpr std::array<WorldAssumption, 4> all_worlds = {
    WorldAssumption::pointwise_equal, WorldAssumption::average_equal,
    WorldAssumption::zero, WorldAssumption::qm_like};

inline char world_tag(WorldAssumption w) {
  switch (w) {
    case WorldAssumption::pointwise_equal: return 'A';
    case WorldAssumption::average_equal: return 'B';
    case WorldAssumption::zero: return 'C';
    case WorldAssumption::qm_like: return 'D';
  }
  return '?';
}

inline const char* to_string(WorldAssumption w) {
  switch (w) {
    case WorldAssumption::pointwise_equal: return "pointwise-equal";
    case WorldAssumption::average_equal: return "average-equal";
    case WorldAssumption::zero: return "zero";
    case WorldAssumption::qm_like: return "qm-like";
  }
  return "?";
}

inline WorldAssumption world_from_tag(char tag) {
  switch (tag) {
    case 'A': case 'a': return WorldAssumption::pointwise_equal;
    case 'B': case 'b': return WorldAssumption::average_equal;
    case 'C': case 'c': return WorldAssumption::zero;
    case 'D': case 'd': return WorldAssumption::qm_like;
  }
  throw std::invalid_argument("world tag must be one of A, B, C, D");
}

// Squared-cosine overlaps between the two orientations of each station; the
// per-station weights of the qm-like world.  Both equal 1/2 at the standard
// quad, where the counterfactual quarters carry weights 1/2, 1/2 and 1/4.
struct WorldWeights {
  double w_a = 0.0;
  double w_b = 0.0;
  double sum() const { return w_a + w_b + w_a * w_b; }
};

inline WorldWeights qm_like_weights(const SettingsQuad& quad) {
  const double ca = std::cos(quad.alpha.radians() - quad.alpha_prime.radians());
  const double cb = std::cos(quad.beta.radians() - quad.beta_prime.radians());
  return {ca * ca, cb * cb};
}

// Counterfactual expectation terms implied by each world.  Worlds A and B make
// the three unmeasured quarters repeat the factual value (factor 3); world C
// zeroes them; world D weights them by the per-station overlaps, giving the
// factor w_a + w_b + w_a w_b (5/4 at the standard quad).
inline std::array<double, 4> world_counterfactual_expectations(
    WorldAssumption world, const std::array<double, 4>& factual,
    const SettingsQuad& quad) {
  for (double e : factual) {
    if (!std::isfinite(e) || std::fabs(e) > 1.0 + 1e-9) {
      throw std::invalid_argument(
          "world_counterfactual_expectations: factual E must lie in [-1, 1]");
    }
  }
  std::array<double, 4> out{};
  switch (world) {
    case WorldAssumption::pointwise_equal:
    case WorldAssumption::average_equal:
      for (int i = 0; i < 4; ++i) out[i] = 3.0 * factual[i];
      break;
    case WorldAssumption::zero:
      break;
    case WorldAssumption::qm_like: {
      const double f = qm_like_weights(quad).sum();
      for (int i = 0; i < 4; ++i) out[i] = f * factual[i];
      break;
    }
  }
  return out;
}

// Per-world evaluation of the supplied data against the world's modified
// bounds.  chsh_bound is the effective bound on the plain expectation-form S.
struct WorldReport {
  WorldAssumption world = WorldAssumption::average_equal;
  double ch_value = 0.0;
  double ch_lower = 0.0;
  double ch_upper = 0.0;
  double ch_pair_sum = 0.0;  // the weighted pair combination entering ch_value
  bool ch_violated = false;
  double chsh_value = 0.0;
  double chsh_bound = 0.0;
  bool chsh_violated = false;
};

namespace detail {

// Weight with which the quarter factually measuring `factual_pair` enters the
// qm-like reconstruction of the full-run average for `target_pair`: 1 per
// matching station setting, the station overlap otherwise.
inline double qm_like_quarter_weight(SettingsPair target_pair, SettingsPair factual_pair,
                                     const WorldWeights& w) {
  const double fa = a_index(target_pair) == a_index(factual_pair) ? 1.0 : w.w_a;
  const double fb = b_index(target_pair) == b_index(factual_pair) ? 1.0 : w.w_b;
  return fa * fb;
}

inline double qm_like_bracket(SettingsPair target_pair, const CorrelationData& d,
                              const WorldWeights& w) {
  double sum = 0.0;
  for (SettingsPair factual_pair : all_settings_pairs) {
    sum += qm_like_quarter_weight(target_pair, factual_pair, w) * d.pair_prob(factual_pair);
  }
  return sum / 4.0;
}

}  // namespace detail

// The weighted pair combination of the qm-like world's probability-form
// value, assembled from the general per-station overlaps.
inline double qm_like_ch_pair_sum(const CorrelationData& d, const SettingsQuad& quad) {
  validate(d);
  const WorldWeights w = qm_like_weights(quad);
  return detail::qm_like_bracket(SettingsPair::ab, d, w) -
         detail::qm_like_bracket(SettingsPair::ab_prime, d, w) +
         detail::qm_like_bracket(SettingsPair::a_prime_b, d, w) +
         detail::qm_like_bracket(SettingsPair::a_prime_b_prime, d, w);
}

// Alternative reading of the qm-like world's singles weighting, with 1/4 in
// place of 1/2 on each station term.  Reported for comparison only; it is
// inconsistent with the quarter decomposition that produces the brackets.
inline double qm_like_ch_value_quarter_weighted_singles(const CorrelationData& d,
                                                        const SettingsQuad& quad) {
  const WorldWeights w = qm_like_weights(quad);
  return qm_like_ch_pair_sum(d, quad) - 0.25 * (1.0 + w.w_b) * d.single_b -
         0.25 * (1.0 + w.w_a) * d.single_a_prime;
}

// Probability-form (CH) part of the world report.
inline WorldReport world_ch_report(WorldAssumption world, const CorrelationData& d,
                                   const SettingsQuad& quad,
                                   double singles_tol = 1e-9) {
  validate(d);
  WorldReport r;
  r.world = world;
  switch (world) {
    case WorldAssumption::pointwise_equal:
    case WorldAssumption::average_equal: {
      // The usual probability-form bound is retrieved unchanged.
      const BoundVerdict v = ch_sum(d, singles_tol);
      r.ch_value = v.value;
      r.ch_pair_sum = v.value;
      r.ch_lower = v.lower;
      r.ch_upper = v.upper;
      r.ch_violated = !v.satisfied;
      break;
    }
    case WorldAssumption::zero: {
      // Counterfactual quarters contribute nothing: each pair term keeps 1/4
      // of its factual value, each single keeps 1/2.
      r.ch_pair_sum = 0.25 * ch_pair_sum(d);
      r.ch_value = r.ch_pair_sum - 0.5 * d.single_b - 0.5 * d.single_a_prime;
      r.ch_lower = -1.0;
      r.ch_upper = 0.0;
      r.ch_violated = r.ch_value < r.ch_lower || r.ch_value > r.ch_upper;
      break;
    }
    case WorldAssumption::qm_like: {
      const WorldWeights w = qm_like_weights(quad);
      r.ch_pair_sum = qm_like_ch_pair_sum(d, quad);
      r.ch_value = r.ch_pair_sum - 0.5 * (1.0 + w.w_b) * d.single_b -
                   0.5 * (1.0 + w.w_a) * d.single_a_prime;
      r.ch_lower = -1.0;
      r.ch_upper = 0.0;
      r.ch_violated = r.ch_value < r.ch_lower || r.ch_value > r.ch_upper;
      break;
    }
  }
  return r;
}

// Expectation-form (CHSH) part of the world report: the effective bound on
// the plain S value is 2 under worlds A/B, 8 under world C, and
// 8 / (1 + w_a + w_b + w_a w_b) under world D (32/9 at the standard quad).
inline WorldReport world_chsh_report(WorldAssumption world, const CorrelationData& d,
                                     const SettingsQuad& quad) {
  validate(d);
  WorldReport r;
  r.world = world;
  r.chsh_value = chsh_s(d).value;
  switch (world) {
    case WorldAssumption::pointwise_equal:
    case WorldAssumption::average_equal:
      r.chsh_bound = 2.0;
      break;
    case WorldAssumption::zero:
      r.chsh_bound = 8.0;
      break;
    case WorldAssumption::qm_like:
      r.chsh_bound = 8.0 / (1.0 + qm_like_weights(quad).sum());
      break;
  }
  r.chsh_violated = r.chsh_value > r.chsh_bound;
  return r;
}

// Both parts combined.
inline WorldReport world_report(WorldAssumption world, const CorrelationData& d,
                                const SettingsQuad& quad, double singles_tol = 1e-9) {
  WorldReport r = world_ch_report(world, d, quad, singles_tol);
  const WorldReport c = world_chsh_report(world, d, quad);
  r.chsh_value = c.chsh_value;
  r.chsh_bound = c.chsh_bound;
  r.chsh_violated = c.chsh_violated;
  return r;
}

}  // namespace belltime

#pragma once

#include <cmath>

#include "belltime/angles.hpp"
#include "belltime/correlation_data.hpp"

namespace belltime {

// Closed-form predictions for a maximally entangled polarization pair: the
// double-detection probability follows the Malus-law overlap of the two
// analyzer orientations and each single photon arrives unpolarized.  These
// serve as the reference "observed" data everywhere else.

struct JointOutcomeProbs {
  double pp, pm, mp, mm;
};

inline JointOutcomeProbs qm_joint_outcome_probs(Angle a, Angle b) {
  const double d = a.radians() - b.radians();
  const double c = std::cos(d);
  const double s = std::sin(d);
  const double same = 0.5 * c * c;
  const double diff = 0.5 * s * s;
  return {same, diff, diff, same};
}

// P_AB(a, b) = 1/2 cos^2(a - b), in [0, 1/2].
inline double qm_pair_probability(Angle a, Angle b) {
  return qm_joint_outcome_probs(a, b).pp;
}

// Every single is 1/2 regardless of orientation.
inline double qm_singles_probability(Angle) { return 0.5; }

// E(a, b) = cos(2(a - b)); equals the +-1-weighted sum of the joint outcomes.
inline double qm_expectation(Angle a, Angle b) {
  return std::cos(2.0 * (a.radians() - b.radians()));
}

inline CorrelationData qm_correlation_data(const SettingsQuad& quad) {
  CorrelationData d;
  for (SettingsPair p : all_settings_pairs) {
    const Angle a = quad.a_setting(a_index(p));
    const Angle b = quad.b_setting(b_index(p));
    d.pair_probs[pair_index(p)] = qm_pair_probability(a, b);
    d.expectations[pair_index(p)] = qm_expectation(a, b);
  }
  d.single_a_prime = qm_singles_probability(quad.alpha_prime);
  d.single_b = qm_singles_probability(quad.beta);
  return d;
}

}  // namespace belltime

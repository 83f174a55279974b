#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "belltime/correlation_data.hpp"

namespace belltime {

// A value against a closed interval of classically allowed results.
struct BoundVerdict {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool satisfied = false;
  double margin = 0.0;  // signed distance to the nearest bound; negative outside

  static BoundVerdict make(double value, double lower, double upper) {
    BoundVerdict v;
    v.value = value;
    v.lower = lower;
    v.upper = upper;
    v.margin = std::min(value - lower, upper - value);
    v.satisfied = v.margin >= 0.0;
    return v;
  }
};

// Which term pairing the expectation-form evaluator uses.  `standard` is the
// combination |E(a,b) - E(a,b')| + |E(a'b) + E(a'b')|; `as_printed` preserves
// an alternative pairing, |E(a,b) - E(a'b')| + |E(a'b') + E(a'b)|, kept only
// for comparison.
enum class ChshPattern { standard, as_printed };

// M = P_AB(a,b) - P_AB(a,b') + P_AB(a',b) + P_AB(a',b') - P_B(b) - P_A(a').
// Classically bounded in [-1, 0] without any condition on the singles.
inline double ch_m_value(const CorrelationData& d) {
  validate(d);
  return d.pair_prob(SettingsPair::ab) - d.pair_prob(SettingsPair::ab_prime) +
         d.pair_prob(SettingsPair::a_prime_b) +
         d.pair_prob(SettingsPair::a_prime_b_prime) - d.single_b - d.single_a_prime;
}

inline double ch_pair_sum(const CorrelationData& d) {
  validate(d);
  return d.pair_prob(SettingsPair::ab) - d.pair_prob(SettingsPair::ab_prime) +
         d.pair_prob(SettingsPair::a_prime_b) +
         d.pair_prob(SettingsPair::a_prime_b_prime);
}

// Probability-form bound: 0 <= pair sum <= 1.  Valid only when the singles
// are unpolarized, so inputs with singles away from 1/2 (beyond singles_tol)
// are rejected.  Use a 5-sigma tolerance for Monte Carlo estimates.
inline BoundVerdict ch_sum(const CorrelationData& d, double singles_tol = 1e-9) {
  validate(d);
  if (std::fabs(d.single_a_prime - 0.5) > singles_tol ||
      std::fabs(d.single_b - 0.5) > singles_tol) {
    throw std::invalid_argument(
        "ch_sum: singles must equal 1/2 (the probability-form bound is derived "
        "under unpolarized singles); got P_A(a'), P_B(b) away from 1/2");
  }
  return BoundVerdict::make(ch_pair_sum(d), 0.0, 1.0);
}

inline double chsh_s_value(const std::array<double, 4>& e,
                           ChshPattern pattern = ChshPattern::standard) {
  const double e_ab = e[pair_index(SettingsPair::ab)];
  const double e_ab_prime = e[pair_index(SettingsPair::ab_prime)];
  const double e_ap_b = e[pair_index(SettingsPair::a_prime_b)];
  const double e_ap_bp = e[pair_index(SettingsPair::a_prime_b_prime)];
  if (pattern == ChshPattern::as_printed) {
    return std::fabs(e_ab - e_ap_bp) + std::fabs(e_ap_bp + e_ap_b);
  }
  return std::fabs(e_ab - e_ab_prime) + std::fabs(e_ap_b + e_ap_bp);
}

// Expectation-form bound: S <= 2.
inline BoundVerdict chsh_s(const std::array<double, 4>& expectations,
                           ChshPattern pattern = ChshPattern::standard) {
  for (double e : expectations) {
    if (!std::isfinite(e) || std::fabs(e) > 1.0 + 1e-9) {
      throw std::invalid_argument("chsh_s: expectations must lie in [-1, 1]");
    }
  }
  return BoundVerdict::make(chsh_s_value(expectations, pattern), 0.0, 2.0);
}

inline BoundVerdict chsh_s(const CorrelationData& d,
                           ChshPattern pattern = ChshPattern::standard) {
  validate(d);
  return chsh_s(d.expectations, pattern);
}

// The expectation-form inequality that follows from local realism alone, with
// the unmeasured-time contributions kept as explicit counterfactual terms:
//   |Ecf(a,b) + E(a,b) - E(a,b') - Ecf(a,b')|
//     + |E(a'b') + Ecf(a'b') + E(a'b) + Ecf(a'b)|  <=  8.
// Each counterfactual term aggregates three unmeasured quarters, hence the
// [-3, 3] domain.
inline BoundVerdict lr_only_chsh(const std::array<double, 4>& factual,
                                 const std::array<double, 4>& counterfactual) {
  for (double e : factual) {
    if (!std::isfinite(e) || std::fabs(e) > 1.0 + 1e-9) {
      throw std::invalid_argument("lr_only_chsh: factual expectations must lie in [-1, 1]");
    }
  }
  for (double e : counterfactual) {
    if (!std::isfinite(e) || std::fabs(e) > 3.0 + 1e-9) {
      throw std::invalid_argument(
          "lr_only_chsh: counterfactual expectations must lie in [-3, 3]");
    }
  }
  const auto f = [&](SettingsPair p) { return factual[pair_index(p)]; };
  const auto c = [&](SettingsPair p) { return counterfactual[pair_index(p)]; };
  const double value =
      std::fabs(c(SettingsPair::ab) + f(SettingsPair::ab) - f(SettingsPair::ab_prime) -
                c(SettingsPair::ab_prime)) +
      std::fabs(f(SettingsPair::a_prime_b_prime) + c(SettingsPair::a_prime_b_prime) +
                f(SettingsPair::a_prime_b) + c(SettingsPair::a_prime_b));
  return BoundVerdict::make(value, 0.0, 8.0);
}

}  // namespace belltime

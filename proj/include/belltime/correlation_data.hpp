#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "belltime/schedule.hpp"

namespace belltime {

// A requested quantity has no supporting measure: the defining ratio is 0/0.
class indeterminate_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A model broke its contract: a response outside [0,1] or a density that does
// not normalize.
class model_contract_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// One emitted photon pair: emission time, hidden value, the settings in force
// at that time and both detection outcomes (+1 detected, -1 not detected).
struct PairEvent {
  double t = 0.0;
  double lambda = 0.0;
  Angle a_setting;
  Angle b_setting;
  int a_outcome = 0;
  int b_outcome = 0;
};

// Coincidence counts for one settings pair, keyed by the two outcomes.
struct CoincidenceCounts {
  std::uint64_t pp = 0;
  std::uint64_t pm = 0;
  std::uint64_t mp = 0;
  std::uint64_t mm = 0;

  std::uint64_t total() const { return pp + pm + mp + mm; }
};

// Indexed by SettingsPair.
using PerPairCounts = std::array<CoincidenceCounts, 4>;

// Measured or predicted quantities for one settings quad: the four pair
// probabilities, the two singles entering the probability-form bound, and the
// four observable expectations.
struct CorrelationData {
  std::array<double, 4> pair_probs{};    // P_AB, indexed by SettingsPair
  double single_a_prime = 0.0;           // P_A(alpha')
  double single_b = 0.0;                 // P_B(beta)
  std::array<double, 4> expectations{};  // E, indexed by SettingsPair

  double pair_prob(SettingsPair p) const { return pair_probs[pair_index(p)]; }
  double expectation(SettingsPair p) const { return expectations[pair_index(p)]; }
};

// Rejects NaN/inf and out-of-range inputs before they reach an evaluator.
// `slack` absorbs quadrature / estimation roundoff at the range edges.
inline void validate(const CorrelationData& d, double slack = 1e-9) {
  auto check_prob = [&](double v, const char* what) {
    if (!std::isfinite(v) || v < -slack || v > 1.0 + slack) {
      throw indeterminate_error(std::string("CorrelationData: ") + what +
                                " is not a probability");
    }
  };
  for (SettingsPair p : all_settings_pairs) {
    check_prob(d.pair_prob(p), to_string(p));
  }
  check_prob(d.single_a_prime, "P_A(a')");
  check_prob(d.single_b, "P_B(b)");
  for (SettingsPair p : all_settings_pairs) {
    const double e = d.expectation(p);
    if (!std::isfinite(e) || std::fabs(e) > 1.0 + slack) {
      throw indeterminate_error(std::string("CorrelationData: E(") + to_string(p) +
                                ") is not an expectation value");
    }
  }
}

}  // namespace belltime

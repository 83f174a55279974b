#pragma once

#include <array>
#include <stdexcept>
#include <utility>

#include "belltime/angles.hpp"

namespace belltime {

// One of the four settings pairs a two-station run can measure.
enum class SettingsPair : int { ab = 0, ab_prime = 1, a_prime_b = 2, a_prime_b_prime = 3 };

inline constexpr std::array<SettingsPair, 4> all_settings_pairs = {
    SettingsPair::ab, SettingsPair::ab_prime, SettingsPair::a_prime_b,
    SettingsPair::a_prime_b_prime};

constexpr int pair_index(SettingsPair p) { return static_cast<int>(p); }

// Which A setting (0 = alpha, 1 = alpha') and B setting (0 = beta, 1 = beta')
// a pair combines.
constexpr int a_index(SettingsPair p) {
  return (p == SettingsPair::ab || p == SettingsPair::ab_prime) ? 0 : 1;
}
constexpr int b_index(SettingsPair p) {
  return (p == SettingsPair::ab || p == SettingsPair::a_prime_b) ? 0 : 1;
}

constexpr SettingsPair settings_pair_from(int ai, int bi) {
  return static_cast<SettingsPair>(2 * ai + bi);
}

inline const char* to_string(SettingsPair p) {
  switch (p) {
    case SettingsPair::ab: return "ab";
    case SettingsPair::ab_prime: return "ab'";
    case SettingsPair::a_prime_b: return "a'b";
    case SettingsPair::a_prime_b_prime: return "a'b'";
  }
  return "?";
}

// Partition of the measuring time [0, T] into four equal quarters, each with a
// fixed settings pair.  The default layout keeps A constant on each half of
// the run and B constant on the middle half: quarters carry (a,b'), (a,b),
// (a',b), (a',b') in that order.  Boundary instants belong to the later
// quarter so the quarters tile [0, T] exactly.
class Schedule {
public:
  double total_time() const { return total_time_; }
  double quarter_duration() const { return total_time_ / 4.0; }
  const SettingsQuad& quad() const { return quad_; }
  const std::array<SettingsPair, 4>& quarter_pairs() const { return quarter_pairs_; }

  int quarter_at(double t) const {
    if (!(t >= 0.0 && t <= total_time_)) {
      throw std::out_of_range("Schedule: time outside [0, T]");
    }
    const int q = static_cast<int>(t / quarter_duration());
    return q > 3 ? 3 : q;
  }

  SettingsPair pair_at(double t) const { return quarter_pairs_[quarter_at(t)]; }

  std::pair<Angle, Angle> settings_at(double t) const {
    const SettingsPair p = pair_at(t);
    return {quad_.a_setting(a_index(p)), quad_.b_setting(b_index(p))};
  }

  int quarter_of(SettingsPair p) const {
    for (int q = 0; q < 4; ++q) {
      if (quarter_pairs_[q] == p) return q;
    }
    throw std::logic_error("Schedule: pair not scheduled");  // unreachable for valid schedules
  }

  std::pair<double, double> quarter_bounds(int q) const {
    if (q < 0 || q > 3) throw std::out_of_range("Schedule: quarter index");
    const double d = quarter_duration();
    return {q * d, (q + 1) * d};
  }

private:
  friend Schedule build_schedule(double, const SettingsQuad&,
                                 const std::array<SettingsPair, 4>&);

  Schedule(double total_time, const SettingsQuad& quad,
           const std::array<SettingsPair, 4>& quarter_pairs)
      : total_time_(total_time), quad_(quad), quarter_pairs_(quarter_pairs) {}

  double total_time_;
  SettingsQuad quad_;
  std::array<SettingsPair, 4> quarter_pairs_;
};

// General constructor: any assignment that measures each settings pair in
// exactly one quarter.
inline Schedule build_schedule(double total_time, const SettingsQuad& quad,
                               const std::array<SettingsPair, 4>& quarter_pairs) {
  if (!(total_time > 0.0)) {
    throw std::invalid_argument("build_schedule: total time must be positive");
  }
  std::array<bool, 4> seen{};
  for (SettingsPair p : quarter_pairs) {
    if (seen[pair_index(p)]) {
      throw std::invalid_argument("build_schedule: each settings pair must appear exactly once");
    }
    seen[pair_index(p)] = true;
  }
  return Schedule(total_time, quad, quarter_pairs);
}

// Default layout: (a,b'), (a,b), (a',b), (a',b').
inline Schedule build_schedule(double total_time, const SettingsQuad& quad) {
  return build_schedule(total_time, quad,
                        {SettingsPair::ab_prime, SettingsPair::ab,
                         SettingsPair::a_prime_b, SettingsPair::a_prime_b_prime});
}

}  // namespace belltime

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace belltime {

// Analyzer orientation in radians, canonicalized to [0, pi).  Polarization
// analyzers are pi-periodic, so orientations differing by a multiple of pi
// denote the same physical setting.
class Angle {
public:
  constexpr Angle() = default;
  explicit Angle(double radians) : value_(canonicalize(radians)) {}

  double radians() const { return value_; }

  static double canonicalize(double radians) {
    if (!std::isfinite(radians)) {
      throw std::invalid_argument("Angle: orientation must be finite");
    }
    double v = std::fmod(radians, std::numbers::pi);
    if (v < 0.0) v += std::numbers::pi;
    if (v >= std::numbers::pi) v = 0.0;  // the wrap above can round onto pi
    return v;
  }

  friend bool operator==(const Angle&, const Angle&) = default;

private:
  double value_ = 0.0;
};

// Smallest separation between two orientations on the pi-periodic circle.
inline double angular_separation(Angle a, Angle b) {
  const double d = std::fabs(a.radians() - b.radians());
  return std::min(d, std::numbers::pi - d);
}

// The four analyzer orientations shared by every computation: alpha and
// alpha' at station A, beta and beta' at station B.
struct SettingsQuad {
  Angle alpha;
  Angle alpha_prime;
  Angle beta;
  Angle beta_prime;

  SettingsQuad(Angle a, Angle ap, Angle b, Angle bp)
      : alpha(a), alpha_prime(ap), beta(b), beta_prime(bp) {
    if (alpha == alpha_prime) {
      throw std::invalid_argument("SettingsQuad: alpha and alpha' must differ");
    }
    if (beta == beta_prime) {
      throw std::invalid_argument("SettingsQuad: beta and beta' must differ");
    }
  }

  // The common bench choice: {0, pi/8, pi/4, 3pi/8} for {alpha, beta, alpha', beta'}.
  static SettingsQuad standard() {
    using std::numbers::pi;
    return SettingsQuad(Angle(0.0), Angle(pi / 4.0), Angle(pi / 8.0),
                        Angle(3.0 * pi / 8.0));
  }

  Angle a_setting(int index) const { return index == 0 ? alpha : alpha_prime; }
  Angle b_setting(int index) const { return index == 0 ? beta : beta_prime; }
};

}  // namespace belltime

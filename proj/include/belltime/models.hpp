#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "belltime/local_model.hpp"
#include "belltime/schedule.hpp"

namespace belltime {

// Static polarization model: lambda is a shared polarization angle, uniform
// on [0, pi), and each station transmits with the Malus-law overlap between
// its analyzer and lambda.  Closed forms, handy as test oracles:
//   P_A = 1/2,  P_AB(a,b) = 1/4 + cos(2(a-b))/8,  E(a,b) = cos(2(a-b))/2.
// Time-independent, so all its factual and counterfactual time averages
// coincide.
class MalusModel final : public LocalModel {
public:
  std::string name() const override { return "malus"; }

  LambdaSupport lambda_support() const override {
    return {0.0, std::numbers::pi, false};
  }

  double sample_lambda(Rng& rng, double) const override {
    return rng.uniform(0.0, std::numbers::pi);
  }

  double lambda_density(double, double) const override {
    return 1.0 / std::numbers::pi;
  }

  double response_a(Angle setting, double lambda, double) const override {
    const double c = std::cos(setting.radians() - lambda);
    return c * c;
  }

  double response_b(Angle setting, double lambda, double) const override {
    return response_a(setting, lambda, 0.0);
  }

  bool time_dependent() const override { return false; }
};

// Time-driven model: the hidden variable is the emission time and both
// responses breathe sinusoidally around 1/2 with an orientation-dependent
// depth:
//   response(s, t) = 1/2 (1 + depth cos(2s) sin(2 pi (t - phase) / period)).
// With the period locked to half the run, quarter averages of the pair
// probabilities differ from their counterfactual counterparts.
class ClockModel final : public LocalModel {
public:
  explicit ClockModel(double depth = 1.0, double period = 0.5, double phase = 0.0)
      : depth_(depth), period_(period), phase_(phase) {
    if (!(depth >= 0.0 && depth <= 1.0)) {
      throw std::invalid_argument("ClockModel: depth must be in [0, 1]");
    }
    if (!(period > 0.0)) {
      throw std::invalid_argument("ClockModel: period must be positive");
    }
  }

  std::string name() const override { return "clock"; }

  LambdaSupport lambda_support() const override { return {0.0, 1.0, true}; }

  double sample_lambda(Rng&, double t) const override { return t; }

  double lambda_density(double, double) const override { return 1.0; }

  double response_a(Angle setting, double, double t) const override {
    return 0.5 * (1.0 + depth_ * std::cos(2.0 * setting.radians()) * wave(t));
  }

  double response_b(Angle setting, double, double t) const override {
    return response_a(setting, 0.0, t);
  }

  bool time_dependent() const override { return true; }

  double wave(double t) const {
    return std::sin(2.0 * std::numbers::pi * (t - phase_) / period_);
  }

  double depth() const { return depth_; }
  double period() const { return period_; }

private:
  double depth_;
  double period_;
  double phase_;
};

// Schedule-tuned model that reproduces the entangled-pair statistics within
// each quarter.  lambda is uniform on [0, 2): its integer part is A's
// detection coin, and B's response keys on the A orientation the baked
// schedule has in force at t:
//   response_a = [lambda < 1]
//   response_b = cos^2(a_now - b) if lambda < 1, else sin^2(a_now - b).
// Per-quarter data from this model violates the classical bounds while the
// full-interval averages cannot; its factual and counterfactual quarter
// averages differ widely.
class MimicModel final : public LocalModel {
public:
  explicit MimicModel(const Schedule& schedule) : schedule_(schedule) {}

  std::string name() const override { return "mimic"; }

  LambdaSupport lambda_support() const override { return {0.0, 2.0, false}; }

  double sample_lambda(Rng& rng, double) const override {
    return rng.uniform(0.0, 2.0);
  }

  double lambda_density(double, double) const override { return 0.5; }

  double response_a(Angle, double lambda, double) const override {
    return lambda < 1.0 ? 1.0 : 0.0;
  }

  double response_b(Angle setting, double lambda, double t) const override {
    const auto settings = schedule_.settings_at(t);
    const double c = std::cos(settings.first.radians() - setting.radians());
    const double overlap = c * c;
    return lambda < 1.0 ? overlap : 1.0 - overlap;
  }

  bool time_dependent() const override { return true; }

private:
  Schedule schedule_;
};

// Both responses equal to a fixed level, lambda ignored.
class ConstantModel final : public LocalModel {
public:
  explicit ConstantModel(double level = 0.5) : level_(level) {
    if (!(level >= 0.0 && level <= 1.0)) {
      throw std::invalid_argument("ConstantModel: level must be in [0, 1]");
    }
  }

  std::string name() const override { return "constant"; }

  LambdaSupport lambda_support() const override { return {0.0, 1.0, false}; }

  double sample_lambda(Rng& rng, double) const override { return rng.uniform01(); }

  double lambda_density(double, double) const override { return 1.0; }

  double response_a(Angle, double, double) const override { return level_; }
  double response_b(Angle, double, double) const override { return level_; }

  bool time_dependent() const override { return false; }

  double level() const { return level_; }

private:
  double level_;
};

struct ModelParams {
  double depth = 1.0;   // clock: modulation depth in [0, 1]
  double period = 0.0;  // clock: wave period; 0 locks it to half the run
  double phase = 0.0;   // clock: wave phase offset
  double level = 0.5;   // constant: response level
};

inline std::vector<std::string> model_names() {
  return {"malus", "clock", "mimic", "constant"};
}

inline std::unique_ptr<LocalModel> make_model(const std::string& name,
                                              const Schedule& schedule,
                                              const ModelParams& params = {}) {
  if (name == "malus") return std::make_unique<MalusModel>();
  if (name == "clock") {
    const double period =
        params.period > 0.0 ? params.period : schedule.total_time() / 2.0;
    return std::make_unique<ClockModel>(params.depth, period, params.phase);
  }
  if (name == "mimic") return std::make_unique<MimicModel>(schedule);
  if (name == "constant") return std::make_unique<ConstantModel>(params.level);
  throw std::invalid_argument("unknown model '" + name +
                              "'; available: malus, clock, mimic, constant");
}

}  // namespace belltime

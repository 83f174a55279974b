#pragma once

#include <string>

#include "belltime/angles.hpp"
#include "belltime/rng.hpp"

namespace belltime {

// Where the hidden variable lives: an interval carrying a density, or the
// degenerate case where lambda is the emission time itself (no extra
// integration dimension).
struct LambdaSupport {
  double lo = 0.0;
  double hi = 1.0;
  bool time_is_lambda = false;
};

// A local-realistic response model.
//
// Responses are detection probabilities in [0,1].  response_a may depend only
// on the local A setting, lambda and t, and likewise response_b on the local
// B setting — the factorization that encodes locality.  The lambda sampler and
// density never receive a setting, which encodes measurement independence.
// Both the density and the responses may depend on t: time may serve as (part
// of) the hidden variable.
class LocalModel {
public:
  virtual ~LocalModel() = default;

  virtual std::string name() const = 0;

  virtual LambdaSupport lambda_support() const = 0;

  virtual double sample_lambda(Rng& rng, double t) const = 0;

  // Density over [lo, hi); must integrate to 1 at every t.  Ignored when
  // time_is_lambda.
  virtual double lambda_density(double lambda, double t) const = 0;

  virtual double response_a(Angle setting, double lambda, double t) const = 0;
  virtual double response_b(Angle setting, double lambda, double t) const = 0;

  // Whether any response or the density actually depends on t.  Declared by
  // the model so checkers can report meaningfully.
  virtual bool time_dependent() const = 0;
};

}  // namespace belltime

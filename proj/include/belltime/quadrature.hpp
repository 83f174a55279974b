#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace belltime {

class quadrature_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int initial_subintervals = 16;  // the resolution; refinement starts here
  int max_refinements = 20;       // each refinement doubles the subinterval count
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |last step-halving disagreement|
  int refinements = 0;
  long long evaluations = 0;
};

// Composite midpoint rule with a step-halving convergence check: the
// subinterval count doubles until two successive composite sums agree to
// tolerance.  Throws quadrature_error when the refinement budget runs out.
template <class F>
QuadratureResult integrate_midpoint(F&& f, double lo, double hi,
                                    const QuadratureOptions& opt = {}) {
  if (opt.initial_subintervals <= 0) {
    throw std::invalid_argument("quadrature: resolution must be positive");
  }
  if (!(lo <= hi)) {
    throw std::invalid_argument("quadrature: bad interval");
  }
  QuadratureResult res;
  if (lo == hi) return res;

  const double length = hi - lo;
  auto composite = [&](long long m) {
    const double h = length / static_cast<double>(m);
    double sum = 0.0;
    for (long long i = 0; i < m; ++i) {
      sum += f(lo + (static_cast<double>(i) + 0.5) * h);
    }
    res.evaluations += m;
    return sum * h;
  };

  long long n = opt.initial_subintervals;
  double prev = composite(n);
  for (int r = 1; r <= opt.max_refinements; ++r) {
    n *= 2;
    const double cur = composite(n);
    res.refinements = r;
    res.error_estimate = std::fabs(cur - prev);
    if (res.error_estimate <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(cur))) {
      res.value = cur;
      return res;
    }
    prev = cur;
  }
  throw quadrature_error("midpoint quadrature did not converge on [" +
                         std::to_string(lo) + ", " + std::to_string(hi) +
                         "]; disagreement " + std::to_string(res.error_estimate));
}

}  // namespace belltime

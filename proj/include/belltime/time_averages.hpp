#pragma once

#include <array>
#include <cmath>
#include <string>

#include "belltime/correlation_data.hpp"
#include "belltime/local_model.hpp"
#include "belltime/quadrature.hpp"
#include "belltime/schedule.hpp"

namespace belltime {

namespace detail {

inline double checked_response_a(const LocalModel& m, Angle s, double lambda, double t) {
  const double r = m.response_a(s, lambda, t);
  if (!(r >= 0.0 && r <= 1.0)) {
    throw model_contract_error("model '" + m.name() + "': response_a outside [0, 1]");
  }
  return r;
}

inline double checked_response_b(const LocalModel& m, Angle s, double lambda, double t) {
  const double r = m.response_b(s, lambda, t);
  if (!(r >= 0.0 && r <= 1.0)) {
    throw model_contract_error("model '" + m.name() + "': response_b outside [0, 1]");
  }
  return r;
}

// Average of g(lambda) over the model's hidden-variable distribution at fixed
// t.  The inner tolerance is tightened so inner noise cannot stall an outer
// time integral refining toward opt.rel_tol.
template <class G>
double lambda_average(const LocalModel& m, double t, G&& g, const QuadratureOptions& opt) {
  const LambdaSupport sup = m.lambda_support();
  if (sup.time_is_lambda) return g(t);
  QuadratureOptions inner = opt;
  inner.rel_tol = opt.rel_tol / 16.0;
  inner.abs_tol = opt.abs_tol / 16.0;
  return integrate_midpoint(
             [&](double lam) { return m.lambda_density(lam, t) * g(lam); },
             sup.lo, sup.hi, inner)
      .value;
}

inline void check_density_normalization(const LocalModel& m, const Schedule& schedule,
                                        const QuadratureOptions& opt) {
  const LambdaSupport sup = m.lambda_support();
  if (sup.time_is_lambda) return;
  for (int q = 0; q < 4; ++q) {
    const auto [t0, t1] = schedule.quarter_bounds(q);
    const double t = 0.5 * (t0 + t1);
    const double mass =
        integrate_midpoint([&](double lam) { return m.lambda_density(lam, t); },
                           sup.lo, sup.hi, opt)
            .value;
    if (std::fabs(mass - 1.0) > 1e-6) {
      throw model_contract_error("model '" + m.name() +
                                 "': lambda density does not normalize to 1");
    }
  }
}

}  // namespace detail

// Averages of one station probability split by schedule half, under both
// normalizations that appear when a full-interval average is decomposed: the
// per-half normalization 1/(2 dT), and the 1/T weighting under which each
// half contributes half of its per-half average.
struct SingleDecomposition {
  double factual_half = 0.0;         // 1/(2 dT) over the half where the setting is in force
  double counterfactual_half = 0.0;  // same normalization over the complementary half
  double full_interval = 0.0;        // 1/T over [0, T]
  double factual_full_weighted = 0.0;         // the factual half's 1/T contribution
  double counterfactual_full_weighted = 0.0;  // the complementary half's 1/T contribution
};

// Deterministic time averages of every factual and counterfactual term a
// time-partitioned run can ask of a fully specified model: quarter-normalized
// pair probabilities and observable expectations for all four settings pairs
// in all four quarters (scheduled or not), plus the two singles entering the
// probability-form bound.  Counterfactual entries are computable here because
// the model's responses are defined at settings the schedule never measures.
struct TimeAverages {
  double total_time = 0.0;
  std::array<SettingsPair, 4> quarter_pairs{};

  // Quarter-normalized averages, indexed [pair][quarter].
  std::array<std::array<double, 4>, 4> pair_prob{};
  std::array<std::array<double, 4>, 4> pair_expect{};
  std::array<double, 4> single_a_prime{};  // per quarter
  std::array<double, 4> single_b{};

  int quarter_of(SettingsPair p) const {
    for (int q = 0; q < 4; ++q) {
      if (quarter_pairs[q] == p) return q;
    }
    throw std::logic_error("TimeAverages: pair not scheduled");
  }

  bool a_prime_active(int q) const { return a_index(quarter_pairs[q]) == 1; }
  bool b_active(int q) const { return b_index(quarter_pairs[q]) == 0; }

  double factual_pair_prob(SettingsPair p) const {
    return pair_prob[pair_index(p)][quarter_of(p)];
  }
  double factual_pair_expect(SettingsPair p) const {
    return pair_expect[pair_index(p)][quarter_of(p)];
  }

  // Mean of the same quantity over the three quarters where the pair was not
  // scheduled.
  double counterfactual_pair_prob(SettingsPair p) const {
    const int fq = quarter_of(p);
    double s = 0.0;
    for (int q = 0; q < 4; ++q) {
      if (q != fq) s += pair_prob[pair_index(p)][q];
    }
    return s / 3.0;
  }
  double counterfactual_pair_expect(SettingsPair p) const {
    const int fq = quarter_of(p);
    double s = 0.0;
    for (int q = 0; q < 4; ++q) {
      if (q != fq) s += pair_expect[pair_index(p)][q];
    }
    return s / 3.0;
  }

  // Sum (not mean) of the three unscheduled quarter-normalized expectation
  // averages; bounded by +-3.
  double counterfactual_expectation_sum(SettingsPair p) const {
    return 3.0 * counterfactual_pair_expect(p);
  }
  std::array<double, 4> counterfactual_expectation_sums() const {
    std::array<double, 4> out{};
    for (SettingsPair p : all_settings_pairs) {
      out[pair_index(p)] = counterfactual_expectation_sum(p);
    }
    return out;
  }

  SingleDecomposition single_a_prime_decomposition() const {
    return decompose(single_a_prime, [&](int q) { return a_prime_active(q); });
  }
  SingleDecomposition single_b_decomposition() const {
    return decompose(single_b, [&](int q) { return b_active(q); });
  }

  // What the scheduled run actually measures: each quantity averaged over the
  // quarters (halves, for singles) where its settings were in force.
  CorrelationData factual() const {
    CorrelationData d;
    for (SettingsPair p : all_settings_pairs) {
      d.pair_probs[pair_index(p)] = factual_pair_prob(p);
      d.expectations[pair_index(p)] = factual_pair_expect(p);
    }
    d.single_a_prime = single_a_prime_decomposition().factual_half;
    d.single_b = single_b_decomposition().factual_half;
    return d;
  }

  // Uniform 1/T averages over [0, T]; the regime where the classical bounds
  // are guaranteed for any local model.
  CorrelationData full_interval() const {
    CorrelationData d;
    for (SettingsPair p : all_settings_pairs) {
      double sp = 0.0, se = 0.0;
      for (int q = 0; q < 4; ++q) {
        sp += pair_prob[pair_index(p)][q];
        se += pair_expect[pair_index(p)][q];
      }
      d.pair_probs[pair_index(p)] = sp / 4.0;
      d.expectations[pair_index(p)] = se / 4.0;
    }
    d.single_a_prime = single_a_prime_decomposition().full_interval;
    d.single_b = single_b_decomposition().full_interval;
    return d;
  }

private:
  template <class ActivePred>
  SingleDecomposition decompose(const std::array<double, 4>& per_quarter,
                                ActivePred active) const {
    double fact = 0.0, cf = 0.0;
    for (int q = 0; q < 4; ++q) {
      (active(q) ? fact : cf) += per_quarter[q];
    }
    SingleDecomposition d;
    d.factual_half = fact / 2.0;
    d.counterfactual_half = cf / 2.0;
    d.full_interval = (fact + cf) / 4.0;
    d.factual_full_weighted = d.factual_half / 2.0;
    d.counterfactual_full_weighted = d.counterfactual_half / 2.0;
    return d;
  }
};

inline TimeAverages exact_time_averages(const LocalModel& model, const Schedule& schedule,
                                        const QuadratureOptions& opt = {}) {
  detail::check_density_normalization(model, schedule, opt);

  TimeAverages ta;
  ta.total_time = schedule.total_time();
  ta.quarter_pairs = schedule.quarter_pairs();
  const double dt = schedule.quarter_duration();
  const SettingsQuad& quad = schedule.quad();

  for (int q = 0; q < 4; ++q) {
    const auto [t0, t1] = schedule.quarter_bounds(q);

    for (SettingsPair p : all_settings_pairs) {
      const Angle a = quad.a_setting(a_index(p));
      const Angle b = quad.b_setting(b_index(p));

      ta.pair_prob[pair_index(p)][q] =
          integrate_midpoint(
              [&](double t) {
                return detail::lambda_average(
                    model, t,
                    [&](double lam) {
                      return detail::checked_response_a(model, a, lam, t) *
                             detail::checked_response_b(model, b, lam, t);
                    },
                    opt);
              },
              t0, t1, opt)
              .value /
          dt;

      ta.pair_expect[pair_index(p)][q] =
          integrate_midpoint(
              [&](double t) {
                return detail::lambda_average(
                    model, t,
                    [&](double lam) {
                      const double ra = detail::checked_response_a(model, a, lam, t);
                      const double rb = detail::checked_response_b(model, b, lam, t);
                      return (2.0 * ra - 1.0) * (2.0 * rb - 1.0);
                    },
                    opt);
              },
              t0, t1, opt)
              .value /
          dt;
    }

    ta.single_a_prime[q] =
        integrate_midpoint(
            [&](double t) {
              return detail::lambda_average(
                  model, t,
                  [&](double lam) {
                    return detail::checked_response_a(model, quad.alpha_prime, lam, t);
                  },
                  opt);
            },
            t0, t1, opt)
            .value /
        dt;

    ta.single_b[q] =
        integrate_midpoint(
            [&](double t) {
              return detail::lambda_average(
                  model, t,
                  [&](double lam) {
                    return detail::checked_response_b(model, quad.beta, lam, t);
                  },
                  opt);
            },
            t0, t1, opt)
            .value /
        dt;
  }
  return ta;
}

}  // namespace belltime

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "belltime/json_writer.hpp"
#include "belltime/time_averages.hpp"

namespace belltime {

enum class AdmissibilityVerdict { refuted_by_experiments, not_yet_refuted };

inline const char* to_string(AdmissibilityVerdict v) {
  return v == AdmissibilityVerdict::refuted_by_experiments ? "refuted-by-experiments"
                                                           : "not-yet-refuted";
}

struct AdmissibilityRow {
  std::string term;
  double factual = 0.0;         // average over the scheduled quarters / half
  double counterfactual = 0.0;  // average over the complementary quarters / half
  double gap = 0.0;             // |factual - counterfactual|
  double pointwise_spread = 0.0;  // max - min of the term over [0, T]
};

// Decision report for one fully specified model: a local-realistic theory
// survives the observed violations only if at least one factual time average
// differs from its counterfactual counterpart.  Equality holds pointwise
// (world A) or on average (world B); pointwise equality implies average
// equality, so breaking the average equalities is what keeps a model alive.
struct AdmissibilityReport {
  std::string model_name;
  double tolerance = 0.0;
  bool world_a_holds = false;
  bool world_b_holds = false;
  AdmissibilityVerdict verdict = AdmissibilityVerdict::not_yet_refuted;
  double max_gap = 0.0;
  double max_spread = 0.0;
  std::vector<AdmissibilityRow> rows;  // 4 pair + 2 singles + 4 expectation terms
};

// Evaluates the criterion for a model under a schedule.  The equalities under
// test are idealizations; this check declares averages equal when every gap
// is within `tolerance`.  Only models can be checked: counterfactual time
// averages are not measurable from experimental data alone.
inline AdmissibilityReport check_model(const LocalModel& model, const Schedule& schedule,
                                       double tolerance = 1e-6,
                                       const QuadratureOptions& opt = {},
                                       int spread_grid = 2048) {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("check_model: tolerance must be positive");
  }
  if (spread_grid < 4) {
    throw std::invalid_argument("check_model: spread grid too small");
  }

  const TimeAverages ta = exact_time_averages(model, schedule, opt);
  const SettingsQuad& quad = schedule.quad();
  AdmissibilityReport rep;
  rep.model_name = model.name();
  rep.tolerance = tolerance;

  // max - min of the lambda-averaged term over a uniform grid on [0, T]; the
  // world-A (pointwise equality) diagnostic.
  const double total = schedule.total_time();
  auto spread_of = [&](auto&& term) {
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < spread_grid; ++i) {
      const double t = (i + 0.5) * total / spread_grid;
      const double v = term(t);
      if (i == 0) {
        lo = hi = v;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    return hi - lo;
  };

  auto add_row = [&](std::string term, double factual, double counterfactual,
                     double spread) {
    AdmissibilityRow row;
    row.term = std::move(term);
    row.factual = factual;
    row.counterfactual = counterfactual;
    row.gap = std::fabs(factual - counterfactual);
    row.pointwise_spread = spread;
    rep.max_gap = std::max(rep.max_gap, row.gap);
    rep.max_spread = std::max(rep.max_spread, row.pointwise_spread);
    rep.rows.push_back(std::move(row));
  };

  for (SettingsPair p : all_settings_pairs) {
    const Angle a = quad.a_setting(a_index(p));
    const Angle b = quad.b_setting(b_index(p));
    add_row(std::string("P(") + to_string(p) + ")", ta.factual_pair_prob(p),
            ta.counterfactual_pair_prob(p), spread_of([&](double t) {
              return detail::lambda_average(
                  model, t,
                  [&](double lam) {
                    return detail::checked_response_a(model, a, lam, t) *
                           detail::checked_response_b(model, b, lam, t);
                  },
                  opt);
            }));
  }

  const SingleDecomposition sa = ta.single_a_prime_decomposition();
  add_row("P_A(a')", sa.factual_half, sa.counterfactual_half, spread_of([&](double t) {
            return detail::lambda_average(
                model, t,
                [&](double lam) {
                  return detail::checked_response_a(model, quad.alpha_prime, lam, t);
                },
                opt);
          }));

  const SingleDecomposition sb = ta.single_b_decomposition();
  add_row("P_B(b)", sb.factual_half, sb.counterfactual_half, spread_of([&](double t) {
            return detail::lambda_average(
                model, t,
                [&](double lam) {
                  return detail::checked_response_b(model, quad.beta, lam, t);
                },
                opt);
          }));

  for (SettingsPair p : all_settings_pairs) {
    const Angle a = quad.a_setting(a_index(p));
    const Angle b = quad.b_setting(b_index(p));
    add_row(std::string("E(") + to_string(p) + ")", ta.factual_pair_expect(p),
            ta.counterfactual_pair_expect(p), spread_of([&](double t) {
              return detail::lambda_average(
                  model, t,
                  [&](double lam) {
                    const double ra = detail::checked_response_a(model, a, lam, t);
                    const double rb = detail::checked_response_b(model, b, lam, t);
                    return (2.0 * ra - 1.0) * (2.0 * rb - 1.0);
                  },
                  opt);
            }));
  }

  rep.world_b_holds = rep.max_gap <= tolerance;
  // Pointwise equality within tolerance bounds every average gap by the same
  // tolerance, so world A cannot hold without world B.
  rep.world_a_holds = rep.max_spread <= tolerance && rep.world_b_holds;
  rep.verdict = rep.world_b_holds ? AdmissibilityVerdict::refuted_by_experiments
                                  : AdmissibilityVerdict::not_yet_refuted;
  return rep;
}

inline std::string to_json(const AdmissibilityReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.key("model");
  w.value(rep.model_name);
  w.key("tolerance");
  w.value(rep.tolerance);
  w.key("equality_semantics");
  w.value("averages are declared equal when |factual - counterfactual| <= tolerance; "
          "the underlying criterion is an exact equality");
  w.key("world_a_holds");
  w.value(rep.world_a_holds);
  w.key("world_b_holds");
  w.value(rep.world_b_holds);
  w.key("verdict");
  w.value(to_string(rep.verdict));
  w.key("max_gap");
  w.value(rep.max_gap);
  w.key("max_pointwise_spread");
  w.value(rep.max_spread);
  w.key("terms");
  w.begin_array();
  for (const AdmissibilityRow& row : rep.rows) {
    w.begin_object();
    w.key("term");
    w.value(row.term);
    w.key("factual");
    w.value(row.factual);
    w.key("counterfactual");
    w.value(row.counterfactual);
    w.key("gap");
    w.value(row.gap);
    w.key("pointwise_spread");
    w.value(row.pointwise_spread);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return std::move(w).str();
}

// Aligned text rendering of the per-term table.
inline std::string to_table(const AdmissibilityReport& rep) {
  std::string out;
  out += "model: " + rep.model_name + "\n";
  out += "tolerance: " + format_real(rep.tolerance) +
         "  (averages count as equal within this tolerance)\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%-10s %22s %22s %14s %14s\n", "term", "factual",
                "counterfactual", "gap", "spread");
  out += line;
  for (const AdmissibilityRow& row : rep.rows) {
    std::snprintf(line, sizeof(line), "%-10s %22.15g %22.15g %14.6g %14.6g\n",
                  row.term.c_str(), row.factual, row.counterfactual, row.gap,
                  row.pointwise_spread);
    out += line;
  }
  out += std::string("world A (pointwise equality): ") +
         (rep.world_a_holds ? "holds" : "broken") + "\n";
  out += std::string("world B (average equality):   ") +
         (rep.world_b_holds ? "holds" : "broken") + "\n";
  out += std::string("verdict: ") + to_string(rep.verdict) + "\n";
  return out;
}

}  // namespace belltime

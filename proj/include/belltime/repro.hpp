#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "belltime/admissibility.hpp"
#include "belltime/models.hpp"
#include "belltime/oracle.hpp"
#include "belltime/qm.hpp"
#include "belltime/simulate.hpp"
#include "belltime/worlds.hpp"

namespace belltime {

// Self-verification suite: every headline number the toolkit must reproduce,
// each with its tolerance pinned in code.  Run by the CLI `repro` command and
// by the acceptance test binary.

struct ReproCheck {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
};

namespace repro_detail {

class Checker {
public:
  explicit Checker(std::string id, std::string description)
      : id_(std::move(id)), description_(std::move(description)) {}

  void require(bool ok, const std::string& what) {
    if (!ok) {
      failed_ = true;
      detail_ << "[failed: " << what << "] ";
    }
  }

  void require_close(double actual, double expected, double tol, const std::string& what) {
    const double err = std::fabs(actual - expected);
    detail_ << what << "=" << format_real(actual) << " ";
    require(err <= tol, what + " off by " + format_real(err) + " (tol " +
                            format_real(tol) + ")");
  }

  void note(const std::string& text) { detail_ << text << " "; }

  ReproCheck finish() {
    ReproCheck c;
    c.id = id_;
    c.description = description_;
    c.passed = !failed_;
    c.detail = detail_.str();
    if (!c.detail.empty() && c.detail.back() == ' ') c.detail.pop_back();
    return c;
  }

private:
  std::string id_;
  std::string description_;
  bool failed_ = false;
  std::ostringstream detail_;
};

template <class Body>
ReproCheck run_check(std::string id, std::string description, Body&& body) {
  Checker ck(std::move(id), std::move(description));
  try {
    body(ck);
  } catch (const std::exception& e) {
    ck.require(false, std::string("exception: ") + e.what());
  }
  return ck.finish();
}

inline double binomial_sigma(double p, double n) {
  return std::sqrt(std::max(p * (1.0 - p), 1e-12) / n);
}

inline double expectation_sigma(double e, double n) {
  return std::sqrt(std::max(1.0 - e * e, 1e-12) / n);
}

}  // namespace repro_detail

inline std::vector<ReproCheck> run_repro_checks() {
  using repro_detail::run_check;
  using std::numbers::pi;
  using std::numbers::sqrt2;

  std::vector<ReproCheck> checks;
  const SettingsQuad quad = SettingsQuad::standard();
  const Schedule schedule = build_schedule(1.0, quad);
  const CorrelationData qm = qm_correlation_data(quad);

  checks.push_back(run_check(
      "qm-ch-sum", "probability-form sum at the standard quad equals (1+sqrt2)/2,"
                   " violating the classical window [0,1]",
      [&](auto& ck) {
        const BoundVerdict v = ch_sum(qm);
        ck.require_close(v.value, 0.5 * (1.0 + sqrt2), 1e-12, "ch_sum");
        ck.require(!v.satisfied, "the window [0,1] should be violated");
      }));

  checks.push_back(run_check(
      "qm-chsh", "expectation-form S at the standard quad equals 2*sqrt2,"
                 " violating the classical bound 2",
      [&](auto& ck) {
        const BoundVerdict v = chsh_s(qm);
        ck.require_close(v.value, 2.0 * sqrt2, 1e-12, "S");
        ck.require(!v.satisfied, "the bound 2 should be violated");
      }));

  checks.push_back(run_check(
      "classical-bound-oracle",
      "exhaustive strategy enumeration gives max S = 2 and window extremes {0,1};"
      " the four-variable identity stays inside [-1,0] over corners and 1e6 samples",
      [&](auto& ck) {
        const StrategyExtremes ex = enumerate_strategies();
        ck.require(ex.max_chsh_abs == 2.0, "max |S| over strategies must be exactly 2");
        ck.require(ex.max_chsh_signed == 2.0 && ex.min_chsh_signed == -2.0,
                   "signed S extremes must be exactly +-2");
        ck.require(ex.max_ch == 1.0 && ex.min_ch == 0.0,
                   "window extremes must be exactly {0, 1}");
        const IdentityCheckResult id = verify_probability_form_identity(1'000'000, 0x9d2c5680u);
        ck.require_close(id.worst_excursion, 0.0, 1e-12, "identity_excursion");
        ck.require(id.corners_attain_bounds, "corner points must attain -1 and 0");
      }));

  checks.push_back(run_check(
      "average-equal-world-reduction",
      "with counterfactual terms tripling the factual ones, the bound-8 form"
      " reduces exactly to 4x the plain S for 1000 random expectation quadruples",
      [&](auto& ck) {
        Rng rng(0x1234abcdu);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
          std::array<double, 4> e{};
          for (double& x : e) x = rng.uniform(-1.0, 1.0);
          std::array<double, 4> cf{};
          for (int k = 0; k < 4; ++k) cf[k] = 3.0 * e[k];
          const BoundVerdict lr = lr_only_chsh(e, cf);
          const BoundVerdict s = chsh_s(e);
          worst = std::max(worst, std::fabs(lr.value - 4.0 * s.value));
          if (lr.satisfied != (s.value <= 2.0)) {
            ck.require(false, "bound-8 verdict must coincide with the S <= 2 verdict");
            break;
          }
        }
        ck.require_close(worst, 0.0, 1e-12, "max|lr - 4*S|");
      }));

  checks.push_back(run_check(
      "zero-world", "zero-valued counterfactuals: probability-form value"
                    " 0.25*1.2071 - 0.5 inside [-1,0]; S bound widens to 8",
      [&](auto& ck) {
        const WorldReport r = world_report(WorldAssumption::zero, qm, quad);
        ck.require_close(r.ch_value, -0.1982, 1e-4, "ch_value");
        ck.require(r.ch_value >= -1.0 && r.ch_value <= 0.0, "value must sit inside [-1,0]");
        ck.require(!r.ch_violated, "no probability-form violation in this world");
        ck.require(r.chsh_bound == 8.0, "S bound must be 8");
        ck.require_close(r.chsh_value, 2.0 * sqrt2, 1e-12, "S");
        ck.require(!r.chsh_violated, "no expectation-form violation in this world");
        ck.note("(an alternative figure 0.318 for the shifted value is reported as an"
                " annotation by the CLI, never asserted)");
      }));

  checks.push_back(run_check(
      "qm-like-world", "overlap-weighted counterfactuals: weighted pair sum 0.458,"
                       " S bound 32/9, no violation",
      [&](auto& ck) {
        const WorldReport r = world_report(WorldAssumption::qm_like, qm, quad);
        ck.require_close(r.ch_pair_sum, 0.458, 5e-4, "weighted_pair_sum");
        ck.require_close(r.chsh_bound, 32.0 / 9.0, 1e-12, "chsh_bound");
        ck.require(!r.chsh_violated, "S = 2.828 must not violate 32/9 = 3.5556");
        ck.require(!r.ch_violated, "probability form must stay inside [-1,0]");
      }));

  checks.push_back(run_check(
      "monte-carlo-fidelity",
      "1e6-pair runs of the malus and clock models match deterministic quadrature"
      " within 5 binomial sigma; identical seeds are bit-identical for any worker count",
      [&](auto& ck) {
        for (const char* name : {"malus", "clock"}) {
          const auto model = make_model(name, schedule);
          const std::uint64_t n = 1'000'000;
          const RunRecord run = simulate_run(*model, schedule, n, 2024);
          const PerPairCounts counts = tally(run);
          const CorrelationData est = estimate_correlation_data(counts);
          const TimeAverages ta = exact_time_averages(*model, schedule);
          const CorrelationData exact = ta.factual();
          for (SettingsPair p : all_settings_pairs) {
            const auto n_pair = static_cast<double>(counts[pair_index(p)].total());
            const double sig_p =
                repro_detail::binomial_sigma(exact.pair_prob(p), n_pair);
            ck.require(std::fabs(est.pair_prob(p) - exact.pair_prob(p)) <= 5.0 * sig_p,
                       std::string(name) + " P(" + to_string(p) + ") off by more than 5 sigma");
            const double sig_e =
                repro_detail::expectation_sigma(ta.factual_pair_expect(p), n_pair);
            ck.require(
                std::fabs(est.expectation(p) - ta.factual_pair_expect(p)) <= 5.0 * sig_e,
                std::string(name) + " E(" + to_string(p) + ") off by more than 5 sigma");
          }
          const double n_half = static_cast<double>(n) / 2.0;
          ck.require(std::fabs(est.single_a_prime - exact.single_a_prime) <=
                         5.0 * repro_detail::binomial_sigma(exact.single_a_prime, n_half),
                     std::string(name) + " P_A(a') off by more than 5 sigma");
          ck.require(std::fabs(est.single_b - exact.single_b) <=
                         5.0 * repro_detail::binomial_sigma(exact.single_b, n_half),
                     std::string(name) + " P_B(b) off by more than 5 sigma");

          SimulateOptions four_workers;
          four_workers.workers = 4;
          const RunRecord run4 = simulate_run(*model, schedule, n, 2024, four_workers);
          bool identical = run.events.size() == run4.events.size();
          for (std::size_t i = 0; identical && i < run.events.size(); ++i) {
            const PairEvent& a = run.events[i];
            const PairEvent& b = run4.events[i];
            identical = a.t == b.t && a.lambda == b.lambda &&
                        a.a_outcome == b.a_outcome && a.b_outcome == b.b_outcome;
          }
          ck.require(identical,
                     std::string(name) + " run must be bit-identical across worker counts");
        }
        ck.note("both models within 5 sigma; worker counts 1 and 4 bit-identical");
      }));

  checks.push_back(run_check(
      "static-lhv-soundness",
      "full-interval averages of the static sample models satisfy the classical"
      " bounds: pair sum in [0,1] and S <= 2, within 1e-9",
      [&](auto& ck) {
        const MalusModel malus;
        ck.require_close(mixture_consistency(malus, schedule), 0.0, 1e-9, "malus_deviation");
        const ConstantModel half(0.5);
        ck.require_close(mixture_consistency(half, schedule), 0.0, 1e-9,
                         "constant_half_deviation");
        const ConstantModel full_detect(1.0);
        ck.require_close(mixture_consistency(full_detect, schedule), 0.0, 1e-9,
                         "constant_one_deviation");
      }));

  checks.push_back(run_check(
      "admissibility-verdicts",
      "static malus model is refuted (all gaps ~ 0); the schedule-locked clock model"
      " is not, with the pair gap matching its closed-form integrals",
      [&](auto& ck) {
        const AdmissibilityReport malus = check_model(MalusModel(), schedule);
        ck.require(malus.verdict == AdmissibilityVerdict::refuted_by_experiments,
                   "malus verdict must be refuted-by-experiments");
        ck.require_close(malus.max_gap, 0.0, 1e-9, "malus_max_gap");
        ck.require(!malus.world_a_holds || malus.world_b_holds,
                   "world A must imply world B (malus)");
        ck.require(malus.world_a_holds, "time-independent responses hold world A");

        const ClockModel clock(1.0, schedule.total_time() / 2.0);
        const AdmissibilityReport clk = check_model(clock, schedule);
        ck.require(clk.verdict == AdmissibilityVerdict::not_yet_refuted,
                   "clock verdict must be not-yet-refuted");
        ck.require(!clk.world_a_holds || clk.world_b_holds,
                   "world A must imply world B (clock)");
        // Closed form: quarter averages of sin(4 pi t) are (+,-,+,-) 2/pi, so for
        // the (a,b) pair with depths k1 = cos(0), k2 = cos(pi/4) the factual
        // quarter average is (1 + (k1+k2) s + k1 k2 / 2)/4 at s = -2/pi and the
        // counterfactual mean sits at s = +2/(3 pi); the gap is
        // (k1+k2)(2/pi + 2/(3 pi))/4.
        const double k1 = 1.0;
        const double k2 = std::cos(pi / 4.0);
        const double expected_gap = (k1 + k2) * (2.0 / pi + 2.0 / (3.0 * pi)) / 4.0;
        double measured_gap = -1.0;
        for (const AdmissibilityRow& row : clk.rows) {
          if (row.term == "P(ab)") measured_gap = row.gap;
        }
        ck.require(measured_gap >= 0.0, "clock report must contain the P(ab) term");
        ck.require_close(measured_gap, expected_gap, 1e-6, "clock_gap_P(ab)");
        ck.require(measured_gap > 0.01, "clock gap must exceed 0.01");
      }));

  return checks;
}

}  // namespace belltime

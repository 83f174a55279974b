// Command-line front end for the belltime toolkit: closed-form reference
// tables, seeded Monte Carlo runs of local models under a time-partitioned
// schedule, counterfactual-world evaluations, brute-force bound checks, the
// model admissibility criterion and a self-verification suite.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "belltime/belltime.hpp"

namespace {

using belltime::format_real;
using nlohmann::json;

struct Scenario {
  std::array<double, 4> quad{0.0, std::numbers::pi / 4.0, std::numbers::pi / 8.0,
                             3.0 * std::numbers::pi / 8.0};  // alpha, alpha', beta, beta'
  double total_time = 1.0;
  std::string model;  // empty: no model selected
  belltime::ModelParams params;
  std::uint64_t pairs = 1'000'000;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1'000'000;
  std::string world = "all";
  std::string format = "table";
  std::string chsh_pattern = "standard";
  double tol = 1e-6;
  int resolution = 16;
  int workers = 1;
  bool stratified = false;
};

struct FlagValues {
  std::string config_path;
  std::vector<double> quad;
  std::optional<double> total_time;
  std::optional<std::string> model;
  std::optional<double> depth, period, phase, level;
  std::optional<std::uint64_t> pairs, seed, samples;
  std::optional<std::string> world, format, chsh_pattern;
  std::optional<double> tol;
  std::optional<int> resolution, workers;
  bool stratified = false;
  bool stratified_given = false;
  std::string events_path;
};

class cli_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

void apply_config_file(Scenario& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli_error("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw cli_error("config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw cli_error("config '" + path + "': top level must be an object");

  static const std::set<std::string> known = {
      "quad",   "total_time", "model",      "model_params", "pairs",
      "seed",   "samples",    "world",      "format",       "chsh_pattern",
      "tol",    "resolution", "workers",    "stratified"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw cli_error("config '" + path + "': unknown key '" + item.key() + "'");
    }
  }

  if (j.contains("quad")) {
    const json& q = j["quad"];
    if (q.is_array()) {
      if (q.size() != 4) throw cli_error("config: quad array must have 4 entries");
      for (int i = 0; i < 4; ++i) s.quad[i] = q[i].get<double>();
    } else if (q.is_object()) {
      static const std::set<std::string> quad_keys = {"alpha", "alpha_prime", "beta",
                                                      "beta_prime"};
      for (const auto& item : q.items()) {
        if (!quad_keys.count(item.key())) {
          throw cli_error("config: unknown quad key '" + item.key() + "'");
        }
      }
      if (q.contains("alpha")) s.quad[0] = q["alpha"].get<double>();
      if (q.contains("alpha_prime")) s.quad[1] = q["alpha_prime"].get<double>();
      if (q.contains("beta")) s.quad[2] = q["beta"].get<double>();
      if (q.contains("beta_prime")) s.quad[3] = q["beta_prime"].get<double>();
    } else {
      throw cli_error("config: quad must be an array or an object");
    }
  }
  if (j.contains("total_time")) s.total_time = j["total_time"].get<double>();
  if (j.contains("model")) s.model = j["model"].get<std::string>();
  if (j.contains("model_params")) {
    const json& p = j["model_params"];
    static const std::set<std::string> param_keys = {"depth", "period", "phase", "level"};
    for (const auto& item : p.items()) {
      if (!param_keys.count(item.key())) {
        throw cli_error("config: unknown model_params key '" + item.key() + "'");
      }
    }
    if (p.contains("depth")) s.params.depth = p["depth"].get<double>();
    if (p.contains("period")) s.params.period = p["period"].get<double>();
    if (p.contains("phase")) s.params.phase = p["phase"].get<double>();
    if (p.contains("level")) s.params.level = p["level"].get<double>();
  }
  if (j.contains("pairs")) s.pairs = j["pairs"].get<std::uint64_t>();
  if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("samples")) s.samples = j["samples"].get<std::uint64_t>();
  if (j.contains("world")) s.world = j["world"].get<std::string>();
  if (j.contains("format")) s.format = j["format"].get<std::string>();
  if (j.contains("chsh_pattern")) s.chsh_pattern = j["chsh_pattern"].get<std::string>();
  if (j.contains("tol")) s.tol = j["tol"].get<double>();
  if (j.contains("resolution")) s.resolution = j["resolution"].get<int>();
  if (j.contains("workers")) s.workers = j["workers"].get<int>();
  if (j.contains("stratified")) s.stratified = j["stratified"].get<bool>();
}

Scenario build_scenario(const FlagValues& f) {
  Scenario s;
  if (!f.config_path.empty()) apply_config_file(s, f.config_path);
  if (!f.quad.empty()) {
    if (f.quad.size() != 4) throw cli_error("--quad needs alpha,alpha',beta,beta'");
    for (int i = 0; i < 4; ++i) s.quad[i] = f.quad[i];
  }
  if (f.total_time) s.total_time = *f.total_time;
  if (f.model) s.model = *f.model;
  if (f.depth) s.params.depth = *f.depth;
  if (f.period) s.params.period = *f.period;
  if (f.phase) s.params.phase = *f.phase;
  if (f.level) s.params.level = *f.level;
  if (f.pairs) s.pairs = *f.pairs;
  if (f.seed) s.seed = *f.seed;
  if (f.samples) s.samples = *f.samples;
  if (f.world) s.world = *f.world;
  if (f.format) s.format = *f.format;
  if (f.chsh_pattern) s.chsh_pattern = *f.chsh_pattern;
  if (f.tol) s.tol = *f.tol;
  if (f.resolution) s.resolution = *f.resolution;
  if (f.workers) s.workers = *f.workers;
  if (f.stratified_given) s.stratified = f.stratified;

  if (s.format != "table" && s.format != "json" && s.format != "csv") {
    throw cli_error("--format must be table, json or csv");
  }
  if (s.chsh_pattern != "standard" && s.chsh_pattern != "as-printed") {
    throw cli_error("--chsh-pattern must be standard or as-printed");
  }
  if (s.world != "all" && s.world != "A" && s.world != "B" && s.world != "C" &&
      s.world != "D") {
    throw cli_error("--world must be one of A, B, C, D, all");
  }
  return s;
}

belltime::SettingsQuad scenario_quad(const Scenario& s) {
  return belltime::SettingsQuad(belltime::Angle(s.quad[0]), belltime::Angle(s.quad[1]),
                                belltime::Angle(s.quad[2]), belltime::Angle(s.quad[3]));
}

belltime::QuadratureOptions scenario_quadrature(const Scenario& s) {
  belltime::QuadratureOptions opt;
  opt.initial_subintervals = s.resolution;
  return opt;
}

// ---------------------------------------------------------------------------
// Report assembly and rendering.

using Value = std::variant<double, std::int64_t, std::uint64_t, bool, std::string>;

struct Entry {
  std::string key;
  Value value;
};

struct Section {
  std::string name;
  std::vector<Entry> entries;
};

struct Report {
  std::string command;
  std::vector<Entry> config_echo;
  std::vector<Section> sections;
  std::vector<std::string> annotations;
  std::string preformatted_table;  // replaces the generic table rendering when set
};

void add_entry(std::vector<Entry>& entries, std::string key, Value v) {
  entries.push_back({std::move(key), std::move(v)});
}

Section& section(Report& r, std::string name) {
  r.sections.push_back({std::move(name), {}});
  return r.sections.back();
}

void echo_scenario(Report& r, const Scenario& s, const belltime::SettingsQuad& quad) {
  add_entry(r.config_echo, "quad.alpha", quad.alpha.radians());
  add_entry(r.config_echo, "quad.alpha_prime", quad.alpha_prime.radians());
  add_entry(r.config_echo, "quad.beta", quad.beta.radians());
  add_entry(r.config_echo, "quad.beta_prime", quad.beta_prime.radians());
  add_entry(r.config_echo, "total_time", s.total_time);
  if (!s.model.empty()) {
    add_entry(r.config_echo, "model", s.model);
    add_entry(r.config_echo, "model_params.depth", s.params.depth);
    add_entry(r.config_echo, "model_params.period", s.params.period);
    add_entry(r.config_echo, "model_params.phase", s.params.phase);
    add_entry(r.config_echo, "model_params.level", s.params.level);
  }
  add_entry(r.config_echo, "pairs", s.pairs);
  add_entry(r.config_echo, "seed", s.seed);
  add_entry(r.config_echo, "samples", s.samples);
  add_entry(r.config_echo, "world", s.world);
  add_entry(r.config_echo, "format", s.format);
  add_entry(r.config_echo, "chsh_pattern", s.chsh_pattern);
  add_entry(r.config_echo, "tol", s.tol);
  add_entry(r.config_echo, "resolution", static_cast<std::int64_t>(s.resolution));
  add_entry(r.config_echo, "workers", static_cast<std::int64_t>(s.workers));
  add_entry(r.config_echo, "stratified", s.stratified);
}

void json_value(belltime::JsonWriter& w, const Value& v) {
  std::visit([&](const auto& x) { w.value(x); }, v);
}

std::string render_json(const Report& r) {
  belltime::JsonWriter w;
  w.begin_object();
  w.key("command");
  w.value(r.command);
  w.key("config_echo");
  w.begin_object();
  for (const Entry& e : r.config_echo) {
    w.key(e.key);
    json_value(w, e.value);
  }
  w.end_object();
  w.key("results");
  w.begin_object();
  for (const Section& sec : r.sections) {
    w.key(sec.name);
    w.begin_object();
    for (const Entry& e : sec.entries) {
      w.key(e.key);
      json_value(w, e.value);
    }
    w.end_object();
  }
  w.end_object();
  w.key("annotations");
  w.begin_array();
  for (const std::string& a : r.annotations) w.value(a);
  w.end_array();
  w.end_object();
  return std::move(w).str();
}

std::string value_to_string(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_real(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else {
          return std::to_string(x);
        }
      },
      v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

std::string render_csv(const Report& r) {
  std::string out = "key,value\n";
  out += "command," + csv_escape(r.command) + "\n";
  for (const Entry& e : r.config_echo) {
    out += "config." + e.key + "," + csv_escape(value_to_string(e.value)) + "\n";
  }
  for (const Section& sec : r.sections) {
    for (const Entry& e : sec.entries) {
      out += "results." + sec.name + "." + e.key + "," +
             csv_escape(value_to_string(e.value)) + "\n";
    }
  }
  for (std::size_t i = 0; i < r.annotations.size(); ++i) {
    out += "annotation." + std::to_string(i) + "," + csv_escape(r.annotations[i]) + "\n";
  }
  return out;
}

std::string render_table(const Report& r) {
  std::string out = "== " + r.command + " ==\n";
  if (!r.preformatted_table.empty()) {
    out += r.preformatted_table;
  } else {
    for (const Section& sec : r.sections) {
      out += "[" + sec.name + "]\n";
      std::size_t width = 0;
      for (const Entry& e : sec.entries) width = std::max(width, e.key.size());
      for (const Entry& e : sec.entries) {
        out += "  " + e.key + std::string(width - e.key.size() + 2, ' ') +
               value_to_string(e.value) + "\n";
      }
    }
  }
  for (const std::string& a : r.annotations) {
    out += "note: " + a + "\n";
  }
  return out;
}

std::string render(const Report& r, const std::string& format) {
  if (format == "json") return render_json(r);
  if (format == "csv") return render_csv(r);
  return render_table(r);
}

void add_verdict(Section& sec, const std::string& prefix, const belltime::BoundVerdict& v) {
  add_entry(sec.entries, prefix + ".value", v.value);
  add_entry(sec.entries, prefix + ".lower", v.lower);
  add_entry(sec.entries, prefix + ".upper", v.upper);
  add_entry(sec.entries, prefix + ".satisfied", v.satisfied);
  add_entry(sec.entries, prefix + ".margin", v.margin);
}

// ---------------------------------------------------------------------------
// Commands.

std::string pair_key(const char* prefix, belltime::SettingsPair p) {
  return std::string(prefix) + "(" + belltime::to_string(p) + ")";
}

void add_correlation_data(Report& r, const belltime::CorrelationData& d) {
  Section& probs = section(r, "pair_probabilities");
  for (belltime::SettingsPair p : belltime::all_settings_pairs) {
    add_entry(probs.entries, pair_key("P", p), d.pair_prob(p));
  }
  Section& singles = section(r, "singles");
  add_entry(singles.entries, "P_A(a')", d.single_a_prime);
  add_entry(singles.entries, "P_B(b)", d.single_b);
  Section& expectations = section(r, "expectations");
  for (belltime::SettingsPair p : belltime::all_settings_pairs) {
    add_entry(expectations.entries, pair_key("E", p), d.expectation(p));
  }
}

belltime::ChshPattern scenario_pattern(const Scenario& s) {
  return s.chsh_pattern == "as-printed" ? belltime::ChshPattern::as_printed
                                        : belltime::ChshPattern::standard;
}

void add_inequalities(Report& r, const Scenario& s, const belltime::CorrelationData& d,
                      double singles_tol) {
  Section& prob_form = section(r, "probability_form");
  add_entry(prob_form.entries, "m_value", belltime::ch_m_value(d));
  add_entry(prob_form.entries, "m_lower", -1.0);
  add_entry(prob_form.entries, "m_upper", 0.0);
  try {
    add_verdict(prob_form, "ch_sum", belltime::ch_sum(d, singles_tol));
  } catch (const std::invalid_argument&) {
    r.annotations.push_back(
        "probability-form window [0,1] not evaluated: the singles differ from 1/2 "
        "beyond tolerance " + format_real(singles_tol));
  }
  Section& expect_form = section(r, "expectation_form");
  add_entry(expect_form.entries, "pattern", s.chsh_pattern);
  add_verdict(expect_form, "chsh_s", belltime::chsh_s(d, scenario_pattern(s)));
}

Report run_qm_table(const Scenario& s) {
  const belltime::SettingsQuad quad = scenario_quad(s);
  Report r;
  r.command = "qm-table";
  echo_scenario(r, s, quad);
  const belltime::CorrelationData d = belltime::qm_correlation_data(quad);
  add_correlation_data(r, d);
  add_inequalities(r, s, d, 1e-9);
  return r;
}

struct SimulatedData {
  belltime::PerPairCounts counts{};
  belltime::CorrelationData estimates;
  double singles_tol = 1e-9;
};

SimulatedData simulate_scenario(const Scenario& s, const belltime::Schedule& schedule,
                                const belltime::LocalModel& model,
                                const std::string& events_path) {
  belltime::SimulateOptions opt;
  opt.workers = s.workers;
  opt.stratified_quarters = s.stratified;
  const belltime::RunRecord run =
      belltime::simulate_run(model, schedule, s.pairs, s.seed, opt);
  if (!events_path.empty()) {
    std::ofstream out(events_path);
    if (!out) throw cli_error("cannot open events file '" + events_path + "'");
    belltime::write_run_record(out, run);
  }
  SimulatedData data;
  data.counts = belltime::tally(run);
  data.estimates = belltime::estimate_correlation_data(data.counts);
  const double n_half = static_cast<double>(s.pairs) / 2.0;
  data.singles_tol = 5.0 * std::sqrt(0.25 / n_half);
  return data;
}

Report run_simulate(const Scenario& s, const std::string& events_path) {
  if (s.model.empty()) {
    throw cli_error("simulate needs --model (one of: malus, clock, mimic, constant)");
  }
  const belltime::SettingsQuad quad = scenario_quad(s);
  const belltime::Schedule schedule = belltime::build_schedule(s.total_time, quad);
  const auto model = belltime::make_model(s.model, schedule, s.params);

  Report r;
  r.command = "simulate";
  echo_scenario(r, s, quad);
  const SimulatedData data = simulate_scenario(s, schedule, *model, events_path);

  for (belltime::SettingsPair p : belltime::all_settings_pairs) {
    const belltime::CoincidenceCounts& c = data.counts[belltime::pair_index(p)];
    Section& sec = section(r, pair_key("counts", p));
    add_entry(sec.entries, "pp", c.pp);
    add_entry(sec.entries, "pm", c.pm);
    add_entry(sec.entries, "mp", c.mp);
    add_entry(sec.entries, "mm", c.mm);
    add_entry(sec.entries, "total", c.total());
  }

  add_correlation_data(r, data.estimates);

  Section& errors = section(r, "binomial_sigma");
  for (belltime::SettingsPair p : belltime::all_settings_pairs) {
    const auto n = static_cast<double>(data.counts[belltime::pair_index(p)].total());
    const double prob = data.estimates.pair_prob(p);
    add_entry(errors.entries, pair_key("sigma_P", p),
              std::sqrt(std::max(prob * (1.0 - prob), 1e-12) / n));
    const double e = data.estimates.expectation(p);
    add_entry(errors.entries, pair_key("sigma_E", p),
              std::sqrt(std::max(1.0 - e * e, 1e-12) / n));
  }

  add_inequalities(r, s, data.estimates, data.singles_tol);
  if (!events_path.empty()) {
    r.annotations.push_back("event record written to " + events_path);
  }
  return r;
}

Report run_worlds(const Scenario& s) {
  const belltime::SettingsQuad quad = scenario_quad(s);
  Report r;
  r.command = "worlds";
  echo_scenario(r, s, quad);

  belltime::CorrelationData d;
  double singles_tol = 1e-9;
  if (s.model.empty()) {
    d = belltime::qm_correlation_data(quad);
    r.annotations.push_back("data source: closed-form entangled-state predictions");
  } else {
    const belltime::Schedule schedule = belltime::build_schedule(s.total_time, quad);
    const auto model = belltime::make_model(s.model, schedule, s.params);
    const SimulatedData sim = simulate_scenario(s, schedule, *model, "");
    d = sim.estimates;
    singles_tol = sim.singles_tol;
    r.annotations.push_back("data source: simulated run of model '" + s.model + "'");
  }

  std::vector<belltime::WorldAssumption> worlds;
  if (s.world == "all") {
    worlds.assign(belltime::all_worlds.begin(), belltime::all_worlds.end());
  } else {
    worlds.push_back(belltime::world_from_tag(s.world[0]));
  }

  for (belltime::WorldAssumption w : worlds) {
    const belltime::WorldReport rep = belltime::world_report(w, d, quad, singles_tol);
    Section& sec = section(r, std::string("world_") + belltime::world_tag(w));
    add_entry(sec.entries, "assumption", std::string(belltime::to_string(w)));
    add_entry(sec.entries, "ch_value", rep.ch_value);
    add_entry(sec.entries, "ch_lower", rep.ch_lower);
    add_entry(sec.entries, "ch_upper", rep.ch_upper);
    add_entry(sec.entries, "ch_pair_sum", rep.ch_pair_sum);
    add_entry(sec.entries, "ch_violated", rep.ch_violated);
    add_entry(sec.entries, "chsh_value", rep.chsh_value);
    add_entry(sec.entries, "chsh_bound", rep.chsh_bound);
    add_entry(sec.entries, "chsh_violated", rep.chsh_violated);

    if (w == belltime::WorldAssumption::zero) {
      r.annotations.push_back(
          "zero world: the quarter-weighted pair part is " +
          format_real(rep.ch_pair_sum) +
          "; an alternative figure of 0.318 sometimes quoted for it does not match "
          "this arithmetic and is reported here without being asserted");
    }
    if (w == belltime::WorldAssumption::qm_like) {
      const double alt = belltime::qm_like_ch_value_quarter_weighted_singles(d, quad);
      r.annotations.push_back(
          "qm-like world: the verdict uses the half-run singles weighting, value " +
          format_real(rep.ch_value) + "; the quarter weighting would give " +
          format_real(alt) + ", above the upper bound 0, and is shown for comparison only");
    }
  }
  return r;
}

Report run_oracle(const Scenario& s) {
  const belltime::SettingsQuad quad = scenario_quad(s);
  Report r;
  r.command = "oracle";
  echo_scenario(r, s, quad);

  const belltime::IdentityCheckResult id =
      belltime::verify_probability_form_identity(s.samples, s.seed);
  Section& ident = section(r, "identity_check");
  add_entry(ident.entries, "samples", id.samples);
  add_entry(ident.entries, "worst_excursion", id.worst_excursion);
  add_entry(ident.entries, "min_value", id.min_value);
  add_entry(ident.entries, "max_value", id.max_value);
  add_entry(ident.entries, "corners_attain_bounds", id.corners_attain_bounds);

  const belltime::StrategyExtremes ex = belltime::enumerate_strategies();
  Section& strat = section(r, "strategy_enumeration");
  add_entry(strat.entries, "strategies", static_cast<std::int64_t>(16));
  add_entry(strat.entries, "max_chsh_abs", ex.max_chsh_abs);
  add_entry(strat.entries, "min_chsh_abs", ex.min_chsh_abs);
  add_entry(strat.entries, "max_chsh_signed", ex.max_chsh_signed);
  add_entry(strat.entries, "min_chsh_signed", ex.min_chsh_signed);
  add_entry(strat.entries, "max_ch_window", ex.max_ch);
  add_entry(strat.entries, "min_ch_window", ex.min_ch);
  return r;
}

Report run_admissibility(const Scenario& s) {
  if (s.model.empty()) {
    throw cli_error(
        "admissibility needs a fully specified model (--model): counterfactual time "
        "averages cannot be estimated from experimental data alone, so data-only "
        "input is refused");
  }
  const belltime::SettingsQuad quad = scenario_quad(s);
  const belltime::Schedule schedule = belltime::build_schedule(s.total_time, quad);
  const auto model = belltime::make_model(s.model, schedule, s.params);
  const belltime::AdmissibilityReport rep =
      belltime::check_model(*model, schedule, s.tol, scenario_quadrature(s));

  Report r;
  r.command = "admissibility";
  echo_scenario(r, s, quad);
  Section& summary = section(r, "summary");
  add_entry(summary.entries, "model", rep.model_name);
  add_entry(summary.entries, "tolerance", rep.tolerance);
  add_entry(summary.entries, "world_a_holds", rep.world_a_holds);
  add_entry(summary.entries, "world_b_holds", rep.world_b_holds);
  add_entry(summary.entries, "verdict", std::string(belltime::to_string(rep.verdict)));
  add_entry(summary.entries, "max_gap", rep.max_gap);
  add_entry(summary.entries, "max_pointwise_spread", rep.max_spread);
  for (const belltime::AdmissibilityRow& row : rep.rows) {
    Section& sec = section(r, "term " + row.term);
    add_entry(sec.entries, "factual", row.factual);
    add_entry(sec.entries, "counterfactual", row.counterfactual);
    add_entry(sec.entries, "gap", row.gap);
    add_entry(sec.entries, "pointwise_spread", row.pointwise_spread);
  }
  r.annotations.push_back(
      "averages are declared equal when |factual - counterfactual| <= " +
      format_real(rep.tolerance) + "; the underlying criterion is an exact equality");
  r.preformatted_table = belltime::to_table(rep);
  return r;
}

Report run_repro(const Scenario& s, int& failures) {
  Report r;
  r.command = "repro";
  echo_scenario(r, s, scenario_quad(s));
  const std::vector<belltime::ReproCheck> checks = belltime::run_repro_checks();
  failures = 0;
  std::string table;
  for (const belltime::ReproCheck& c : checks) {
    if (!c.passed) ++failures;
    Section& sec = section(r, c.id);
    add_entry(sec.entries, "description", c.description);
    add_entry(sec.entries, "passed", c.passed);
    add_entry(sec.entries, "detail", c.detail);
    table += std::string(c.passed ? "[PASS] " : "[FAIL] ") + c.id + " — " +
             c.description + "\n        " + c.detail + "\n";
  }
  Section& summary = section(r, "summary");
  add_entry(summary.entries, "checks", static_cast<std::int64_t>(checks.size()));
  add_entry(summary.entries, "failures", static_cast<std::int64_t>(failures));
  table += failures == 0 ? "all checks passed\n"
                         : std::to_string(failures) + " check(s) failed\n";
  r.preformatted_table = table;
  return r;
}

void add_common_options(CLI::App* cmd, FlagValues& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
  cmd->add_option("--quad", f.quad,
                  "analyzer orientations alpha,alpha',beta,beta' in radians")
      ->delimiter(',')
      ->expected(4);
  cmd->add_option("--total-time", f.total_time, "schedule length T");
  cmd->add_option("--model", f.model, "local model: malus, clock, mimic, constant");
  cmd->add_option("--depth", f.depth, "clock model modulation depth");
  cmd->add_option("--period", f.period, "clock model period (0 locks to T/2)");
  cmd->add_option("--phase", f.phase, "clock model phase");
  cmd->add_option("--level", f.level, "constant model response level");
  cmd->add_option("--pairs", f.pairs, "number of pairs to simulate");
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--world", f.world, "counterfactual world: A, B, C, D or all");
  cmd->add_option("--format", f.format, "output format: table, json or csv");
  cmd->add_option("--chsh-pattern", f.chsh_pattern,
                  "expectation-form pairing: standard or as-printed");
  cmd->add_option("--tol", f.tol, "admissibility tolerance");
  cmd->add_option("--resolution", f.resolution, "initial quadrature subintervals");
  cmd->add_option("--workers", f.workers, "simulation worker threads (0 = auto)");
  cmd->add_flag("--stratified", f.stratified,
                "emit exactly evenly across quarters instead of constant flux")
      ->each([&f](const std::string&) { f.stratified_given = true; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-resolved Bell-test toolkit"};
  app.require_subcommand(1);

  FlagValues flags;
  std::string events_path;

  CLI::App* qm_cmd = app.add_subcommand(
      "qm-table", "closed-form entangled-state probabilities and bound verdicts");
  add_common_options(qm_cmd, flags);

  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "seeded Monte Carlo run of a local model under the schedule");
  add_common_options(sim_cmd, flags);
  sim_cmd->add_option("--events", events_path, "write the per-event audit record here");

  CLI::App* worlds_cmd = app.add_subcommand(
      "worlds", "evaluate the four counterfactual worlds on reference or simulated data");
  add_common_options(worlds_cmd, flags);

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "brute-force identity check and deterministic strategy enumeration");
  add_common_options(oracle_cmd, flags);
  oracle_cmd->add_option("--samples", flags.samples, "random samples for the identity check");

  CLI::App* adm_cmd = app.add_subcommand(
      "admissibility", "factual vs counterfactual time averages for a model");
  add_common_options(adm_cmd, flags);

  CLI::App* repro_cmd = app.add_subcommand(
      "repro", "run the self-verification suite and print one line per check");
  add_common_options(repro_cmd, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    const Scenario scenario = build_scenario(flags);
    Report report;
    int failures = 0;
    if (qm_cmd->parsed()) {
      report = run_qm_table(scenario);
    } else if (sim_cmd->parsed()) {
      report = run_simulate(scenario, events_path);
    } else if (worlds_cmd->parsed()) {
      report = run_worlds(scenario);
    } else if (oracle_cmd->parsed()) {
      report = run_oracle(scenario);
    } else if (adm_cmd->parsed()) {
      report = run_admissibility(scenario);
    } else if (repro_cmd->parsed()) {
      report = run_repro(scenario, failures);
    }
    std::cout << render(report, scenario.format);
    return failures == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

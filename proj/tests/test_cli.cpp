#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct CmdResult {
  int status = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(BELLTIME_CLI_PATH) + " " + args + " 2>/dev/null";
  CmdResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    result.out.append(buf, got);
  }
  const int rc = pclose(pipe);
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return result;
}

json parse_json_output(const std::string& args) {
  const CmdResult r = run_cli(args);
  REQUIRE(r.status == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("qm-table reproduces the reference values through the JSON surface") {
  const json j = parse_json_output("qm-table --format json");

  CHECK(j["command"] == "qm-table");
  REQUIRE(j.contains("config_echo"));
  REQUIRE(j.contains("results"));
  REQUIRE(j.contains("annotations"));

  const json& results = j["results"];
  // 17-significant-digit serialization must round-trip to the exact doubles
  CHECK(results["probability_form"]["ch_sum.value"].get<double>() ==
        0.5 * (1.0 + std::numbers::sqrt2));
  CHECK(results["probability_form"]["ch_sum.satisfied"] == false);
  CHECK(results["expectation_form"]["chsh_s.value"].get<double>() ==
        Catch::Approx(2.0 * std::numbers::sqrt2).margin(1e-12));
  CHECK(results["expectation_form"]["chsh_s.satisfied"] == false);
  CHECK(results["pair_probabilities"]["P(ab)"].get<double>() ==
        Catch::Approx(0.4267766952966369).margin(1e-15));
  CHECK(results["singles"]["P_A(a')"].get<double>() == 0.5);

  SECTION("violation verdicts do not affect the exit status") {
    CHECK(run_cli("qm-table --format json").status == 0);
  }
}

TEST_CASE("output is byte-identical across reruns") {
  const CmdResult a = run_cli("qm-table --format json");
  const CmdResult b = run_cli("qm-table --format json");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);

  const CmdResult c = run_cli("simulate --model malus --pairs 20000 --seed 7 --format json");
  const CmdResult d = run_cli("simulate --model malus --pairs 20000 --seed 7 --format json");
  CHECK(c.status == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("simulate emits counts, estimates and error bars") {
  const json j =
      parse_json_output("simulate --model malus --pairs 40000 --seed 3 --format json");
  const json& results = j["results"];
  std::uint64_t total = 0;
  for (const char* sec : {"counts(ab)", "counts(ab')", "counts(a'b)", "counts(a'b')"}) {
    REQUIRE(results.contains(sec));
    total += results[sec]["total"].get<std::uint64_t>();
  }
  CHECK(total == 40000);
  CHECK(results["binomial_sigma"]["sigma_P(ab)"].get<double>() > 0.0);
  CHECK(j["config_echo"]["seed"] == 3);
}

TEST_CASE("worlds command reports all four bounds and the two flagged readings") {
  const json j = parse_json_output("worlds --format json");
  const json& results = j["results"];
  CHECK(results["world_A"]["chsh_bound"] == 2.0);
  CHECK(results["world_B"]["chsh_bound"] == 2.0);
  CHECK(results["world_B"]["ch_violated"] == true);
  CHECK(results["world_B"]["chsh_violated"] == true);
  CHECK(results["world_C"]["chsh_bound"] == 8.0);
  CHECK(results["world_C"]["chsh_violated"] == false);
  CHECK(results["world_C"]["ch_value"].get<double>() ==
        Catch::Approx(-0.19822330470336313).margin(1e-12));
  CHECK(std::fabs(results["world_D"]["chsh_bound"].get<double>() - 32.0 / 9.0) < 1e-12);
  CHECK(results["world_D"]["chsh_violated"] == false);
  // the derived-vs-quoted readings ride along as annotations
  REQUIRE(j["annotations"].size() >= 3);
  bool saw_zero_world_note = false, saw_overlap_note = false;
  for (const auto& a : j["annotations"]) {
    const std::string s = a.get<std::string>();
    if (s.find("0.318") != std::string::npos) saw_zero_world_note = true;
    if (s.find("quarter weighting") != std::string::npos) saw_overlap_note = true;
  }
  CHECK(saw_zero_world_note);
  CHECK(saw_overlap_note);

  SECTION("single-world selection") {
    const json d = parse_json_output("worlds --world D --format json");
    CHECK(d["results"].contains("world_D"));
    CHECK_FALSE(d["results"].contains("world_A"));
  }

  SECTION("worlds on simulated data") {
    const json s = parse_json_output(
        "worlds --model mimic --pairs 50000 --seed 21 --format json");
    CHECK(s["results"]["world_B"]["chsh_value"].get<double>() > 2.5);
  }
}

TEST_CASE("oracle command emits the identity and enumeration results") {
  const json j = parse_json_output("oracle --samples 50000 --seed 4 --format json");
  const json& results = j["results"];
  CHECK(results["identity_check"]["worst_excursion"].get<double>() <= 1e-12);
  CHECK(results["identity_check"]["corners_attain_bounds"] == true);
  CHECK(results["strategy_enumeration"]["max_chsh_abs"] == 2.0);
  CHECK(results["strategy_enumeration"]["max_ch_window"] == 1.0);
  CHECK(results["strategy_enumeration"]["min_ch_window"] == 0.0);
}

TEST_CASE("admissibility command") {
  SECTION("refuses data-only input") {
    CHECK(run_cli("admissibility --format json").status == 1);
  }
  SECTION("static model is refuted") {
    const json j = parse_json_output("admissibility --model malus --format json");
    CHECK(j["results"]["summary"]["verdict"] == "refuted-by-experiments");
    CHECK(j["results"]["summary"]["world_a_holds"] == true);
  }
  SECTION("clock model is not refuted") {
    const json j = parse_json_output("admissibility --model clock --format json");
    CHECK(j["results"]["summary"]["verdict"] == "not-yet-refuted");
    CHECK(j["results"].contains("term P(ab)"));
  }
}

TEST_CASE("config file handling") {
  const std::string path = "cli_test_config.json";
  {
    std::ofstream out(path);
    out << R"({"model": "malus", "pairs": 15000, "seed": 99, "format": "json"})";
  }

  SECTION("config values are used") {
    const json j = parse_json_output("simulate --config " + path);
    CHECK(j["config_echo"]["seed"] == 99);
    CHECK(j["config_echo"]["pairs"] == 15000);
  }

  SECTION("flags override config values") {
    const json j = parse_json_output("simulate --config " + path + " --seed 123");
    CHECK(j["config_echo"]["seed"] == 123);
    CHECK(j["config_echo"]["pairs"] == 15000);
  }

  SECTION("unknown keys are rejected") {
    const std::string bad = "cli_test_config_bad.json";
    {
      std::ofstream out(bad);
      out << R"({"model": "malus", "speling_mistake": 1})";
    }
    CHECK(run_cli("simulate --config " + bad).status == 1);
    std::remove(bad.c_str());
  }

  std::remove(path.c_str());
}

TEST_CASE("qm-table handles a non-standard quad") {
  // alpha, alpha', beta, beta' = 0, pi/3, pi/6, pi/2
  const json j = parse_json_output(
      "qm-table --quad 0,1.0471975511965976,0.5235987755982988,1.5707963267948966 "
      "--format json");
  // P(ab) = cos^2(pi/6)/2 = 3/8
  CHECK(j["results"]["pair_probabilities"]["P(ab)"].get<double>() ==
        Catch::Approx(0.375).margin(1e-12));
}

TEST_CASE("config and model errors exit nonzero") {
  CHECK(run_cli("simulate --model nonesuch --pairs 100").status == 1);
  CHECK(run_cli("simulate --pairs 100").status == 1);  // no model chosen
  CHECK(run_cli("qm-table --quad 0,0,0.4,1.2").status == 1);  // alpha = alpha'
  CHECK(run_cli("qm-table --format yaml").status == 1);
  CHECK(run_cli("worlds --world X").status == 1);
}

TEST_CASE("csv output is flat key-value rows") {
  const CmdResult r = run_cli("qm-table --format csv");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("key,value\n", 0) == 0);
  CHECK(r.out.find("results.pair_probabilities.P(ab),0.42677669529663687") !=
        std::string::npos);
  CHECK(r.out.find("config.total_time,1") != std::string::npos);
}

TEST_CASE("event records can be dumped for audit") {
  const std::string path = "cli_test_events.txt";
  const CmdResult r = run_cli("simulate --model malus --pairs 1000 --seed 5 --events " +
                              path + " --format json");
  CHECK(r.status == 0);
  std::ifstream in(path);
  REQUIRE(static_cast<bool>(in));
  std::string line;
  std::size_t events = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') ++events;
  }
  CHECK(events == 1000);
  std::remove(path.c_str());
}

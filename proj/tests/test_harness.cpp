#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ngpsim/harness.hpp"

using namespace ngpsim;

namespace {

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  const int rc = cli(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("strategy and answer names") {
  CHECK(strategy_from_name("always_yes") == StrategyKind::AlwaysYes);
  CHECK(strategy_from_name("always_no") == StrategyKind::AlwaysNo);
  CHECK(strategy_from_name("scripted") == StrategyKind::Scripted);
  CHECK(strategy_from_name("seeded_random") == StrategyKind::SeededRandom);
  CHECK_THROWS_AS(strategy_from_name("psychic"), ConfigError);
  CHECK(strategy_name(StrategyKind::Scripted) == "scripted");
  CHECK(answer_from_name("yes") == Answer::Yes);
  CHECK(answer_from_name("y") == Answer::Yes);
  CHECK(answer_from_name("no") == Answer::No);
  CHECK(answer_from_name("N") == Answer::No);
  CHECK_THROWS_AS(answer_from_name("maybe"), ConfigError);
}

TEST_CASE("run_scenario validates its config") {
  ScenarioConfig config;
  config.world = "KQ";
  config.algorithm = Algorithm::LineScan;
  try {
    run_scenario(config);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 1);
  }

  config.world = "KVN";
  config.strategy = StrategyKind::SeededRandom;  // no seed given
  CHECK_THROWS_AS(run_scenario(config), ConfigError);
  config.strategy = StrategyKind::Scripted;  // no script given
  CHECK_THROWS_AS(run_scenario(config), ConfigError);
}

TEST_CASE("run_scenario summary fields") {
  ScenarioConfig config;
  config.world = "KVN";
  config.algorithm = Algorithm::FindAllKnights;
  const ScenarioOutcome o = run_scenario(config);
  CHECK(o.summary.n == 3);
  CHECK(o.summary.algorithm == "find_all_knights");
  CHECK(o.summary.questions_used == 5);
  CHECK(o.summary.bound == 5);
  CHECK(o.summary.within_bound);
  CHECK(o.summary.result == "knights=0");
  CHECK(o.summary.majority_ok);
  CHECK(o.transcript.question_count() == 5);
}

TEST_CASE("transcript JSON matches the documented schema byte for byte") {
  ScenarioConfig config;
  config.world = "KNV";
  config.algorithm = Algorithm::LineScan;
  const ScenarioOutcome o = run_scenario(config);
  const std::string expected = R"({
  "world": "KNV",
  "algorithm": "line_scan",
  "entries": [
    {
      "i": 0,
      "respondent": 0,
      "predicate": {
        "kind": "is_normal",
        "target": 1
      },
      "answer": "yes"
    }
  ],
  "result": {
    "trusted": 2
  },
  "questions": 1
})";
  CHECK(o.transcript_json == expected);
}

TEST_CASE("identical config and seed give byte-identical output") {
  ScenarioConfig config;
  config.world = "KNKVN";
  config.algorithm = Algorithm::IdentifyNormals;
  config.strategy = StrategyKind::SeededRandom;
  config.seed = 20240907;
  const ScenarioOutcome first = run_scenario(config);
  const ScenarioOutcome second = run_scenario(config);
  CHECK(first.transcript_json == second.transcript_json);
  CHECK(first.summary.result == second.summary.result);
  CHECK(first.summary.result == "normals=1;4");
}

TEST_CASE("majority violations warn but still run") {
  ScenarioConfig config;
  config.world = "NNK";
  config.algorithm = Algorithm::LineScan;
  config.strategy = StrategyKind::AlwaysYes;
  std::ostringstream warn;
  const ScenarioOutcome o = run_scenario(config, &warn);
  CHECK_FALSE(o.summary.majority_ok);
  CHECK(warn.str().find("no reliable majority") != std::string::npos);
  CHECK(warn.str().find("NNK") != std::string::npos);

  std::ostringstream quiet;
  ScenarioConfig fine = config;
  fine.world = "KKN";
  run_scenario(fine, &quiet);
  CHECK(quiet.str().empty());
}

TEST_CASE("scripted answers reach the Normals in order") {
  ScenarioConfig config;
  config.world = "NKV";
  config.algorithm = Algorithm::FindReliablePairing;
  config.strategy = StrategyKind::Scripted;
  config.script = std::vector<Answer>{Answer::Yes};
  const ScenarioOutcome o = run_scenario(config);
  CHECK(o.summary.result == "trusted=1");
  CHECK(o.summary.questions_used == 1);
}

TEST_CASE("sweep output is deterministic, bounded and well-formed") {
  SweepConfig config;
  config.n_from = 2;
  config.n_to = 6;
  config.trials = 5;
  config.seed = 99;
  const std::string csv = run_sweep(config);
  CHECK(csv == run_sweep(config));

  const std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 1 + 5 * 5);
  CHECK(lines[0] == "n,algorithm,seed,questions,bound,within_bound,majority_ok,result");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields;
    std::stringstream row(lines[i]);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 8);
    CHECK(fields[1] == "find_reliable_pairing");
    CHECK(fields[5] == "true");  // within_bound
    CHECK(fields[6] == "true");  // majority_ok, by rejection sampling
    CHECK(fields[7].rfind("trusted=", 0) == 0);
  }
}

TEST_CASE("a full sweep stays within bounds on every row") {
  SweepConfig config;
  config.n_from = 2;
  config.n_to = 20;
  config.trials = 100;
  config.seed = 1;
  const std::vector<std::string> lines = split_lines(run_sweep(config));
  REQUIRE(lines.size() == 1 + 19 * 100);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].find(",true,true,") != std::string::npos);
  }
}

TEST_CASE("cli simulate prints the transcript JSON") {
  std::string out;
  std::string err;
  const int rc = run_cli(
      {"simulate", "--world", "KNV", "--algorithm", "find_all_knights"}, &out, &err);
  CHECK(rc == 0);
  CHECK(err.empty());
  const auto doc = nlohmann::json::parse(out);
  CHECK(doc["world"] == "KNV");
  CHECK(doc["algorithm"] == "find_all_knights");
  CHECK(doc["questions"] == 4);
  CHECK(doc["result"]["knights"] == nlohmann::json::array({0}));
  CHECK(out.back() == '\n');
}

TEST_CASE("cli trace prints one line per question") {
  std::string out;
  const int rc = run_cli({"trace", "--world", "KKKK", "--algorithm", "line_scan"}, &out);
  CHECK(rc == 0);
  const std::vector<std::string> lines = split_lines(out);
  REQUIRE(lines.size() == 5);  // banner, three questions, result
  CHECK(lines[0].find("world KKKK") == 0);
  CHECK(lines[1].find("q0 -> processor 0: \"Is it true that processor 1 is Normal") == 0);
  CHECK(lines[4].find("result: trusted=3  questions: 3  bound: 3") == 0);
}

TEST_CASE("cli verify small range") {
  std::string out;
  const int rc = run_cli({"verify", "--n-max", "2"}, &out);
  CHECK(rc == 0);
  const auto doc = nlohmann::json::parse(out);
  CHECK(doc["ok"] == true);
  CHECK(doc["n_max"] == 2);
  CHECK(doc["worlds_checked"] == 6);
  CHECK(doc["failures"].empty());
}

TEST_CASE("cli sweep is reproducible") {
  const std::vector<std::string> args = {"sweep", "--n-from", "2", "--n-to", "4",
                                         "--trials", "3", "--seed", "5"};
  std::string first;
  std::string second;
  CHECK(run_cli(args, &first) == 0);
  CHECK(run_cli(args, &second) == 0);
  CHECK(first == second);
  CHECK(split_lines(first).size() == 1 + 3 * 3);
}

TEST_CASE("cli rejects bad usage with exit code 2") {
  std::string err;
  CHECK(run_cli({}, nullptr, &err) == 2);
  CHECK(run_cli({"frobnicate"}, nullptr, &err) == 2);
  CHECK(run_cli({"simulate", "--algorithm", "line_scan"}, nullptr, &err) == 2);  // no world
  CHECK(run_cli({"simulate", "--world", "KVN", "--algorithm", "warp"}, nullptr, &err) == 2);
  CHECK(err.find("unknown algorithm") != std::string::npos);
  CHECK(run_cli({"simulate", "--world", "KQ", "--algorithm", "line_scan"}, nullptr, &err) == 2);
  CHECK(err.find("position 1") != std::string::npos);
  CHECK(run_cli({"simulate", "--world", "KVN", "--algorithm", "line_scan", "--strategy",
                 "seeded_random"},
                nullptr, &err) == 2);
  CHECK(err.find("requires a seed") != std::string::npos);
  CHECK(run_cli({"sweep", "--n-from", "5", "--n-to", "2"}, nullptr, &err) == 2);
}

TEST_CASE("cli help exits cleanly") {
  std::string out;
  CHECK(run_cli({"--help"}, &out) == 0);
  CHECK(out.find("simulate") != std::string::npos);
  CHECK(out.find("verify") != std::string::npos);
}

TEST_CASE("cli --out writes files, resolving relative paths via the env var") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ngpsim_out_test";
  fs::create_directories(dir);

  setenv("NGPSIM_OUT_DIR", dir.string().c_str(), 1);
  std::string out;
  const int rc = run_cli({"simulate", "--world", "KNV", "--algorithm", "line_scan",
                          "--out", "relative.json"},
                         &out);
  unsetenv("NGPSIM_OUT_DIR");
  CHECK(rc == 0);
  CHECK(out.empty());  // went to the file instead
  std::ifstream relative(dir / "relative.json");
  REQUIRE(relative.good());
  nlohmann::json doc;
  relative >> doc;
  CHECK(doc["result"]["trusted"] == 2);

  // An absolute path ignores the env var.
  const fs::path absolute = dir / "absolute.csv";
  setenv("NGPSIM_OUT_DIR", "/nonexistent_ngpsim_dir", 1);
  const int rc2 = run_cli({"sweep", "--n-from", "2", "--n-to", "2", "--trials", "1",
                           "--out", absolute.string()});
  unsetenv("NGPSIM_OUT_DIR");
  CHECK(rc2 == 0);
  CHECK(fs::exists(absolute));

  fs::remove_all(dir);
}

TEST_CASE("verification report JSON lists failures verbatim") {
  VerificationReport report;
  report.n_min = 1;
  report.n_max = 2;
  report.worlds_checked = 6;
  report.branches_checked = 30;
  report.failures.push_back(
      {"NKV", "line_scan", "YN", FailureKind::Bound, "used 9 questions, bound 2"});
  const auto doc = nlohmann::json::parse(verification_report_to_json(report));
  CHECK(doc["ok"] == false);
  REQUIRE(doc["failures"].size() == 1);
  CHECK(doc["failures"][0]["world"] == "NKV");
  CHECK(doc["failures"][0]["branch_id"] == "YN");
  CHECK(doc["failures"][0]["kind"] == "bound");
}

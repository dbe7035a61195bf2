#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ngpsim/verifier.hpp"

namespace ngpsim {

enum class StrategyKind : unsigned char { AlwaysYes, AlwaysNo, Scripted, SeededRandom };

std::string_view strategy_name(StrategyKind kind) noexcept;
StrategyKind strategy_from_name(std::string_view name);  // throws ConfigError

Answer answer_from_name(std::string_view name);  // "yes"/"no"/"y"/"n", throws ConfigError

struct ScenarioConfig {
  std::string world;
  Algorithm algorithm = Algorithm::FindAllKnights;
  StrategyKind strategy = StrategyKind::AlwaysNo;
  std::optional<std::vector<Answer>> script;     // required by Scripted
  std::optional<std::uint64_t> seed;             // required by SeededRandom
  std::optional<std::size_t> normal_budget;      // identify_normals only
};

struct RunSummary {
  std::size_t n = 0;
  std::string algorithm;
  std::size_t questions_used = 0;
  std::size_t bound = 0;
  bool within_bound = false;
  std::string result;  // same rendering as the sweep CSV column
  bool majority_ok = false;
};

struct ScenarioOutcome {
  Transcript transcript;
  BranchOutcome outcome;
  RunSummary summary;
  std::string transcript_json;  // schema documented in the README
};

// Runs one configured scenario. Deterministic given the config (the seed
// fully determines Normal answers). Validates the config and the world
// string; a violated majority precondition only warns on *warn, it does not
// refuse to run.
ScenarioOutcome run_scenario(const ScenarioConfig& config, std::ostream* warn = nullptr);

std::string verification_report_to_json(const VerificationReport& report);

struct SweepConfig {
  std::size_t n_from = 2;
  std::size_t n_to = 8;
  Algorithm algorithm = Algorithm::FindReliablePairing;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
};

// Runs trials random scenarios per population size. Worlds are sampled
// uniformly among majority-ok assignments by rejection sampling; Normals
// answer via a per-trial derived seed. Returns CSV text with header
//   n,algorithm,seed,questions,bound,within_bound,majority_ok,result
std::string run_sweep(const SweepConfig& config);

/// Command line front end (subcommands: simulate, trace, verify, sweep).
// Returns 0 on success, 1 on verification failures, 2 on usage errors.
int cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ngpsim

#include "ngpsim/harness.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace ngpsim {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Unbiased draw in [0, k) from the raw 64-bit stream (multiply-shift with
// rejection); std::uniform_int_distribution is implementation-defined and
// would break bit-exact reproducibility.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t k) {
  const std::uint64_t threshold = (0 - k) % k;
  for (;;) {
    const auto m = static_cast<unsigned __int128>(rng()) * k;
    if (static_cast<std::uint64_t>(m) >= threshold) {
      return static_cast<std::uint64_t>(m >> 64);
    }
  }
}

World sample_majority_world(std::mt19937_64& rng, std::size_t n) {
  World world;
  world.types.resize(n);
  static constexpr ProcessorType kTypes[3] = {
      ProcessorType::Knight, ProcessorType::Knave, ProcessorType::Normal};
  do {
    for (std::size_t i = 0; i < n; ++i) {
      world.types[i] = kTypes[bounded(rng, 3)];
    }
  } while (!census(world).majority_ok);
  return world;
}

std::string result_string(const BranchOutcome& outcome) {
  const auto join = [](const std::vector<std::size_t>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i > 0) s.push_back(';');
      s += std::to_string(xs[i]);
    }
    return s;
  };
  switch (outcome.algorithm) {
    case Algorithm::LineScan:
    case Algorithm::FindReliablePairing:
      return "trusted=" + std::to_string(outcome.trusted.value_or(0));
    case Algorithm::FindAllKnights:
      return "knights=" + join(outcome.classified);
    case Algorithm::IdentifyNormals:
      return "normals=" + join(outcome.classified);
  }
  return "";
}

ordered_json result_json(const BranchOutcome& outcome) {
  ordered_json result;
  switch (outcome.algorithm) {
    case Algorithm::LineScan:
    case Algorithm::FindReliablePairing:
      result["trusted"] = outcome.trusted.value_or(0);
      break;
    case Algorithm::FindAllKnights:
      result["trusted"] = outcome.trusted.value_or(0);
      result["knights"] = outcome.classified;
      break;
    case Algorithm::IdentifyNormals:
      result["normals"] = outcome.classified;
      break;
  }
  return result;
}

std::string transcript_to_json(const std::string& world, const BranchOutcome& outcome) {
  ordered_json doc;
  doc["world"] = world;
  doc["algorithm"] = algorithm_name(outcome.algorithm);
  ordered_json entries = ordered_json::array();
  for (const TranscriptEntry& entry : outcome.transcript.entries) {
    ordered_json e;
    e["i"] = entry.index;
    e["respondent"] = entry.respondent;
    e["predicate"] = {{"kind", predicate_kind_name(entry.question.predicate.kind)},
                      {"target", entry.question.predicate.target}};
    e["answer"] = entry.answer == Answer::Yes ? "yes" : "no";
    entries.push_back(std::move(e));
  }
  doc["entries"] = std::move(entries);
  doc["result"] = result_json(outcome);
  doc["questions"] = outcome.transcript.question_count();
  return doc.dump(2);
}

std::unique_ptr<NormalStrategy> make_strategy(const ScenarioConfig& config) {
  switch (config.strategy) {
    case StrategyKind::AlwaysYes: return std::make_unique<AlwaysYes>();
    case StrategyKind::AlwaysNo: return std::make_unique<AlwaysNo>();
    case StrategyKind::Scripted:
      if (!config.script.has_value()) {
        throw ConfigError("scripted strategy requires a script");
      }
      return std::make_unique<Scripted>(*config.script);
    case StrategyKind::SeededRandom:
      if (!config.seed.has_value()) {
        throw ConfigError("seeded_random strategy requires a seed");
      }
      return std::make_unique<SeededRandom>(*config.seed);
  }
  throw ConfigError("unknown strategy");
}

}  // namespace

std::string_view strategy_name(StrategyKind kind) noexcept {
  switch (kind) {
    case StrategyKind::AlwaysYes: return "always_yes";
    case StrategyKind::AlwaysNo: return "always_no";
    case StrategyKind::Scripted: return "scripted";
    case StrategyKind::SeededRandom: return "seeded_random";
  }
  return "?";
}

StrategyKind strategy_from_name(std::string_view name) {
  if (name == "always_yes") return StrategyKind::AlwaysYes;
  if (name == "always_no") return StrategyKind::AlwaysNo;
  if (name == "scripted") return StrategyKind::Scripted;
  if (name == "seeded_random") return StrategyKind::SeededRandom;
  throw ConfigError("unknown strategy '" + std::string(name) +
                    "' (expected always_yes, always_no, scripted or seeded_random)");
}

Answer answer_from_name(std::string_view name) {
  if (name == "yes" || name == "y" || name == "Y") return Answer::Yes;
  if (name == "no" || name == "n" || name == "N") return Answer::No;
  throw ConfigError("invalid answer '" + std::string(name) + "' (expected yes or no)");
}

ScenarioOutcome run_scenario(const ScenarioConfig& config, std::ostream* warn) {
  const World world = parse_world(config.world);
  const Census c = census(world);
  if (!c.majority_ok && warn != nullptr) {
    *warn << "warning: world " << config.world << " has no reliable majority ("
          << c.normals << " Normal of " << world.size()
          << "); diagnosis guarantees do not apply\n";
  }

  const std::unique_ptr<NormalStrategy> strategy = make_strategy(config);
  Session session{world, strategy.get(), {}};
  BranchOutcome outcome = run_algorithm(session, config.algorithm, config.normal_budget);

  ScenarioOutcome result;
  result.summary.n = world.size();
  result.summary.algorithm = std::string(algorithm_name(config.algorithm));
  result.summary.questions_used = outcome.questions;
  result.summary.bound = question_bound(config.algorithm, world.size());
  result.summary.within_bound = outcome.questions <= result.summary.bound;
  result.summary.result = result_string(outcome);
  result.summary.majority_ok = c.majority_ok;
  result.transcript_json = transcript_to_json(config.world, outcome);
  result.transcript = outcome.transcript;
  result.outcome = std::move(outcome);
  return result;
}

std::string verification_report_to_json(const VerificationReport& report) {
  ordered_json doc;
  doc["n_min"] = report.n_min;
  doc["n_max"] = report.n_max;
  doc["worlds_checked"] = report.worlds_checked;
  doc["branches_checked"] = report.branches_checked;
  doc["ok"] = report.ok();
  ordered_json failures = ordered_json::array();
  for (const VerificationFailure& f : report.failures) {
    ordered_json entry;
    entry["world"] = f.world;
    entry["algorithm"] = f.algorithm;
    entry["branch_id"] = f.branch_id;
    entry["kind"] = failure_kind_name(f.kind);
    entry["claim"] = f.claim;
    failures.push_back(std::move(entry));
  }
  doc["failures"] = std::move(failures);
  return doc.dump(2);
}

std::string run_sweep(const SweepConfig& config) {
  std::ostringstream csv;
  csv << "n,algorithm,seed,questions,bound,within_bound,majority_ok,result\n";
  for (std::size_t n = config.n_from; n <= config.n_to; ++n) {
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      const std::uint64_t trial_seed = splitmix64(splitmix64(config.seed + n) + trial);
      std::mt19937_64 world_rng(trial_seed);
      const World world = sample_majority_world(world_rng, n);

      ScenarioConfig scenario;
      scenario.world = to_string(world);
      scenario.algorithm = config.algorithm;
      scenario.strategy = StrategyKind::SeededRandom;
      scenario.seed = splitmix64(trial_seed);
      const ScenarioOutcome outcome = run_scenario(scenario, nullptr);

      csv << n << ',' << outcome.summary.algorithm << ',' << trial_seed << ','
          << outcome.summary.questions_used << ',' << outcome.summary.bound << ','
          << (outcome.summary.within_bound ? "true" : "false") << ','
          << (outcome.summary.majority_ok ? "true" : "false") << ','
          << outcome.summary.result << '\n';
    }
  }
  return csv.str();
}

namespace {

// Relative --out paths resolve under $NGPSIM_OUT_DIR when it is set.
std::filesystem::path resolve_out(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("NGPSIM_OUT_DIR"); dir != nullptr && *dir != '\0') {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

int emit(const std::string& text, const std::string& out_path, std::ostream& out,
         std::ostream& err) {
  if (out_path.empty()) {
    out << text;
    return 0;
  }
  const std::filesystem::path target = resolve_out(out_path);
  std::ofstream file(target, std::ios::binary);
  if (!file) {
    err << "error: cannot open " << target.string() << " for writing\n";
    return 2;
  }
  file << text;
  return 0;
}

struct ScenarioFlags {
  std::string world;
  std::string algorithm;
  std::string strategy = "always_no";
  std::string script;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t budget = 0;
  bool budget_set = false;
  std::string out;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& flags) {
  cmd->add_option("--world", flags.world, "world string, one of K/V/N per processor")
      ->required();
  cmd->add_option("--algorithm", flags.algorithm,
                  "line_scan | find_all_knights | find_reliable_pairing | identify_normals")
      ->required();
  cmd->add_option("--strategy", flags.strategy,
                  "always_yes | always_no | scripted | seeded_random");
  cmd->add_option("--script", flags.script,
                  "comma-separated yes/no answers for the scripted strategy");
  cmd->add_option("--seed", flags.seed, "seed for the seeded_random strategy")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--budget", flags.budget,
                  "Normal budget for identify_normals (default: largest value below n/2)")
      ->each([&flags](const std::string&) { flags.budget_set = true; });
  cmd->add_option("--out", flags.out, "output file (default: stdout)");
}

ScenarioConfig to_config(const ScenarioFlags& flags) {
  ScenarioConfig config;
  config.world = flags.world;
  config.algorithm = algorithm_from_name(flags.algorithm);
  config.strategy = strategy_from_name(flags.strategy);
  if (!flags.script.empty()) {
    std::vector<Answer> script;
    std::stringstream items(flags.script);
    std::string item;
    while (std::getline(items, item, ',')) {
      script.push_back(answer_from_name(item));
    }
    config.script = std::move(script);
  }
  if (flags.seed_set) config.seed = flags.seed;
  if (flags.budget_set) config.normal_budget = flags.budget;
  return config;
}

std::string render_trace(const ScenarioConfig& config, const ScenarioOutcome& outcome) {
  std::ostringstream text;
  text << "world " << config.world << "  algorithm " << algorithm_name(config.algorithm)
       << "  strategy " << strategy_name(config.strategy) << '\n';
  for (const TranscriptEntry& entry : outcome.transcript.entries) {
    text << 'q' << entry.index << " -> processor " << entry.respondent << ": \""
         << to_debug_string(entry.question)
         << "\" answer: " << (entry.answer == Answer::Yes ? "yes" : "no") << '\n';
  }
  text << "result: " << outcome.summary.result
       << "  questions: " << outcome.summary.questions_used
       << "  bound: " << outcome.summary.bound
       << "  within_bound: " << (outcome.summary.within_bound ? "true" : "false") << '\n';
  return text.str();
}

}  // namespace

int cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fault diagnosis of yes/no respondents by self-referential questioning"};
  app.name("ngpsim");
  app.require_subcommand(1);

  ScenarioFlags sim_flags;
  CLI::App* simulate = app.add_subcommand("simulate", "run one scenario, emit transcript JSON");
  add_scenario_flags(simulate, sim_flags);

  ScenarioFlags trace_flags;
  CLI::App* trace = app.add_subcommand("trace", "run one scenario, emit a per-question log");
  add_scenario_flags(trace, trace_flags);

  std::size_t n_max = 7;
  std::string verify_out;
  CLI::App* verify = app.add_subcommand(
      "verify", "exhaustively check every world and Normal behavior up to n-max");
  verify->add_option("--n-max", n_max, "largest population size to check (default 7)");
  verify->add_option("--out", verify_out, "output file (default: stdout)");

  SweepConfig sweep_config;
  std::string sweep_algorithm = "find_reliable_pairing";
  std::string sweep_out;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "random scenarios over a range of population sizes, emit CSV");
  sweep->add_option("--n-from", sweep_config.n_from, "smallest population size");
  sweep->add_option("--n-to", sweep_config.n_to, "largest population size");
  sweep->add_option("--algorithm", sweep_algorithm, "algorithm to sweep");
  sweep->add_option("--trials", sweep_config.trials, "trials per population size");
  sweep->add_option("--seed", sweep_config.seed, "master seed");
  sweep->add_option("--out", sweep_out, "output file (default: stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ngpsim");
  for (const std::string& arg : args) {
    argv.push_back(arg.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (simulate->parsed()) {
      const ScenarioConfig config = to_config(sim_flags);
      const ScenarioOutcome outcome = run_scenario(config, &err);
      return emit(outcome.transcript_json + "\n", sim_flags.out, out, err);
    }
    if (trace->parsed()) {
      const ScenarioConfig config = to_config(trace_flags);
      const ScenarioOutcome outcome = run_scenario(config, &err);
      return emit(render_trace(config, outcome), trace_flags.out, out, err);
    }
    if (verify->parsed()) {
      const VerificationReport report = exhaustive_check(n_max);
      const int rc = emit(verification_report_to_json(report) + "\n", verify_out, out, err);
      if (rc != 0) return rc;
      if (!report.ok()) {
        err << "verification failed: " << report.failures.size() << " violation(s)\n";
        return 1;
      }
      return 0;
    }
    sweep_config.algorithm = algorithm_from_name(sweep_algorithm);
    if (sweep_config.n_from < 1 || sweep_config.n_to < sweep_config.n_from) {
      throw ConfigError("invalid sweep range");
    }
    return emit(run_sweep(sweep_config), sweep_out, out, err);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace ngpsim

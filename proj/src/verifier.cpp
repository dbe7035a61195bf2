#include "ngpsim/verifier.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "ngpsim/errors.hpp"

namespace ngpsim {

int popcount(std::uint64_t value) noexcept { return std::popcount(value); }

std::string_view algorithm_name(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::LineScan: return "line_scan";
    case Algorithm::FindAllKnights: return "find_all_knights";
    case Algorithm::FindReliablePairing: return "find_reliable_pairing";
    case Algorithm::IdentifyNormals: return "identify_normals";
  }
  return "?";
}

Algorithm algorithm_from_name(std::string_view name) {
  if (name == "line_scan") return Algorithm::LineScan;
  if (name == "find_all_knights") return Algorithm::FindAllKnights;
  if (name == "find_reliable_pairing") return Algorithm::FindReliablePairing;
  if (name == "identify_normals") return Algorithm::IdentifyNormals;
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected line_scan, find_all_knights, "
                    "find_reliable_pairing or identify_normals)");
}

std::size_t question_bound(Algorithm algorithm, std::size_t n) {
  switch (algorithm) {
    case Algorithm::LineScan: return n - 1;
    case Algorithm::FindAllKnights: return 2 * n - 1;
    case Algorithm::FindReliablePairing:
      return n - static_cast<std::size_t>(popcount(n));
    case Algorithm::IdentifyNormals: return (3 * n + 1) / 2 - 1;
  }
  return 0;
}

std::vector<World> enumerate_worlds(std::size_t n, bool require_majority) {
  std::vector<World> worlds;
  World current;
  current.types.assign(n, ProcessorType::Knight);

  const auto emit = [&] {
    if (!require_majority || census(current).majority_ok) {
      worlds.push_back(current);
    }
  };

  // Base-3 counter, index 0 most significant.
  emit();
  for (;;) {
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (current.types[i] != ProcessorType::Normal) {
        current.types[i] = current.types[i] == ProcessorType::Knight
                               ? ProcessorType::Knave
                               : ProcessorType::Normal;
        break;
      }
      current.types[i] = ProcessorType::Knight;
      if (i == 0) return worlds;
    }
    emit();
  }
}

std::string branch_id_string(const std::vector<Answer>& branch_id) {
  std::string out;
  out.reserve(branch_id.size());
  for (Answer a : branch_id) {
    out.push_back(answer_letter(a));
  }
  return out;
}

BranchOutcome run_algorithm(Session& session, Algorithm algorithm,
                            std::optional<std::size_t> budget) {
  BranchOutcome outcome;
  outcome.algorithm = algorithm;
  switch (algorithm) {
    case Algorithm::LineScan: {
      const LineScanReport report = line_scan(session);
      outcome.trusted = report.trusted;
      outcome.questions = report.questions;
      outcome.potentials = report.potentials;
      break;
    }
    case Algorithm::FindAllKnights: {
      const KnightReport report = find_all_knights(session);
      outcome.trusted = report.trusted;
      outcome.classified = report.knights;
      outcome.questions = report.total_questions;
      outcome.phase1_questions = report.phase1_questions;
      break;
    }
    case Algorithm::FindReliablePairing: {
      const PairingReport report = find_reliable_pairing(session);
      outcome.trusted = report.trusted;
      outcome.questions = report.questions;
      outcome.rounds = report.rounds;
      break;
    }
    case Algorithm::IdentifyNormals: {
      std::vector<std::size_t> members(session.world.size());
      std::iota(members.begin(), members.end(), std::size_t{0});
      const NormalReport report = identify_normals(
          session, std::move(members),
          budget.value_or(default_normal_budget(session.world.size())));
      outcome.classified = report.normals;
      outcome.questions = report.total_questions;
      outcome.case_trace = report.case_trace;
      break;
    }
  }
  outcome.transcript = std::move(session.transcript);
  return outcome;
}

void explore_branches(const World& world, Algorithm algorithm,
                      std::optional<std::size_t> budget,
                      const std::function<void(const BranchOutcome&)>& sink) {
  // Depth-first over forced-answer prefixes. Each run replays a prefix and
  // answers No at every later choice point; every such later point then
  // spawns the prefix with that answer flipped to Yes.
  std::vector<std::vector<Answer>> pending;
  pending.push_back({});
  while (!pending.empty()) {
    std::vector<Answer> forced = std::move(pending.back());
    pending.pop_back();

    Branching strategy(std::move(forced));
    Session session{world, &strategy, {}};
    BranchOutcome outcome = run_algorithm(session, algorithm, budget);
    outcome.branch_id = strategy.taken();

    for (std::size_t k = outcome.branch_id.size(); k-- > strategy.forced_count();) {
      std::vector<Answer> flipped(outcome.branch_id.begin(),
                                  outcome.branch_id.begin() +
                                      static_cast<std::ptrdiff_t>(k));
      flipped.push_back(Answer::Yes);
      pending.push_back(std::move(flipped));
    }
    sink(outcome);
  }
}

std::vector<BranchOutcome> explore_branches(const World& world, Algorithm algorithm,
                                            std::optional<std::size_t> budget) {
  std::vector<BranchOutcome> outcomes;
  explore_branches(world, algorithm, budget,
                   [&](const BranchOutcome& outcome) { outcomes.push_back(outcome); });
  return outcomes;
}

BranchOutcome replay_branch(const World& world, Algorithm algorithm,
                            std::optional<std::size_t> budget,
                            const std::vector<Answer>& branch_id) {
  Branching strategy(branch_id);
  Session session{world, &strategy, {}};
  BranchOutcome outcome = run_algorithm(session, algorithm, budget);
  outcome.branch_id = strategy.taken();
  if (outcome.branch_id != branch_id) {
    throw Error("branch replay diverged: world " + to_string(world) + ", " +
                std::string(algorithm_name(algorithm)) + ", branch " +
                branch_id_string(branch_id) + " consumed " +
                branch_id_string(outcome.branch_id));
  }
  return outcome;
}

std::string_view failure_kind_name(FailureKind kind) noexcept {
  switch (kind) {
    case FailureKind::Correctness: return "correctness";
    case FailureKind::Bound: return "bound";
    case FailureKind::RoundAudit: return "round_audit";
    case FailureKind::CaseAccounting: return "case_accounting";
  }
  return "?";
}

namespace {

struct WorldFacts {
  std::string text;
  std::vector<std::size_t> knights;
  std::vector<std::size_t> normals;
};

class Checker {
 public:
  explicit Checker(VerificationReport& report) : report_(report) {}

  void check_world(const World& world) {
    facts_.text = to_string(world);
    facts_.knights.clear();
    facts_.normals.clear();
    for (std::size_t i = 0; i < world.size(); ++i) {
      if (world.types[i] == ProcessorType::Knight) facts_.knights.push_back(i);
      if (world.types[i] == ProcessorType::Normal) facts_.normals.push_back(i);
    }

    const std::size_t n = world.size();
    explore_branches(world, Algorithm::LineScan, {}, [&](const BranchOutcome& o) {
      check_trusted(world, o, "line_scan");
      check_bound(o, question_bound(Algorithm::LineScan, n), "line_scan");
    });
    explore_branches(world, Algorithm::FindAllKnights, {}, [&](const BranchOutcome& o) {
      if (o.classified != facts_.knights) {
        fail(o, "find_all_knights", FailureKind::Correctness,
             "knight set mismatch");
      }
      if (o.phase1_questions > question_bound(Algorithm::LineScan, n)) {
        fail(o, "find_all_knights", FailureKind::Bound,
             "phase 1 used " + std::to_string(o.phase1_questions) +
                 " questions, bound " +
                 std::to_string(question_bound(Algorithm::LineScan, n)));
      }
      check_bound(o, question_bound(Algorithm::FindAllKnights, n), "find_all_knights");
    });
    explore_branches(world, Algorithm::FindReliablePairing, {},
                     [&](const BranchOutcome& o) {
                       check_trusted(world, o, "find_reliable_pairing");
                       check_bound(o, question_bound(Algorithm::FindReliablePairing, n),
                                   "find_reliable_pairing");
                       check_rounds(o);
                     });

    const std::size_t true_count = facts_.normals.size();
    check_identify(world, true_count, "identify_normals[budget=true_count]");
    check_identify(world, default_normal_budget(n), "identify_normals[budget=default]");
  }

 private:
  void check_identify(const World& world, std::size_t budget, const std::string& label) {
    explore_branches(world, Algorithm::IdentifyNormals, budget,
                     [&](const BranchOutcome& o) {
                       if (o.classified != facts_.normals) {
                         fail(o, label, FailureKind::Correctness,
                              "normal set mismatch");
                       }
                       check_bound(o, question_bound(Algorithm::IdentifyNormals,
                                                     world.size()),
                                   label);
                       check_cases(o, label);
                     });
  }

  void check_trusted(const World& world, const BranchOutcome& o, const std::string& label) {
    if (!o.trusted.has_value() || !reliable(world.types[*o.trusted])) {
      fail(o, label, FailureKind::Correctness, "returned processor is not reliable");
    }
  }

  void check_bound(const BranchOutcome& o, std::size_t bound, const std::string& label) {
    ++report_.branches_checked;
    if (o.questions > bound) {
      fail(o, label, FailureKind::Bound,
           "used " + std::to_string(o.questions) + " questions, bound " +
               std::to_string(bound));
    }
  }

  void check_rounds(const BranchOutcome& o) {
    for (std::size_t i = 0; i < o.rounds.size(); ++i) {
      const RoundAudit& r = o.rounds[i];
      const auto round_fail = [&](const std::string& claim) {
        fail(o, "find_reliable_pairing", FailureKind::RoundAudit,
             "round " + std::to_string(i) + ": " + claim);
      };
      if (r.reliable_step2 < r.pairs_rr) {
        round_fail("reliable survivors of step 2 below the (R,R) pair count");
      }
      if (r.normal_step2 > r.pairs_nn) {
        round_fail("Normal survivors of step 2 above the (N,N) pair count");
      }
      if (r.reliable_before > r.normal_before &&
          r.reliable_step3 <= r.normal_step3) {
        round_fail("reliable majority not preserved");
      }
      if (r.unpaired_type.has_value() &&
          (r.reliable_step3 + r.normal_step3) % 2 == 0) {
        round_fail("even survivor count despite an unpaired member");
      }
    }
  }

  void check_cases(const BranchOutcome& o, const std::string& label) {
    for (std::size_t i = 0; i < o.case_trace.size(); ++i) {
      const CaseRecord& c = o.case_trace[i];
      const auto case_fail = [&](FailureKind kind, const std::string& claim) {
        fail(o, label, kind, "probe " + std::to_string(i) + ": " + claim);
      };
      if (c.stop == ProbeStop::BudgetNos) {
        if (c.no_set.size() != c.budget) {
          case_fail(FailureKind::Correctness,
                    "budget-No stop with " + std::to_string(c.no_set.size()) +
                        " No answers, budget " + std::to_string(c.budget));
        }
        if (c.questions_in_call > c.members_count + c.budget) {
          case_fail(FailureKind::CaseAccounting,
                    "budget-No stop used " + std::to_string(c.questions_in_call) +
                        " questions on " + std::to_string(c.members_count) +
                        " members with budget " + std::to_string(c.budget));
        }
      } else {
        if (c.yes_set.size() != c.no_set.size() + 1) {
          case_fail(FailureKind::Correctness,
                    "yes-majority stop with |yes| = " +
                        std::to_string(c.yes_set.size()) + ", |no| = " +
                        std::to_string(c.no_set.size()));
        }
      }
    }
  }

  void fail(const BranchOutcome& o, const std::string& label, FailureKind kind,
            const std::string& claim) {
    report_.failures.push_back(VerificationFailure{
        facts_.text, label, branch_id_string(o.branch_id), kind, claim});
  }

  VerificationReport& report_;
  WorldFacts facts_;
};

}  // namespace

VerificationReport exhaustive_check(std::size_t n_max) {
  VerificationReport report;
  report.n_min = 1;
  report.n_max = n_max;
  Checker checker(report);
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (const World& world : enumerate_worlds(n, /*require_majority=*/true)) {
      ++report.worlds_checked;
      checker.check_world(world);
    }
  }
  return report;
}

}  // namespace ngpsim

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ngpsim/diagnosis.hpp"
#include "ngpsim/world.hpp"

namespace ngpsim {

// Number of set bits; the pairing tournament's question count is n minus
// this.
int popcount(std::uint64_t value) noexcept;

enum class Algorithm : unsigned char {
  LineScan,
  FindAllKnights,
  FindReliablePairing,
  IdentifyNormals,
};

std::string_view algorithm_name(Algorithm algorithm) noexcept;
Algorithm algorithm_from_name(std::string_view name);  // throws ConfigError

// Worst-case question count for a run on n processors:
//   line_scan             n - 1
//   find_all_knights      2n - 1
//   find_reliable_pairing n - popcount(n)
//   identify_normals      ceil(3n/2) - 1
std::size_t question_bound(Algorithm algorithm, std::size_t n);

// All 3^n type assignments in lexicographic order (index 0 most
// significant, Knight < Knave < Normal), optionally filtered to worlds
// satisfying the reliable-majority precondition.
std::vector<World> enumerate_worlds(std::size_t n, bool require_majority);

// One complete run of an algorithm under one resolution of every Normal's
// answers. branch_id holds exactly the answers given by Normal respondents,
// in question order; worlds without Normals have a single branch.
struct BranchOutcome {
  Algorithm algorithm;
  std::vector<Answer> branch_id;
  std::size_t questions = 0;
  std::optional<std::size_t> trusted;   // line_scan / pairing / knights phase 1
  std::vector<std::size_t> classified;  // knight set or Normal set
  std::size_t phase1_questions = 0;     // find_all_knights only
  std::vector<std::size_t> potentials;  // line_scan only
  std::vector<RoundAudit> rounds;       // find_reliable_pairing only
  std::vector<CaseRecord> case_trace;   // identify_normals only
  Transcript transcript;
};

std::string branch_id_string(const std::vector<Answer>& branch_id);

// Runs one algorithm to completion in an existing session. For
// identify_normals the member set is all of the world and the budget
// defaults to default_normal_budget(n).
BranchOutcome run_algorithm(Session& session, Algorithm algorithm,
                            std::optional<std::size_t> budget = {});

// Runs the algorithm under every resolution of Normal answers: whenever a
// Normal is questioned the execution forks into a No and a Yes
// continuation. Forking happens through the strategy hook, so the explored
// code is the production code. Enumeration is depth-first, No before Yes.
void explore_branches(const World& world, Algorithm algorithm,
                      std::optional<std::size_t> budget,
                      const std::function<void(const BranchOutcome&)>& sink);

std::vector<BranchOutcome> explore_branches(const World& world, Algorithm algorithm,
                                            std::optional<std::size_t> budget = {});

// Reruns one branch by forcing its recorded answers. Throws Error if the
// run does not consume the branch_id exactly (which would mean the
// algorithms are not deterministic given the Normal answers).
BranchOutcome replay_branch(const World& world, Algorithm algorithm,
                            std::optional<std::size_t> budget,
                            const std::vector<Answer>& branch_id);

enum class FailureKind : unsigned char {
  Correctness,     // wrong classification or a Normal returned as trusted
  Bound,           // question count above the algorithm's bound
  RoundAudit,      // a pairing-round bookkeeping inequality failed
  CaseAccounting,  // a probe call's question accounting failed
};

std::string_view failure_kind_name(FailureKind kind) noexcept;

struct VerificationFailure {
  std::string world;
  std::string algorithm;
  std::string branch_id;
  FailureKind kind;
  std::string claim;
};

struct VerificationReport {
  std::size_t n_min = 1;
  std::size_t n_max = 0;
  std::size_t worlds_checked = 0;
  std::size_t branches_checked = 0;
  std::vector<VerificationFailure> failures;

  bool ok() const noexcept { return failures.empty(); }
};

// For every n <= n_max, every world satisfying the majority precondition
// and every Normal answer branch, checks:
//   - line_scan and find_reliable_pairing return a non-Normal processor,
//   - find_all_knights returns exactly the Knight set,
//   - identify_normals returns exactly the Normal set, both with the true
//     Normal count as budget and with the default budget,
//   - every run stays within its question bound (phase 1 included),
//   - every pairing-round audit inequality and parity rule holds,
//   - every probe record is well-formed and within its accounting bound.
// Failures are data, not errors; each carries a replayable branch_id.
VerificationReport exhaustive_check(std::size_t n_max);

}  // namespace ngpsim

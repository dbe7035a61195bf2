#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ngpsim/verifier.hpp"

using namespace ngpsim;

TEST_CASE("popcount") {
  CHECK(popcount(0) == 0);
  CHECK(popcount(1) == 1);
  CHECK(popcount(6) == 2);
  CHECK(popcount(9) == 2);
  CHECK(popcount(100) == 3);
  CHECK(popcount(~0ULL) == 64);
}

TEST_CASE("algorithm names round-trip") {
  for (Algorithm a : {Algorithm::LineScan, Algorithm::FindAllKnights,
                      Algorithm::FindReliablePairing, Algorithm::IdentifyNormals}) {
    CHECK(algorithm_from_name(algorithm_name(a)) == a);
  }
  CHECK_THROWS_AS(algorithm_from_name("bogus"), ConfigError);
}

TEST_CASE("question bounds") {
  CHECK(question_bound(Algorithm::LineScan, 1) == 0);
  CHECK(question_bound(Algorithm::LineScan, 8) == 7);
  CHECK(question_bound(Algorithm::FindAllKnights, 1) == 1);
  CHECK(question_bound(Algorithm::FindAllKnights, 9) == 17);
  CHECK(question_bound(Algorithm::FindReliablePairing, 6) == 4);
  CHECK(question_bound(Algorithm::FindReliablePairing, 100) == 97);
  // Largest integer strictly below 3n/2.
  CHECK(question_bound(Algorithm::IdentifyNormals, 3) == 4);
  CHECK(question_bound(Algorithm::IdentifyNormals, 4) == 5);
  CHECK(question_bound(Algorithm::IdentifyNormals, 7) == 10);
}

TEST_CASE("world enumeration counts and order") {
  CHECK(enumerate_worlds(1, false).size() == 3);
  CHECK(enumerate_worlds(2, false).size() == 9);
  CHECK(enumerate_worlds(3, false).size() == 27);

  const std::vector<World> w1 = enumerate_worlds(1, true);
  REQUIRE(w1.size() == 2);
  CHECK(to_string(w1[0]) == "K");
  CHECK(to_string(w1[1]) == "V");

  CHECK(enumerate_worlds(2, true).size() == 4);

  const std::vector<World> w3 = enumerate_worlds(3, true);
  CHECK(w3.size() == 20);  // cross-check: C(3,0)*8 + C(3,1)*4 = 8 + 12
  CHECK(to_string(w3.front()) == "KKK");
  CHECK(to_string(w3.back()) == "NVV");
  for (const World& w : w3) {
    CHECK(census(w).majority_ok);
  }
}

TEST_CASE("worlds without Normals have exactly one branch") {
  for (Algorithm a : {Algorithm::LineScan, Algorithm::FindAllKnights,
                      Algorithm::FindReliablePairing, Algorithm::IdentifyNormals}) {
    const auto branches = explore_branches(parse_world("KV"), a);
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].branch_id.empty());
  }
}

TEST_CASE("branch ids are distinct and match Normal-directed questions") {
  const World world = parse_world("NKKVN");
  for (Algorithm a : {Algorithm::LineScan, Algorithm::FindAllKnights,
                      Algorithm::FindReliablePairing, Algorithm::IdentifyNormals}) {
    std::set<std::string> seen;
    for (const BranchOutcome& o : explore_branches(world, a)) {
      CHECK(seen.insert(branch_id_string(o.branch_id)).second);
      std::size_t normal_answers = 0;
      for (const TranscriptEntry& e : o.transcript.entries) {
        if (world.types[e.respondent] == ProcessorType::Normal) ++normal_answers;
      }
      CHECK(o.branch_id.size() == normal_answers);
    }
    CHECK(seen.size() >= 1);
  }
}

TEST_CASE("replaying a branch reproduces its outcome") {
  const World world = parse_world("NKVKN");
  for (Algorithm a : {Algorithm::LineScan, Algorithm::FindAllKnights,
                      Algorithm::FindReliablePairing, Algorithm::IdentifyNormals}) {
    for (const BranchOutcome& o : explore_branches(world, a)) {
      const BranchOutcome replay = replay_branch(world, a, {}, o.branch_id);
      CHECK(replay.questions == o.questions);
      CHECK(replay.trusted == o.trusted);
      CHECK(replay.classified == o.classified);
      REQUIRE(replay.transcript.entries.size() == o.transcript.entries.size());
      for (std::size_t i = 0; i < o.transcript.entries.size(); ++i) {
        CHECK(replay.transcript.entries[i].respondent == o.transcript.entries[i].respondent);
        CHECK(replay.transcript.entries[i].answer == o.transcript.entries[i].answer);
      }
    }
  }
}

TEST_CASE("replay rejects an overlong branch id") {
  // KV runs consult no Normal, so any nonempty forced branch diverges.
  CHECK_THROWS_AS(replay_branch(parse_world("KV"), Algorithm::LineScan, {},
                                {Answer::Yes}),
                  Error);
}

TEST_CASE("pairing branch exploration matches the hand-computed NKV tree") {
  const auto branches = explore_branches(parse_world("NKV"), Algorithm::FindReliablePairing);
  REQUIRE(branches.size() == 2);
  CHECK(branches[0].trusted == 2);
  CHECK(branches[1].trusted == 1);
}

TEST_CASE("exhaustive check passes for one processor") {
  const VerificationReport r = exhaustive_check(1);
  CHECK(r.ok());
  CHECK(r.worlds_checked == 2);
  // One branch per algorithm per world; identify_normals is driven twice
  // (true-count budget and default budget).
  CHECK(r.branches_checked == 10);
}

TEST_CASE("exhaustive check passes up to three processors") {
  const VerificationReport r = exhaustive_check(3);
  CHECK(r.ok());
  CHECK(r.worlds_checked == 26);  // 2 + 4 + 20
  CHECK(r.branches_checked > 26);
  CHECK(r.n_min == 1);
  CHECK(r.n_max == 3);
  CHECK(r.failures.empty());
}

TEST_CASE("per-size tightness witness exists") {
  // On the all-Knight world the pairing tournament meets its bound exactly.
  for (std::size_t n = 1; n <= 8; ++n) {
    World world;
    world.types.assign(n, ProcessorType::Knight);
    const auto branches = explore_branches(world, Algorithm::FindReliablePairing);
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].questions == question_bound(Algorithm::FindReliablePairing, n));
  }
}

TEST_CASE("failure kinds have stable names") {
  CHECK(failure_kind_name(FailureKind::Correctness) == "correctness");
  CHECK(failure_kind_name(FailureKind::Bound) == "bound");
  CHECK(failure_kind_name(FailureKind::RoundAudit) == "round_audit");
  CHECK(failure_kind_name(FailureKind::CaseAccounting) == "case_accounting");
}

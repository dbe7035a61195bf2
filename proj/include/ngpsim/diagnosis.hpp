#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ngpsim/interrogation.hpp"
#include "ngpsim/world.hpp"

namespace ngpsim {

// One algorithm run: a world, an answer policy for its Normals, and the
// transcript the run builds up. Sessions are independent; a run owns its
// session exclusively.
struct Session {
  World world;
  NormalStrategy* strategy;
  Transcript transcript;

  Answer ask(std::size_t respondent, PredicateKind kind, std::size_t target) {
    return respond(world, *strategy, transcript, respondent,
                   Question{Predicate{kind, target}});
  }
};

struct LineScanReport {
  std::size_t trusted = 0;
  std::size_t questions = 0;
  // Value of (live line length - 1 - cursor) before each question. Strictly
  // decreasing, by exactly 1 on a No; this is what caps the scan at n-1.
  std::vector<std::size_t> potentials;
};

struct KnightReport {
  std::size_t trusted = 0;  // the Knight-or-Knave found by the line scan
  std::vector<std::size_t> knights;
  std::size_t phase1_questions = 0;  // <= n-1 under the majority precondition
  std::size_t total_questions = 0;   // <= 2n-1 under the majority precondition
};

// Ground-truth bookkeeping for one elimination round, recorded so the
// round's majority-preservation argument can be audited after the fact.
// The algorithm itself never reads these fields.
struct RoundAudit {
  std::size_t reliable_before = 0;
  std::size_t normal_before = 0;
  // Ordered-pair census by (first, second) reliability.
  std::size_t pairs_rr = 0;
  std::size_t pairs_rn = 0;
  std::size_t pairs_nr = 0;
  std::size_t pairs_nn = 0;
  std::optional<ProcessorType> unpaired_type;
  std::size_t reliable_step2 = 0;
  std::size_t normal_step2 = 0;
  std::size_t reliable_step3 = 0;
  std::size_t normal_step3 = 0;
  bool kept_unpaired = false;
};

struct PairingReport {
  std::size_t trusted = 0;
  std::size_t questions = 0;  // <= n - popcount(n) under the precondition
  std::vector<RoundAudit> rounds;
};

enum class ProbeStop : unsigned char {
  BudgetNos,    // the probe scan saw budget-many No answers; probe is reliable
  YesMajority,  // Yes answers outnumbered No answers; recurse on the rest
};

// Bookkeeping for one probe of identify_normals (one recursion level).
struct CaseRecord {
  std::size_t probe = 0;               // the processor everyone is asked about
  std::vector<std::size_t> yes_set;    // answered "probe is Normal"
  std::vector<std::size_t> no_set;     // answered "probe is not Normal"
  ProbeStop stop = ProbeStop::BudgetNos;
  std::optional<std::size_t> witness;  // trusted member used to settle the probe
  std::size_t members_count = 0;       // size of this call's member set
  std::size_t budget = 0;              // this call's Normal budget
  std::size_t questions_in_call = 0;   // excludes the recursive sub-call
};

struct NormalReport {
  std::vector<std::size_t> normals;
  std::size_t total_questions = 0;  // <= ceil(3n/2)-1 under the preconditions
  std::vector<CaseRecord> case_trace;  // innermost call first
};

// Walks a line of processors asking each whether the next in line is
// Normal. A Yes removes both (at least one of the two really is Normal), a
// No advances the cursor. Under the majority precondition the survivor at
// the end of the line is a Knight or a Knave, reached in at most n-1
// questions. With the precondition violated the result may be Normal and,
// if the line empties, falls back to the respondent of the last question.
LineScanReport line_scan(Session& session);

// Asks the trusted processor one question per target; returns the targets
// whose predicate is true, in the order given. Meaningless if trusted is
// Normal (not detectable).
std::vector<std::size_t> classify_all(Session& session, std::size_t trusted,
                                      std::span<const std::size_t> targets,
                                      PredicateKind kind);

// line_scan, then one is-a-Knight question per processor (including the
// trusted one itself) answered by the trusted processor.
KnightReport find_all_knights(Session& session);

// One elimination round: pair consecutive survivors, ask each pair's first
// member whether the second is reliable; Yes keeps only the second, No
// removes both. A leftover unpaired member is kept iff that makes the
// survivor count odd. Uses floor(|survivors|/2) questions and preserves the
// reliable majority.
std::pair<std::vector<std::size_t>, RoundAudit> pairing_round(
    Session& session, const std::vector<std::size_t>& survivors);

// Repeats pairing_round until a single survivor remains; that survivor is
// reliable under the majority precondition. Question count is at most
// n - popcount(n), with equality on an all-Knight world.
PairingReport find_reliable_pairing(Session& session);

// Returns exactly the Normals among members, given an upper bound on how
// many there are (normal_budget < |members|/2 and at least the true count).
// Probes the lowest member: everyone else is asked in ascending order
// whether the probe is Normal, until either budget-many No answers arrive
// (probe is reliable; it then classifies everyone still unknown) or Yes
// answers outnumber No answers (the probe and everyone already asked are
// discarded, the remainder is solved recursively, and a trusted member from
// the remainder settles the discards). Stays under 3|members|/2 questions.
NormalReport identify_normals(Session& session, std::vector<std::size_t> members,
                              std::size_t normal_budget);

// Budget used when a caller knows only that the majority precondition
// holds: the largest value below |members|/2.
std::size_t default_normal_budget(std::size_t member_count);

}  // namespace ngpsim

#include "ngpsim/diagnosis.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace ngpsim {

namespace {

std::size_t count_reliable(const World& world, const std::vector<std::size_t>& members) {
  std::size_t count = 0;
  for (std::size_t m : members) {
    if (reliable(world.types[m])) ++count;
  }
  return count;
}

}  // namespace

LineScanReport line_scan(Session& session) {
  LineScanReport report;
  std::vector<std::size_t> line(session.world.size());
  std::iota(line.begin(), line.end(), std::size_t{0});

  std::size_t cursor = 0;
  const std::size_t start = session.transcript.question_count();
  while (cursor + 1 < line.size()) {
    report.potentials.push_back(line.size() - 1 - cursor);
    const Answer a =
        session.ask(line[cursor], PredicateKind::IsNormal, line[cursor + 1]);
    if (a == Answer::No) {
      ++cursor;
    } else {
      // At least one of the two is Normal: the respondent if it lied, the
      // next in line if it didn't.
      line.erase(line.begin() + static_cast<std::ptrdiff_t>(cursor),
                 line.begin() + static_cast<std::ptrdiff_t>(cursor) + 2);
      if (cursor > 0) --cursor;
    }
  }
  report.questions = session.transcript.question_count() - start;
  if (line.empty()) {
    // Only reachable when the majority precondition is violated; settle on
    // the respondent of the last question so the result stays total.
    report.trusted = session.transcript.entries.back().respondent;
  } else {
    report.trusted = line[cursor];
  }
  return report;
}

std::vector<std::size_t> classify_all(Session& session, std::size_t trusted,
                                      std::span<const std::size_t> targets,
                                      PredicateKind kind) {
  std::vector<std::size_t> satisfying;
  for (std::size_t target : targets) {
    if (session.ask(trusted, kind, target) == Answer::Yes) {
      satisfying.push_back(target);
    }
  }
  return satisfying;
}

KnightReport find_all_knights(Session& session) {
  KnightReport report;
  const LineScanReport scan = line_scan(session);
  report.trusted = scan.trusted;
  report.phase1_questions = scan.questions;

  std::vector<std::size_t> everyone(session.world.size());
  std::iota(everyone.begin(), everyone.end(), std::size_t{0});
  report.knights = classify_all(session, scan.trusted, everyone, PredicateKind::IsKnight);
  report.total_questions = scan.questions + everyone.size();
  return report;
}

std::pair<std::vector<std::size_t>, RoundAudit> pairing_round(
    Session& session, const std::vector<std::size_t>& survivors) {
  RoundAudit audit;
  audit.reliable_before = count_reliable(session.world, survivors);
  audit.normal_before = survivors.size() - audit.reliable_before;

  const std::size_t pair_count = survivors.size() / 2;
  std::vector<std::size_t> kept;
  kept.reserve(pair_count + 1);
  for (std::size_t p = 0; p < pair_count; ++p) {
    const std::size_t first = survivors[2 * p];
    const std::size_t second = survivors[2 * p + 1];

    const bool first_reliable = reliable(session.world.types[first]);
    const bool second_reliable = reliable(session.world.types[second]);
    if (first_reliable && second_reliable) ++audit.pairs_rr;
    else if (first_reliable) ++audit.pairs_rn;
    else if (second_reliable) ++audit.pairs_nr;
    else ++audit.pairs_nn;

    const Answer a = session.ask(first, PredicateKind::IsReliable, second);
    if (a == Answer::Yes) {
      kept.push_back(second);
    }
    // No: both members are dropped.
  }

  audit.reliable_step2 = count_reliable(session.world, kept);
  audit.normal_step2 = kept.size() - audit.reliable_step2;
  audit.reliable_step3 = audit.reliable_step2;
  audit.normal_step3 = audit.normal_step2;

  if (survivors.size() % 2 == 1) {
    const std::size_t unpaired = survivors.back();
    audit.unpaired_type = session.world.types[unpaired];
    // Keep the unpaired member only when that leaves an odd survivor count.
    if (kept.size() % 2 == 0) {
      kept.push_back(unpaired);
      audit.kept_unpaired = true;
      if (reliable(*audit.unpaired_type)) ++audit.reliable_step3;
      else ++audit.normal_step3;
    }
  }
  return {std::move(kept), audit};
}

PairingReport find_reliable_pairing(Session& session) {
  PairingReport report;
  std::vector<std::size_t> survivors(session.world.size());
  std::iota(survivors.begin(), survivors.end(), std::size_t{0});

  const std::size_t start = session.transcript.question_count();
  while (survivors.size() > 1) {
    auto [next, audit] = pairing_round(session, survivors);
    report.rounds.push_back(audit);
    survivors = std::move(next);
  }
  report.questions = session.transcript.question_count() - start;
  if (survivors.empty()) {
    // Violated-precondition fallback, as in line_scan.
    report.trusted = session.transcript.entries.back().respondent;
  } else {
    report.trusted = survivors.front();
  }
  return report;
}

std::size_t default_normal_budget(std::size_t member_count) {
  return member_count == 0 ? 0 : (member_count - 1) / 2;
}

namespace {

// One probe level. Appends this call's record (and the records of any
// recursive call, innermost first) to trace, adds the Normals it finds to
// normals, and returns the number of questions asked including recursion.
std::size_t identify_rec(Session& session, const std::vector<std::size_t>& members,
                         std::size_t budget, std::vector<CaseRecord>& trace,
                         std::vector<std::size_t>& normals) {
  if (budget == 0 || members.empty()) {
    return 0;
  }

  CaseRecord record;
  record.probe = members.front();
  record.members_count = members.size();
  record.budget = budget;

  // Scan: ask every other member, in ascending order, whether the probe is
  // Normal. Stop at budget-many No answers (the probe cannot be Normal:
  // with at most budget Normals including the probe, some No came from a
  // reliable member) or as soon as Yes answers outnumber No answers.
  bool yes_majority = false;
  std::size_t scan_questions = 0;
  for (std::size_t k = 1; k < members.size(); ++k) {
    const Answer a = session.ask(members[k], PredicateKind::IsNormal, record.probe);
    ++scan_questions;
    if (a == Answer::Yes) {
      record.yes_set.push_back(members[k]);
      if (record.yes_set.size() > record.no_set.size()) {
        yes_majority = true;
        break;
      }
    } else {
      record.no_set.push_back(members[k]);
      if (record.no_set.size() == budget) {
        break;
      }
    }
  }
  // A scan that runs out of members without stopping is only possible when
  // budget >= |members|/2; treat it like the budget-No stop so behavior
  // stays total.

  if (!yes_majority) {
    record.stop = ProbeStop::BudgetNos;
    // The probe is reliable, and with the probe known non-Normal every Yes
    // came from a Normal. The probe then classifies everyone still unknown
    // (the No answerers included; a No says nothing about its speaker).
    normals.insert(normals.end(), record.yes_set.begin(), record.yes_set.end());
    std::size_t followup_questions = 0;
    for (std::size_t k = 1; k < members.size(); ++k) {
      const std::size_t m = members[k];
      if (std::find(record.yes_set.begin(), record.yes_set.end(), m) !=
          record.yes_set.end()) {
        continue;  // already classified Normal
      }
      const Answer a = session.ask(record.probe, PredicateKind::IsReliable, m);
      ++followup_questions;
      if (a == Answer::No) {
        normals.push_back(m);
      }
    }
    record.questions_in_call = scan_questions + followup_questions;
    trace.push_back(record);
    return record.questions_in_call;
  }

  record.stop = ProbeStop::YesMajority;

  // Everyone touched so far is set aside: at least |no_set|+1 of them are
  // Normal, so the remainder keeps a strict reliable majority and a reduced
  // budget.
  const std::size_t touched = record.yes_set.size() + record.no_set.size() + 1;
  std::vector<std::size_t> remainder;
  remainder.reserve(members.size() - touched);
  for (std::size_t k = 1 + scan_questions; k < members.size(); ++k) {
    remainder.push_back(members[k]);
  }

  std::size_t subtotal = 0;
  const std::size_t normals_before_rec = normals.size();
  if (!remainder.empty()) {
    const std::size_t reduced =
        std::min(budget - (record.no_set.size() + 1), default_normal_budget(remainder.size()));
    subtotal = identify_rec(session, remainder, reduced, trace, normals);
  }

  // Lowest member of the remainder not classified Normal serves as the
  // trusted witness.
  std::optional<std::size_t> witness;
  for (std::size_t m : remainder) {
    if (std::find(normals.begin() + static_cast<std::ptrdiff_t>(normals_before_rec),
                  normals.end(), m) == normals.end()) {
      witness = m;
      break;
    }
  }

  std::size_t witness_questions = 0;
  if (!witness.has_value()) {
    // No trusted member left: the majority precondition was violated.
    // Deem the Yes answerers Normal and stop.
    normals.insert(normals.end(), record.yes_set.begin(), record.yes_set.end());
  } else {
    record.witness = witness;
    const Answer probe_is_normal =
        session.ask(*witness, PredicateKind::IsNormal, record.probe);
    ++witness_questions;
    if (probe_is_normal == Answer::Yes) {
      // Probe is Normal, so every reliable member would have said Yes: the
      // No answerers are all Normal. The Yes answerers are settled one by
      // one.
      normals.push_back(record.probe);
      normals.insert(normals.end(), record.no_set.begin(), record.no_set.end());
      for (std::size_t m : record.yes_set) {
        const Answer a = session.ask(*witness, PredicateKind::IsNormal, m);
        ++witness_questions;
        if (a == Answer::Yes) normals.push_back(m);
      }
    } else {
      // Probe is reliable, so a truthful answer was No: the Yes answerers
      // are all Normal and the No answerers are settled one by one.
      normals.insert(normals.end(), record.yes_set.begin(), record.yes_set.end());
      for (std::size_t m : record.no_set) {
        const Answer a = session.ask(*witness, PredicateKind::IsNormal, m);
        ++witness_questions;
        if (a == Answer::Yes) normals.push_back(m);
      }
    }
  }

  record.questions_in_call = scan_questions + witness_questions;
  trace.push_back(record);
  return record.questions_in_call + subtotal;
}

}  // namespace

NormalReport identify_normals(Session& session, std::vector<std::size_t> members,
                              std::size_t normal_budget) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  NormalReport report;
  report.total_questions =
      identify_rec(session, members, normal_budget, report.case_trace, report.normals);
  std::sort(report.normals.begin(), report.normals.end());
  return report;
}

}  // namespace ngpsim

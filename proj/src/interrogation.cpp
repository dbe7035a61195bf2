#include "ngpsim/interrogation.hpp"

#include <stdexcept>

namespace ngpsim {

std::string_view predicate_kind_name(PredicateKind kind) noexcept {
  switch (kind) {
    case PredicateKind::IsNormal: return "is_normal";
    case PredicateKind::IsKnight: return "is_knight";
    case PredicateKind::IsReliable: return "is_reliable";
  }
  return "?";
}

std::string to_debug_string(const Question& question) {
  const Predicate& p = question.predicate;
  std::string claim = "processor " + std::to_string(p.target);
  switch (p.kind) {
    case PredicateKind::IsNormal: claim += " is Normal"; break;
    case PredicateKind::IsKnight: claim += " is a Knight"; break;
    case PredicateKind::IsReliable: claim += " is a Knight or a Knave"; break;
  }
  return "Is it true that " + claim + " if and only if you are a Knight?";
}

Answer Scripted::answer(const Transcript&, std::size_t, const Question&) {
  if (next_ >= script_.size()) {
    throw ScriptExhausted("scripted strategy: script exhausted after " +
                          std::to_string(script_.size()) + " answers");
  }
  return script_[next_++];
}

bool predicate_truth(const World& world, const Predicate& predicate) {
  if (predicate.target >= world.size()) {
    throw std::out_of_range("predicate target " + std::to_string(predicate.target) +
                            " out of range for world of size " +
                            std::to_string(world.size()));
  }
  const ProcessorType t = world.types[predicate.target];
  switch (predicate.kind) {
    case PredicateKind::IsNormal: return t == ProcessorType::Normal;
    case PredicateKind::IsKnight: return t == ProcessorType::Knight;
    case PredicateKind::IsReliable: return reliable(t);
  }
  return false;
}

Answer respond(const World& world, NormalStrategy& strategy, Transcript& transcript,
               std::size_t respondent, const Question& question) {
  if (respondent >= world.size()) {
    throw std::out_of_range("respondent " + std::to_string(respondent) +
                            " out of range for world of size " +
                            std::to_string(world.size()));
  }
  if (question.predicate.target >= world.size()) {
    throw std::out_of_range("question target " +
                            std::to_string(question.predicate.target) +
                            " out of range for world of size " +
                            std::to_string(world.size()));
  }

  const ProcessorType type = world.types[respondent];
  Answer answer;
  if (type == ProcessorType::Normal) {
    answer = strategy.answer(transcript, respondent, question);
  } else {
    // Truth of the biconditional "<predicate> iff you are a Knight" as the
    // respondent would evaluate it; a Knight affirms it, a Knave denies it.
    // Either way the answer collapses to the predicate's truth value.
    const bool truth = predicate_truth(world, question.predicate);
    const bool biconditional = truth == (type == ProcessorType::Knight);
    const bool yes = type == ProcessorType::Knight ? biconditional : !biconditional;
    answer = yes ? Answer::Yes : Answer::No;
  }
  transcript.entries.push_back(
      TranscriptEntry{transcript.entries.size(), respondent, question, answer});
  return answer;
}

}  // namespace ngpsim

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ngpsim/errors.hpp"
#include "ngpsim/world.hpp"

namespace ngpsim {

enum class PredicateKind : unsigned char { IsNormal, IsKnight, IsReliable };

std::string_view predicate_kind_name(PredicateKind kind) noexcept;  // "is_normal" etc.

// A yes/no claim about one processor.
struct Predicate {
  PredicateKind kind;
  std::size_t target;
};

// Every question put to a processor is the self-referential wrapping of a
// predicate: "Is it true that <predicate> if and only if you are a Knight?"
// A reliable respondent's answer then equals the predicate's truth value,
// whether the respondent is a Knight or a Knave.
struct Question {
  Predicate predicate;
};

enum class Answer : unsigned char { No = 0, Yes = 1 };

constexpr char answer_letter(Answer a) noexcept { return a == Answer::Yes ? 'Y' : 'N'; }

// English rendering, for traces only.
std::string to_debug_string(const Question& question);

struct TranscriptEntry {
  std::size_t index;  // consecutive from 0
  std::size_t respondent;
  Question question;
  Answer answer;
};

// Ordered record of every question asked in one session.
struct Transcript {
  std::vector<TranscriptEntry> entries;

  std::size_t question_count() const noexcept { return entries.size(); }
};

// Answer policy for Normal respondents. The policy sees the transcript so
// far, the respondent and the question, but never the world's types: the
// adversary is adaptive, not clairvoyant. Strategies carry per-session
// state and are not shared between sessions.
class NormalStrategy {
 public:
  virtual ~NormalStrategy() = default;
  virtual Answer answer(const Transcript& history, std::size_t respondent,
                        const Question& question) = 0;
};

class AlwaysYes final : public NormalStrategy {
 public:
  Answer answer(const Transcript&, std::size_t, const Question&) override {
    return Answer::Yes;
  }
};

class AlwaysNo final : public NormalStrategy {
 public:
  Answer answer(const Transcript&, std::size_t, const Question&) override {
    return Answer::No;
  }
};

// One global script per run, consumed in order regardless of which Normal
// answers. Throws ScriptExhausted when the script runs out.
class Scripted final : public NormalStrategy {
 public:
  explicit Scripted(std::vector<Answer> script) : script_(std::move(script)) {}

  Answer answer(const Transcript&, std::size_t, const Question&) override;

 private:
  std::vector<Answer> script_;
  std::size_t next_ = 0;
};

// Deterministic stream of answers from a seeded std::mt19937_64.
class SeededRandom final : public NormalStrategy {
 public:
  explicit SeededRandom(std::uint64_t seed) : rng_(seed) {}

  Answer answer(const Transcript&, std::size_t, const Question&) override {
    return (rng_() >> 63) != 0 ? Answer::Yes : Answer::No;
  }

 private:
  std::mt19937_64 rng_;
};

// Verifier hook realizing "explore both answers": replays a forced prefix,
// then answers No at every further choice point while recording the full
// answer sequence taken. The branch explorer reruns the algorithm with
// flipped prefixes to cover the whole answer tree.
class Branching final : public NormalStrategy {
 public:
  Branching() = default;
  explicit Branching(std::vector<Answer> forced) : forced_(std::move(forced)) {}

  Answer answer(const Transcript&, std::size_t, const Question&) override {
    const Answer a =
        taken_.size() < forced_.size() ? forced_[taken_.size()] : Answer::No;
    taken_.push_back(a);
    return a;
  }

  const std::vector<Answer>& taken() const noexcept { return taken_; }
  std::size_t forced_count() const noexcept { return forced_.size(); }

 private:
  std::vector<Answer> forced_;
  std::vector<Answer> taken_;
};

// Truth value of a predicate in a world. Throws std::out_of_range for a bad
// target index.
bool predicate_truth(const World& world, const Predicate& predicate);

// Puts the question to a processor and appends the exchange to the
// transcript. Knights and Knaves answer by the biconditional semantics (so
// their answer equals the predicate's truth); Normals answer per strategy.
Answer respond(const World& world, NormalStrategy& strategy, Transcript& transcript,
               std::size_t respondent, const Question& question);

}  // namespace ngpsim

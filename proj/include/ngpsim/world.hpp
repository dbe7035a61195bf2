#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ngpsim/errors.hpp"

namespace ngpsim {

// Knights always answer truthfully, Knaves always answer falsely, and
// Normals answer arbitrarily. Knights and Knaves are both "reliable":
// a self-referential question extracts true information from either.
enum class ProcessorType : unsigned char { Knight, Knave, Normal };

constexpr bool reliable(ProcessorType t) noexcept {
  return t == ProcessorType::Knight || t == ProcessorType::Knave;
}

// Letter encoding used by world strings: K=Knight, V=Knave, N=Normal.
char type_letter(ProcessorType t) noexcept;

// Full-word name ("knight", "knave", "normal"), used in JSON and logs.
std::string_view type_name(ProcessorType t) noexcept;

// Ground-truth assignment of types to processors. The index is the
// processor's identity and also its initial position for the line scan.
// Immutable after construction; safe to share across threads.
struct World {
  std::vector<ProcessorType> types;

  std::size_t size() const noexcept { return types.size(); }
  ProcessorType type_of(std::size_t index) const { return types.at(index); }
};

struct Census {
  std::size_t knights = 0;
  std::size_t knaves = 0;
  std::size_t normals = 0;
  // Strictly fewer than half the processors are Normal. This is the
  // precondition of every diagnosis algorithm.
  bool majority_ok = false;
};

// Parses a K/V/N string, one character per processor. Throws ParseError on
// an empty string or any character outside {K,V,N}.
World parse_world(std::string_view text);

// Inverse of parse_world.
std::string to_string(const World& world);

Census census(const World& world);

}  // namespace ngpsim

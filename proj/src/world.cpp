#include "ngpsim/world.hpp"

namespace ngpsim {

char type_letter(ProcessorType t) noexcept {
  switch (t) {
    case ProcessorType::Knight: return 'K';
    case ProcessorType::Knave: return 'V';
    case ProcessorType::Normal: return 'N';
  }
  return '?';
}

std::string_view type_name(ProcessorType t) noexcept {
  switch (t) {
    case ProcessorType::Knight: return "knight";
    case ProcessorType::Knave: return "knave";
    case ProcessorType::Normal: return "normal";
  }
  return "?";
}

World parse_world(std::string_view text) {
  if (text.empty()) {
    throw ParseError("world string: empty", 0);
  }
  World world;
  world.types.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'K': world.types.push_back(ProcessorType::Knight); break;
      case 'V': world.types.push_back(ProcessorType::Knave); break;
      case 'N': world.types.push_back(ProcessorType::Normal); break;
      default:
        throw ParseError("world string: invalid character '" +
                             std::string(1, text[i]) + "' at position " +
                             std::to_string(i) + " (expected K, V or N)",
                         i);
    }
  }
  return world;
}

std::string to_string(const World& world) {
  std::string out;
  out.reserve(world.size());
  for (ProcessorType t : world.types) {
    out.push_back(type_letter(t));
  }
  return out;
}

Census census(const World& world) {
  Census c;
  for (ProcessorType t : world.types) {
    switch (t) {
      case ProcessorType::Knight: ++c.knights; break;
      case ProcessorType::Knave: ++c.knaves; break;
      case ProcessorType::Normal: ++c.normals; break;
    }
  }
  c.majority_ok = 2 * c.normals < world.size();
  return c;
}

}  // namespace ngpsim

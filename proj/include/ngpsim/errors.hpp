#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ngpsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// World string (K/V/N) rejected; position() is the 0-based offset of the
// offending character, or 0 for an empty input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Bad scenario/CLI configuration: unknown algorithm or strategy name,
// missing script/seed, invalid flag values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A scripted answer stream ran out of answers mid-run.
class ScriptExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace ngpsim

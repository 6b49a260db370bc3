#pragma once

#include <stdexcept>
#include <string>

namespace feq {

/// Malformed or semantically invalid input (bad file, element outside a
/// declared set, partial function where a total one is required, ...).
/// Maps to exit code 2 at the CLI boundary.
class invalid_input : public std::runtime_error {
public:
  explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

/// A stated hypothesis of a theorem does not hold (range condition,
/// lemma hypothesis, empty joint domain...). Maps to exit code 1.
class hypothesis_error : public std::runtime_error {
public:
  explicit hypothesis_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Broken internal invariant. Never expected; signals a bug.
class internal_error : public std::logic_error {
public:
  explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace feq

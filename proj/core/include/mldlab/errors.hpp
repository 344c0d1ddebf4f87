#pragma once

#include <stdexcept>
#include <string>

namespace mldlab {

// Malformed external input (CLI arguments, JSON files, text forms).
// The CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A structural invariant was broken (overlapping boxes, inconsistent
// solver state).  The CLI maps this to exit code 3.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace mldlab

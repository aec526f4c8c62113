#pragma once

#include <stdexcept>
#include <string>

namespace mtype {

// Input text (probability files, family shorthand, CLI values) could not be parsed.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A file could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// An operation refused to run because it would exceed its enumeration or
// materialization guard (e.g. the exhaustive oracle on a too-large instance).
class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mtype

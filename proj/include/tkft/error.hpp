#pragma once

#include <stdexcept>
#include <string>

namespace tkft {

// Base of every error raised by the library. The CLI maps all of these to
// exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text or a value that does not satisfy a type's invariants.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// A structure that cannot be built from the given parts (bad delta table,
// encoding collision, arity mismatch, ...).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// A binary word that is not in the image of an encoding.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// A construction refused because a precondition failed; `certificate` names
// the witness (colliding transitions, colliding windows, ...).
class Refused : public Error {
 public:
  Refused(const std::string& what, std::string certificate)
      : Error(what + ": " + certificate), certificate_(std::move(certificate)) {}
  const std::string& certificate() const { return certificate_; }

 private:
  std::string certificate_;
};

// A point that lies outside every source block of a block map, or a reach
// trajectory that falls outside every tube.
class DomainGap : public Error {
 public:
  using Error::Error;
};

}  // namespace tkft

#pragma once

#include <stdexcept>
#include <string>

namespace sseq {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document. `where` names the JSON path or byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Input violates a mathematical invariant (d∘d ≠ 0, non-associative
/// product, ...). The message always names a concrete witness.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition does not hold for the given arguments.
class PreconditionError : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

/// Two independent computations disagree. Always indicates an engine bug.
class InternalMismatch : public Error {
 public:
  using Error::Error;
};

/// A documented but unimplemented branch was requested.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace sseq

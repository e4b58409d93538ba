#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sfkit {

/// Malformed polynomial text or problem file. `position` is a byte offset
/// into the parsed text (npos when not applicable).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position = std::string::npos)
      : std::runtime_error(position == std::string::npos
                               ? what
                               : what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An operation was called outside its domain: arity mismatch, a base point
/// off the variety, a generically infinite map, a failed action axiom.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A best-effort search (curve finding, certification) came back empty.
class SearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact check rejected a candidate (e.g. a rationalized limit curve is
/// not contained in S_f).
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sfkit

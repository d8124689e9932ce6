#pragma once

#include <stdexcept>
#include <string>

namespace heapgame {

// Base class of every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments: too few heaps, malformed input, unsorted canonical data.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An exact integer computation would leave its representable range.
class ArithmeticRangeError : public Error {
 public:
  using Error::Error;
};

// A state-space enumeration would exceed its configured cap.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// A move violates the rules of the game. `rule()` names the violated rule.
class IllegalMoveError : public Error {
 public:
  explicit IllegalMoveError(std::string rule)
      : Error("illegal move: " + rule), rule_(std::move(rule)) {}

  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string rule_;
};

}  // namespace heapgame

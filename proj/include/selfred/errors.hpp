#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace selfred {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t offset)
      : Error("syntax error at byte " + std::to_string(offset) + ": " + message),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

class NoVariables : public Error {
 public:
  using Error::Error;
};

class IncompleteAssignment : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidBound : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class ConstantOperand : public Error {
 public:
  using Error::Error;
};

/// An oracle returned something its declared capability forbids.
class OracleContractViolation : public Error {
 public:
  using Error::Error;
};

/// A node in a pruned tree grew longer than the root formula.
class EncodingInvariantBroken : public Error {
 public:
  using Error::Error;
};

}  // namespace selfred

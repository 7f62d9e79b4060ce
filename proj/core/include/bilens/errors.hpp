#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bilens {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class NoParse : public Error {
 public:
  using Error::Error;
};

// Raised when a supposedly unambiguous structure admits two parses.
class AmbiguityViolation : public Error {
 public:
  using Error::Error;
};

class NotAStar : public Error {
 public:
  using Error::Error;
};

class BadPath : public Error {
 public:
  using Error::Error;
};

class RuleInapplicable : public Error {
 public:
  using Error::Error;
};

enum class LensErrorKind {
  AmbiguousConcat,
  OverlappingOr,
  AmbiguousIteration,
  ComposeTypeMismatch,
  AmbiguousIdentity,
  UnknownLens,
};

const char* to_string(LensErrorKind kind);

class LensTypeError : public Error {
 public:
  LensTypeError(LensErrorKind kind, const std::string& subterm);
  LensErrorKind kind() const { return kind_; }
  const std::string& subterm() const { return subterm_; }

 private:
  LensErrorKind kind_;
  std::string subterm_;
};

class InputNotInSource : public Error {
 public:
  using Error::Error;
};

class InputNotInTarget : public Error {
 public:
  using Error::Error;
};

class ExampleDoesNotParse : public Error {
 public:
  using Error::Error;
};

class ValidationFailed : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t col, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

}  // namespace bilens

#include "bilens/errors.hpp"

namespace bilens {

UnboundVariable::UnboundVariable(const std::string& name)
    : Error("unbound variable: " + name), name_(name) {}

const char* to_string(LensErrorKind kind) {
  switch (kind) {
    case LensErrorKind::AmbiguousConcat:
      return "AmbiguousConcat";
    case LensErrorKind::OverlappingOr:
      return "OverlappingOr";
    case LensErrorKind::AmbiguousIteration:
      return "AmbiguousIteration";
    case LensErrorKind::ComposeTypeMismatch:
      return "ComposeTypeMismatch";
    case LensErrorKind::AmbiguousIdentity:
      return "AmbiguousIdentity";
    case LensErrorKind::UnknownLens:
      return "UnknownLens";
  }
  return "LensTypeError";
}

LensTypeError::LensTypeError(LensErrorKind kind, const std::string& subterm)
    : Error(std::string(to_string(kind)) + " in " + subterm), kind_(kind), subterm_(subterm) {}

SyntaxError::SyntaxError(std::size_t line, std::size_t col, const std::string& message)
    : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + message), line_(line), col_(col) {}

}  // namespace bilens

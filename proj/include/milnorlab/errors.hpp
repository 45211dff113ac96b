#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace milnorlab {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Raised when an operation would materialize more than the term budget.
struct TermBudgetExceeded : Error {
  using Error::Error;
};

enum class ParseErrorKind {
  SyntaxError,
  UnknownVariable,
  MalformedExponent,
  DivisionByVariable,
  NonzeroConstantTerm,
  TargetExceedsSource,
  DuplicateVariable,
  MissingVars,
  BadNumber,
};

const char* to_string(ParseErrorKind kind);

// Parse failures carry a 0-based character offset into the offending line.
struct ParseError : Error {
  ParseError(ParseErrorKind kind, std::size_t position, const std::string& detail);
  ParseErrorKind kind;
  std::size_t position;
};

struct ClusterTooSmall : Error {
  using Error::Error;
};

struct NoFeasiblePoint : Error {
  using Error::Error;
};

}  // namespace milnorlab

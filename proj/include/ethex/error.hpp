#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ethex {

/// Machine-readable error category. The string form (see to_string) is what
/// the service puts in the `code` field of its error bodies.
enum class ErrorCode {
  kPreconditionViolation,
  kUnknownAction,
  kInvalidModel,
  kInvalidPlan,
  kSyntaxError,
  kSemanticError,
  kNoPlanFound,
  kBudgetExceeded,
  kSizeExceeded,
  kInvalidSuggestion,
  kConflictingSuggestion,
  kValidationFailed,
  kRestoreFailed,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Parse diagnostics carry the 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(std::string origin, std::size_t line, std::size_t column,
              const std::string& expected);

  const std::string& origin() const { return origin_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string origin_;
  std::size_t line_;
  std::size_t column_;
};

class SemanticError : public Error {
 public:
  SemanticError(std::string origin, std::size_t line, std::size_t column,
                const std::string& message);

  const std::string& origin() const { return origin_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string origin_;
  std::size_t line_;
  std::size_t column_;
};

/// Raised when a step of a plan cannot be applied. `step` is the index in the
/// step list, or npos for a bare applyAction call.
class PreconditionViolation : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  PreconditionViolation(std::string action, std::string missing_facts,
                        std::size_t step = npos);

  const std::string& action() const { return action_; }
  const std::string& missing_facts() const { return missing_facts_; }
  std::size_t step() const { return step_; }

 private:
  std::string action_;
  std::string missing_facts_;
  std::size_t step_;
};

class ValidationFailed : public Error {
 public:
  ValidationFailed(std::size_t step, const std::string& message)
      : Error(ErrorCode::kValidationFailed, message), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace ethex

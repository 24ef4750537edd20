#include "ethex/error.hpp"

#include <utility>

namespace ethex {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPreconditionViolation: return "PreconditionViolation";
    case ErrorCode::kUnknownAction: return "UnknownAction";
    case ErrorCode::kInvalidModel: return "InvalidModel";
    case ErrorCode::kInvalidPlan: return "InvalidPlan";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kSemanticError: return "SemanticError";
    case ErrorCode::kNoPlanFound: return "NoPlanFound";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kSizeExceeded: return "SizeExceeded";
    case ErrorCode::kInvalidSuggestion: return "InvalidSuggestion";
    case ErrorCode::kConflictingSuggestion: return "ConflictingSuggestion";
    case ErrorCode::kValidationFailed: return "ValidationFailed";
    case ErrorCode::kRestoreFailed: return "RestoreFailed";
  }
  return "Unknown";
}

namespace {

std::string located(const std::string& origin, std::size_t line,
                    std::size_t column, const std::string& message) {
  return origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
         ": " + message;
}

}  // namespace

SyntaxError::SyntaxError(std::string origin, std::size_t line,
                         std::size_t column, const std::string& expected)
    : Error(ErrorCode::kSyntaxError,
            located(origin, line, column, "expected " + expected)),
      origin_(std::move(origin)),
      line_(line),
      column_(column) {}

SemanticError::SemanticError(std::string origin, std::size_t line,
                             std::size_t column, const std::string& message)
    : Error(ErrorCode::kSemanticError, located(origin, line, column, message)),
      origin_(std::move(origin)),
      line_(line),
      column_(column) {}

PreconditionViolation::PreconditionViolation(std::string action,
                                             std::string missing_facts,
                                             std::size_t step)
    : Error(ErrorCode::kPreconditionViolation,
            (step == npos ? std::string()
                          : "step " + std::to_string(step) + ": ") +
                "action " + action + " is missing preconditions {" +
                missing_facts + "}"),
      action_(std::move(action)),
      missing_facts_(std::move(missing_facts)),
      step_(step) {}

}  // namespace ethex

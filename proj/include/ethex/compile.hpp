#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ethex/model.hpp"

namespace ethex {

enum class SuggestionKind { kForbid, kForce, kReplace, kOrder };

/// A moderator constraint on admissible plans. `first` is the forbidden,
/// forced or earlier action; `second` is the forced action of a replacement
/// or the later action of an ordering.
struct Suggestion {
  SuggestionKind kind = SuggestionKind::kForbid;
  std::string first;
  std::string second;

  static Suggestion forbid(std::string a) { return {SuggestionKind::kForbid, std::move(a), {}}; }
  static Suggestion force(std::string a) { return {SuggestionKind::kForce, std::move(a), {}}; }
  static Suggestion replace(std::string a, std::string b) {
    return {SuggestionKind::kReplace, std::move(a), std::move(b)};
  }
  static Suggestion order(std::string a, std::string b) {
    return {SuggestionKind::kOrder, std::move(a), std::move(b)};
  }

  /// `forbid A`, `force A`, `replace A with B`, `order A before B`.
  std::string id() const;

  bool operator==(const Suggestion&) const = default;
};

/// Parses the text form produced by Suggestion::id (whitespace-tolerant).
/// Throws Error(kInvalidSuggestion).
Suggestion parse_suggestion(std::string_view text);

struct HModelResult {
  PlanningModel hmodel;
  std::set<Fact> introduced_facts;

  bool operator==(const HModelResult&) const = default;
};

std::string forced_fact(std::string_view action);
std::string done_fact(std::string_view action);

/// Forbid removes the action. Force adds `__aux_forced_A` to the action's add
/// effects and to the goal (at least once). Replace is Forbid then Force.
/// Order adds `__aux_done_A` to A's add effects and B's preconditions.
///
/// Throws Error(kInvalidSuggestion) for Replace/Order of an action with
/// itself, Error(kConflictingSuggestion) when the suggestion forces an action
/// the provenance forbids (or the reverse), and Error(kUnknownAction).
HModelResult compile(const PlanningModel& model, const Suggestion& suggestion);

/// Left fold of compile. Errors are rethrown with the failing index.
HModelResult compile_chain(const PlanningModel& model,
                           std::span<const Suggestion> suggestions);

/// Re-executes an HPlan's steps on the original model and returns them
/// unchanged. Throws ValidationFailed with the first inapplicable step.
std::vector<std::string> strip_auxiliaries(const PlanningModel& original,
                                           std::span<const std::string> steps);

bool check_suggestion_satisfied(const Suggestion& suggestion,
                                std::span<const std::string> steps);

}  // namespace ethex

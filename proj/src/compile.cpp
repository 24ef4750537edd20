#include "ethex/compile.hpp"

#include <algorithm>
#include <sstream>

#include "ethex/error.hpp"

namespace ethex {

std::string Suggestion::id() const {
  switch (kind) {
    case SuggestionKind::kForbid: return "forbid " + first;
    case SuggestionKind::kForce: return "force " + first;
    case SuggestionKind::kReplace: return "replace " + first + " with " + second;
    case SuggestionKind::kOrder: return "order " + first + " before " + second;
  }
  return {};
}

Suggestion parse_suggestion(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(std::move(w));

  auto bad = [&]() -> Error {
    return Error(ErrorCode::kInvalidSuggestion,
                 "cannot parse suggestion '" + std::string(text) +
                     "'; expected 'forbid A', 'force A', 'replace A with B' "
                     "or 'order A before B'");
  };
  if (words.size() == 2 && words[0] == "forbid") return Suggestion::forbid(words[1]);
  if (words.size() == 2 && words[0] == "force") return Suggestion::force(words[1]);
  if (words.size() == 4 && words[0] == "replace" && words[2] == "with") {
    return Suggestion::replace(words[1], words[3]);
  }
  if (words.size() == 4 && words[0] == "order" && words[2] == "before") {
    return Suggestion::order(words[1], words[3]);
  }
  throw bad();
}

std::string forced_fact(std::string_view action) {
  return std::string(kAuxPrefix) + "forced_" + std::string(action);
}

std::string done_fact(std::string_view action) {
  return std::string(kAuxPrefix) + "done_" + std::string(action);
}

namespace {

std::optional<std::string> forbidden_action(const Suggestion& s) {
  if (s.kind == SuggestionKind::kForbid || s.kind == SuggestionKind::kReplace) {
    return s.first;
  }
  return std::nullopt;
}

std::optional<std::string> forced_action(const Suggestion& s) {
  if (s.kind == SuggestionKind::kForce) return s.first;
  if (s.kind == SuggestionKind::kReplace) return s.second;
  return std::nullopt;
}

void check_conflicts(const PlanningModel& model, const Suggestion& suggestion) {
  const auto forbids = forbidden_action(suggestion);
  const auto forces = forced_action(suggestion);
  for (const auto& id : model.provenance) {
    Suggestion earlier;
    try {
      earlier = parse_suggestion(id);
    } catch (const Error&) {
      continue;
    }
    const auto earlier_forbids = forbidden_action(earlier);
    const auto earlier_forces = forced_action(earlier);
    if ((forces && earlier_forbids == forces) ||
        (forbids && earlier_forces == forbids)) {
      throw Error(ErrorCode::kConflictingSuggestion,
                  "'" + suggestion.id() + "' contradicts earlier '" + id + "'");
    }
  }
}

Action& require_action(PlanningModel& model, const std::string& name) {
  auto it = std::find_if(model.actions.begin(), model.actions.end(),
                         [&](const Action& a) { return a.name == name; });
  if (it == model.actions.end()) {
    throw Error(ErrorCode::kUnknownAction, "unknown action " + name);
  }
  return *it;
}

void apply_forbid(PlanningModel& model, const std::string& name) {
  require_action(model, name);
  std::erase_if(model.actions, [&](const Action& a) { return a.name == name; });
  model.display.erase(name);
}

void apply_force(PlanningModel& model, const std::string& name) {
  Action& action = require_action(model, name);
  const std::string fact = forced_fact(name);
  model.facts.insert(fact);
  action.add_effects.insert(fact);
  action.del_effects.erase(fact);
  model.goal.insert(fact);
}

void apply_order(PlanningModel& model, const std::string& earlier,
                 const std::string& later) {
  require_action(model, earlier);
  require_action(model, later);
  const std::string fact = done_fact(earlier);
  model.facts.insert(fact);
  Action& first = require_action(model, earlier);
  first.add_effects.insert(fact);
  first.del_effects.erase(fact);
  require_action(model, later).preconditions.insert(fact);
}

}  // namespace

HModelResult compile(const PlanningModel& model, const Suggestion& suggestion) {
  if ((suggestion.kind == SuggestionKind::kReplace ||
       suggestion.kind == SuggestionKind::kOrder) &&
      suggestion.first == suggestion.second) {
    throw Error(ErrorCode::kInvalidSuggestion,
                "'" + suggestion.id() + "' names the same action twice");
  }
  check_conflicts(model, suggestion);

  HModelResult result{model, {}};
  PlanningModel& h = result.hmodel;
  switch (suggestion.kind) {
    case SuggestionKind::kForbid:
      apply_forbid(h, suggestion.first);
      break;
    case SuggestionKind::kForce:
      apply_force(h, suggestion.first);
      break;
    case SuggestionKind::kReplace:
      require_action(h, suggestion.second);
      apply_forbid(h, suggestion.first);
      apply_force(h, suggestion.second);
      break;
    case SuggestionKind::kOrder:
      apply_order(h, suggestion.first, suggestion.second);
      break;
  }
  h.provenance.push_back(suggestion.id());
  std::set_difference(h.facts.begin(), h.facts.end(), model.facts.begin(),
                      model.facts.end(),
                      std::inserter(result.introduced_facts,
                                    result.introduced_facts.end()));
  return result;
}

HModelResult compile_chain(const PlanningModel& model,
                           std::span<const Suggestion> suggestions) {
  HModelResult result{model, {}};
  for (std::size_t i = 0; i < suggestions.size(); ++i) {
    try {
      HModelResult step = compile(result.hmodel, suggestions[i]);
      result.hmodel = std::move(step.hmodel);
      result.introduced_facts.insert(step.introduced_facts.begin(),
                                     step.introduced_facts.end());
    } catch (const Error& e) {
      throw Error(e.code(), "suggestion " + std::to_string(i) + " ('" +
                                suggestions[i].id() + "'): " + e.what());
    }
  }
  return result;
}

std::vector<std::string> strip_auxiliaries(const PlanningModel& original,
                                           std::span<const std::string> steps) {
  State state = original.init;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Action* action = original.find_action(steps[i]);
    if (action == nullptr) {
      throw ValidationFailed(i, "HPlan step " + std::to_string(i) + " (" +
                                    steps[i] +
                                    ") is not an action of the original model");
    }
    try {
      state = apply_action(state, *action);
    } catch (const PreconditionViolation& e) {
      throw ValidationFailed(i, "HPlan step " + std::to_string(i) + " (" +
                                    steps[i] +
                                    ") is inapplicable in the original model: "
                                    "missing {" +
                                    e.missing_facts() + "}");
    }
  }
  return {steps.begin(), steps.end()};
}

bool check_suggestion_satisfied(const Suggestion& suggestion,
                                std::span<const std::string> steps) {
  auto contains = [&](const std::string& name) {
    return std::find(steps.begin(), steps.end(), name) != steps.end();
  };
  switch (suggestion.kind) {
    case SuggestionKind::kForbid: return !contains(suggestion.first);
    case SuggestionKind::kForce: return contains(suggestion.first);
    case SuggestionKind::kReplace:
      return !contains(suggestion.first) && contains(suggestion.second);
    case SuggestionKind::kOrder: {
      bool seen_earlier = false;
      for (const auto& step : steps) {
        if (step == suggestion.first) seen_earlier = true;
        if (step == suggestion.second && !seen_earlier) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace ethex

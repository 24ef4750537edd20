#include "ethex/model.hpp"

#include <algorithm>
#include <utility>

#include "ethex/error.hpp"

namespace ethex {

const char* to_string(IntrinsicValue value) {
  switch (value) {
    case IntrinsicValue::kGood: return "good";
    case IntrinsicValue::kNeutral: return "neutral";
    case IntrinsicValue::kBad: return "bad";
  }
  return "neutral";
}

std::optional<IntrinsicValue> intrinsic_from_string(std::string_view text) {
  if (text == "good") return IntrinsicValue::kGood;
  if (text == "neutral") return IntrinsicValue::kNeutral;
  if (text == "bad") return IntrinsicValue::kBad;
  return std::nullopt;
}

void Action::normalize() {
  for (const auto& fact : add_effects) del_effects.erase(fact);
}

UtilityFunction::UtilityFunction(std::map<Fact, std::int64_t> entries)
    : entries_(std::move(entries)) {
  std::erase_if(entries_, [](const auto& kv) { return kv.second == 0; });
}

std::int64_t UtilityFunction::operator()(const Fact& fact) const {
  auto it = entries_.find(fact);
  return it == entries_.end() ? 0 : it->second;
}

void UtilityFunction::set(const Fact& fact, std::int64_t value) {
  if (value == 0) {
    entries_.erase(fact);
  } else {
    entries_[fact] = value;
  }
}

const Action* PlanningModel::find_action(std::string_view name) const {
  auto it = std::find_if(actions.begin(), actions.end(),
                         [&](const Action& a) { return a.name == name; });
  return it == actions.end() ? nullptr : &*it;
}

void PlanningModel::validate() const {
  auto fail = [](const std::string& message) {
    throw Error(ErrorCode::kInvalidModel, message);
  };
  auto require_declared = [&](const std::set<Fact>& set,
                              const std::string& where) {
    for (const auto& f : set) {
      if (!facts.contains(f)) fail(where + " mentions undeclared fact " + f);
    }
  };
  require_declared(init, "init");
  require_declared(goal, "goal");
  std::set<std::string> names;
  for (const auto& action : actions) {
    if (!names.insert(action.name).second) {
      fail("duplicate action " + action.name);
    }
    if (action.cost < 0) fail("action " + action.name + " has negative cost");
    require_declared(action.preconditions, "action " + action.name);
    require_declared(action.add_effects, "action " + action.name);
    require_declared(action.del_effects, "action " + action.name);
    for (const auto& f : action.add_effects) {
      if (action.del_effects.contains(f)) {
        fail("action " + action.name + " adds and deletes " + f);
      }
    }
  }
  for (const auto& [fact, value] : utility.entries()) {
    if (!facts.contains(fact)) fail("utility for undeclared fact " + fact);
  }
}

State apply_action(const State& state, const Action& action) {
  std::string missing;
  for (const auto& f : action.preconditions) {
    if (!state.contains(f)) {
      if (!missing.empty()) missing += ", ";
      missing += f;
    }
  }
  if (!missing.empty()) throw PreconditionViolation(action.name, missing);

  State next = state;
  for (const auto& f : action.del_effects) next.erase(f);
  next.insert(action.add_effects.begin(), action.add_effects.end());
  return next;
}

Plan execute_plan(const PlanningModel& model,
                  std::span<const std::string> steps) {
  Plan plan;
  plan.steps.assign(steps.begin(), steps.end());
  plan.trace.reserve(steps.size() + 1);
  plan.trace.push_back(model.init);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Action* action = model.find_action(steps[i]);
    if (action == nullptr) {
      throw Error(ErrorCode::kUnknownAction,
                  "step " + std::to_string(i) + ": unknown action " + steps[i]);
    }
    try {
      plan.trace.push_back(apply_action(plan.trace.back(), *action));
    } catch (const PreconditionViolation& e) {
      throw PreconditionViolation(e.action(), e.missing_facts(), i);
    }
    plan.total_cost += action->cost;
  }
  return plan;
}

bool check_goal(const PlanningModel& model, const Plan& plan) {
  const State& last = plan.final_state();
  return std::all_of(model.goal.begin(), model.goal.end(),
                     [&](const Fact& f) { return last.contains(f); });
}

std::int64_t state_utility(const UtilityFunction& utility, const State& state) {
  std::int64_t total = 0;
  for (const auto& f : state) total += utility(f);
  return total;
}

std::int64_t final_state_utility(const PlanningModel& model, const Plan& plan) {
  return state_utility(model.utility, plan.final_state());
}

std::string join_steps(std::span<const std::string> steps,
                       std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0) out += separator;
    out += steps[i];
  }
  return out;
}

}  // namespace ethex

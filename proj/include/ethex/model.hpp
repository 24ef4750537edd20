#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ethex {

/// Grounded proposition. Facts are compared by name.
using Fact = std::string;

/// A state is the set of facts that currently hold.
using State = std::set<Fact>;

/// Prefix reserved for facts introduced by model compilation.
inline constexpr std::string_view kAuxPrefix = "__aux_";

inline bool is_auxiliary(std::string_view fact) {
  return fact.substr(0, kAuxPrefix.size()) == kAuxPrefix;
}

enum class IntrinsicValue { kGood, kNeutral, kBad };

const char* to_string(IntrinsicValue value);
std::optional<IntrinsicValue> intrinsic_from_string(std::string_view text);

struct Action {
  std::string name;
  std::set<Fact> preconditions;
  std::set<Fact> add_effects;
  std::set<Fact> del_effects;
  std::int64_t cost = 1;
  IntrinsicValue intrinsic = IntrinsicValue::kNeutral;

  /// Collapses delete-then-add conflicts: a fact in both effect sets ends up
  /// true after application, so it is dropped from the delete set.
  void normalize();

  bool operator==(const Action&) const = default;
};

/// Fact utilities in valence units. Absent facts score 0; negative facts are
/// harms and positive ones benefits.
class UtilityFunction {
 public:
  UtilityFunction() = default;
  explicit UtilityFunction(std::map<Fact, std::int64_t> entries);

  std::int64_t operator()(const Fact& fact) const;
  bool is_harm(const Fact& fact) const { return (*this)(fact) < 0; }
  bool is_benefit(const Fact& fact) const { return (*this)(fact) > 0; }

  void set(const Fact& fact, std::int64_t value);
  const std::map<Fact, std::int64_t>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  bool operator==(const UtilityFunction&) const = default;

 private:
  std::map<Fact, std::int64_t> entries_;
};

/// A grounded planning model with ethical annotations. A model whose
/// provenance is non-empty was produced by compiling suggestions (an HModel).
struct PlanningModel {
  std::string domain_name = "domain";
  std::string problem_name = "problem";
  std::set<Fact> facts;
  std::vector<Action> actions;  // declaration order; names unique
  State init;
  std::set<Fact> goal;
  UtilityFunction utility;
  /// Optional natural-language phrases for action (and fact) names.
  std::map<std::string, std::string> display;
  std::vector<std::string> provenance;

  const Action* find_action(std::string_view name) const;
  bool is_hmodel() const { return !provenance.empty(); }

  /// Throws Error(kInvalidModel) naming the first broken invariant.
  void validate() const;

  bool operator==(const PlanningModel&) const = default;
};

struct Plan {
  std::vector<std::string> steps;
  std::vector<State> trace;  // trace.size() == steps.size() + 1
  std::int64_t total_cost = 0;

  const State& final_state() const { return trace.back(); }

  bool operator==(const Plan&) const = default;
};

/// (state \ del) ∪ add. Throws PreconditionViolation when a precondition is
/// missing from `state`.
State apply_action(const State& state, const Action& action);

/// Executes the named steps from the model's initial state. Does not check the
/// goal. Throws Error(kUnknownAction) or PreconditionViolation with the step.
Plan execute_plan(const PlanningModel& model,
                  std::span<const std::string> steps);

bool check_goal(const PlanningModel& model, const Plan& plan);

std::int64_t state_utility(const UtilityFunction& utility, const State& state);
std::int64_t final_state_utility(const PlanningModel& model, const Plan& plan);

std::string join_steps(std::span<const std::string> steps,
                       std::string_view separator = "; ");

}  // namespace ethex

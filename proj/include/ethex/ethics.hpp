#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ethex/formula.hpp"
#include "ethex/model.hpp"
#include "ethex/planner.hpp"

namespace ethex {

enum class PrincipleId {
  kDeontology,
  kActUtilitarian,
  kDoNoHarm,
  kDoNoInstrumentalHarm,
  kDoubleEffect,
};

/// Kebab-case names: deontology, act-utilitarian, do-no-harm,
/// do-no-instrumental-harm, double-effect.
const char* to_string(PrincipleId id);
std::optional<PrincipleId> principle_from_string(std::string_view text);
const std::vector<PrincipleId>& all_principles();

struct PrincipleFormula {
  Formula formula = Formula::truth();
  Assignment assignment;

  bool operator==(const PrincipleFormula&) const = default;
};

struct Verdict {
  bool permissible = true;
  PrincipleId principle = PrincipleId::kDeontology;
  PrincipleFormula formula;
  std::optional<std::string> bound_note;

  bool operator==(const Verdict&) const = default;
};

/// Producer/consumer link; `consumer` is empty when the fact is a goal fact.
struct CausalLink {
  std::size_t producer = 0;
  Fact fact;
  std::optional<std::size_t> consumer;

  bool operator==(const CausalLink&) const = default;
};

/// Links every precondition of every step, and every goal fact, to the latest
/// earlier step that adds it. Facts supplied only by the initial state get no
/// link. Ordered by consumer (goal last), then fact.
std::vector<CausalLink> causal_links(const PlanningModel& model,
                                     const Plan& plan);

/// Builds the principle's formula and the truth assignment the plan induces,
/// and judges the plan by evaluating one under the other.
///
/// Throws Error(kInvalidPlan) if the plan does not execute on the model or
/// misses the goal; the act-utilitarian principle also propagates
/// Error(kBudgetExceeded) from plan enumeration.
Verdict evaluate(PrincipleId principle, const PlanningModel& model,
                 const Plan& plan, const SearchBudget& budget = {});

}  // namespace ethex

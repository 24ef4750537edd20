#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ethex/compile.hpp"
#include "ethex/ethics.hpp"
#include "ethex/planner.hpp"
#include "ethex/reasons.hpp"

namespace ethex {

/// One round of moderator interaction: the model, its current plan, the
/// suggested change and the principle both plans are judged by.
struct ExplanationProblem {
  PlanningModel model;
  Plan plan;
  Suggestion suggestion;
  PrincipleId principle = PrincipleId::kDeontology;
};

struct PlanDiff {
  std::vector<std::string> removed;
  std::vector<std::string> added;
  std::vector<std::string> common;

  bool operator==(const PlanDiff&) const = default;
};

/// Multiset difference both ways plus the intersection, each in order of
/// first occurrence (common follows `original`).
PlanDiff plan_diff(std::span<const std::string> original,
                   std::span<const std::string> hplan);

struct ContrastiveExplanation {
  std::vector<std::string> original_steps;
  std::vector<std::string> hplan;
  Verdict original_verdict;
  Verdict h_verdict;
  ReasonSet original_reasons;
  ReasonSet h_reasons;
  PlanDiff diff;
  std::string nl;
  /// The compiled model the HPlan solves; adopted when a session commits.
  HModelResult hmodel;

  bool operator==(const ContrastiveExplanation&) const = default;
};

/// The external planning system the workbench wraps: returns the steps of a
/// plan for the given model, or throws Error(kNoPlanFound).
using PlannerFn = std::function<std::vector<std::string>(const PlanningModel&,
                                                         const SearchBudget&)>;

PlannerFn internal_planner(Objective objective = Objective::kMinCost);

/// Compiles the suggestion, solves the HModel with `planner`, validates the
/// HPlan against the problem's model, judges both plans under the principle,
/// extracts reasons, diffs the plans and renders the sentence.
///
/// Throws Error(kInvalidPlan) when the problem's plan does not solve its
/// model, Error(kNoPlanFound) naming the provenance when the HModel has no
/// plan, ValidationFailed, and compile or reason errors unchanged.
ContrastiveExplanation solve_explanation_problem(
    const ExplanationProblem& problem, const SearchBudget& budget = {},
    const PlannerFn& planner = internal_planner());

/// Renders one literal using the model's display phrases, falling back to the
/// canonical literal text when a name has no phrase.
std::string render_literal(const Literal& literal, const PlanningModel& model);

/// Picks the reason shown in the sentence: sufficient-and-necessary reasons,
/// then sufficient, then necessary, each shortest first. Reasons whose every
/// literal mentions an action in `focus` win when any exists.
std::string render_reason(const ReasonSet& reasons, PrincipleId principle,
                          const PlanningModel& model,
                          std::span<const std::string> focus);

/// Sentence comparing the two verdicts:
///   differing verdicts: "The original plan is V1 because R1, whereas the
///                        HPlan is V2 because R2"
///   same verdict:       "The original plan is V because R1, and the HPlan is
///                        also V because R2"
///   identical plans:    "Both plans are V because R1"
std::string render_nl(const ContrastiveExplanation& explanation,
                      const PlanningModel& model);

}  // namespace ethex

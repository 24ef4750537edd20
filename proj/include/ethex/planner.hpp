#pragma once

#include <cstdint>
#include <vector>

#include "ethex/model.hpp"

namespace ethex {

struct SearchBudget {
  int max_depth = 20;
  std::int64_t max_expansions = 1'000'000;

  /// Throws std::invalid_argument unless max_depth >= 0 and
  /// max_expansions > 0.
  void check() const;

  bool operator==(const SearchBudget&) const = default;
};

enum class Objective { kMinCost, kMaxUtility };

const char* to_string(Objective objective);

/// MinCost: uniform-cost search; the returned plan has minimal total cost
/// among all plans of at most max_depth steps. Ties go to the
/// lexicographically smallest step list.
///
/// MaxUtility: the plan from enumerate_plans with the highest final-state
/// utility, then lowest cost, then lexicographically smallest steps.
///
/// Throws Error(kNoPlanFound) or Error(kBudgetExceeded).
Plan find_plan(const PlanningModel& model, Objective objective,
               const SearchBudget& budget = {});

/// Every goal-satisfying plan of at most max_depth steps that never revisits
/// a state, sorted by (cost, steps). Throws Error(kBudgetExceeded) when more
/// than max_expansions search nodes are visited.
std::vector<Plan> enumerate_plans(const PlanningModel& model,
                                  const SearchBudget& budget = {});

}  // namespace ethex

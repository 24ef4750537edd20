#include "ethex/planner.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "ethex/error.hpp"

namespace ethex {

void SearchBudget::check() const {
  if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  if (max_expansions <= 0) {
    throw std::invalid_argument("max_expansions must be > 0");
  }
}

const char* to_string(Objective objective) {
  return objective == Objective::kMinCost ? "min-cost" : "max-utility";
}

namespace {

bool goal_holds(const PlanningModel& model, const State& state) {
  return std::all_of(model.goal.begin(), model.goal.end(),
                     [&](const Fact& f) { return state.contains(f); });
}

bool applicable(const Action& action, const State& state) {
  return std::all_of(action.preconditions.begin(), action.preconditions.end(),
                     [&](const Fact& f) { return state.contains(f); });
}

struct SearchNode {
  State state;
  std::vector<std::string> steps;
  std::vector<State> trace;
  std::int64_t cost = 0;
};

[[noreturn]] void budget_exceeded(const SearchBudget& budget) {
  throw Error(ErrorCode::kBudgetExceeded,
              "search exceeded " + std::to_string(budget.max_expansions) +
                  " expansions");
}

Plan min_cost_plan(const PlanningModel& model, const SearchBudget& budget) {
  std::vector<SearchNode> nodes;
  auto worse = [&nodes](std::size_t a, std::size_t b) {
    return std::tie(nodes[a].cost, nodes[a].steps) >
           std::tie(nodes[b].cost, nodes[b].steps);
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)>
      open(worse);
  // Closed entries are Pareto-pruned on (cost, depth), so the depth bound
  // cannot hide a cheaper plan behind a deeper duplicate.
  std::map<State, std::vector<std::pair<std::int64_t, std::size_t>>> closed;

  nodes.push_back({model.init, {}, {model.init}, 0});
  open.push(0);
  std::int64_t expansions = 0;
  bool truncated = false;

  while (!open.empty()) {
    std::size_t index = open.top();
    open.pop();
    // Copy out: pushing successors may reallocate `nodes`.
    SearchNode node = nodes[index];
    std::size_t depth = node.steps.size();

    auto& seen = closed[node.state];
    bool dominated = std::any_of(seen.begin(), seen.end(), [&](const auto& e) {
      return e.first <= node.cost && e.second <= depth;
    });
    if (dominated) continue;
    seen.emplace_back(node.cost, depth);

    if (goal_holds(model, node.state)) {
      return {std::move(node.steps), std::move(node.trace), node.cost};
    }
    if (++expansions > budget.max_expansions) budget_exceeded(budget);
    if (depth >= static_cast<std::size_t>(budget.max_depth)) {
      truncated = true;
      continue;
    }
    for (const auto& action : model.actions) {
      if (!applicable(action, node.state)) continue;
      SearchNode next;
      next.state = apply_action(node.state, action);
      next.cost = node.cost + action.cost;
      next.steps = node.steps;
      next.steps.push_back(action.name);
      next.trace = node.trace;
      next.trace.push_back(next.state);
      nodes.push_back(std::move(next));
      open.push(nodes.size() - 1);
    }
  }
  throw Error(ErrorCode::kNoPlanFound,
              truncated ? "no plan within the depth bound of " +
                              std::to_string(budget.max_depth) + " steps"
                        : std::string("goal is unreachable"));
}

class SimplePathEnumerator {
 public:
  SimplePathEnumerator(const PlanningModel& model, const SearchBudget& budget)
      : model_(model), budget_(budget) {}

  std::vector<Plan> run() {
    current_.trace.push_back(model_.init);
    on_path_.insert(model_.init);
    visit();
    std::sort(plans_.begin(), plans_.end(), [](const Plan& a, const Plan& b) {
      return std::tie(a.total_cost, a.steps) < std::tie(b.total_cost, b.steps);
    });
    return std::move(plans_);
  }

 private:
  void visit() {
    if (++expansions_ > budget_.max_expansions) budget_exceeded(budget_);
    const State state = current_.trace.back();  // trace grows below
    if (goal_holds(model_, state)) plans_.push_back(current_);
    if (current_.steps.size() >= static_cast<std::size_t>(budget_.max_depth)) {
      return;
    }
    for (const auto& action : model_.actions) {
      if (!applicable(action, state)) continue;
      State next = apply_action(state, action);
      if (on_path_.contains(next)) continue;
      on_path_.insert(next);
      current_.steps.push_back(action.name);
      current_.trace.push_back(std::move(next));
      current_.total_cost += action.cost;
      visit();
      current_.total_cost -= action.cost;
      on_path_.erase(current_.trace.back());
      current_.trace.pop_back();
      current_.steps.pop_back();
    }
  }

  const PlanningModel& model_;
  const SearchBudget& budget_;
  Plan current_;
  std::set<State> on_path_;
  std::vector<Plan> plans_;
  std::int64_t expansions_ = 0;
};

}  // namespace

Plan find_plan(const PlanningModel& model, Objective objective,
               const SearchBudget& budget) {
  budget.check();
  if (objective == Objective::kMinCost) return min_cost_plan(model, budget);

  std::vector<Plan> plans = enumerate_plans(model, budget);
  if (plans.empty()) {
    throw Error(ErrorCode::kNoPlanFound,
                "no plan within the depth bound of " +
                    std::to_string(budget.max_depth) + " steps");
  }
  // Plans are already in (cost, steps) order, so the first maximum wins ties.
  auto best = plans.begin();
  std::int64_t best_utility = final_state_utility(model, *best);
  for (auto it = std::next(plans.begin()); it != plans.end(); ++it) {
    std::int64_t u = final_state_utility(model, *it);
    if (u > best_utility) {
      best = it;
      best_utility = u;
    }
  }
  return std::move(*best);
}

std::vector<Plan> enumerate_plans(const PlanningModel& model,
                                  const SearchBudget& budget) {
  budget.check();
  return SimplePathEnumerator(model, budget).run();
}

}  // namespace ethex

#include "ethex/ethics.hpp"

#include <algorithm>
#include <cctype>

#include "ethex/error.hpp"

namespace ethex {

const char* to_string(PrincipleId id) {
  switch (id) {
    case PrincipleId::kDeontology: return "deontology";
    case PrincipleId::kActUtilitarian: return "act-utilitarian";
    case PrincipleId::kDoNoHarm: return "do-no-harm";
    case PrincipleId::kDoNoInstrumentalHarm: return "do-no-instrumental-harm";
    case PrincipleId::kDoubleEffect: return "double-effect";
  }
  return "deontology";
}

std::optional<PrincipleId> principle_from_string(std::string_view text) {
  std::string key(text);
  std::replace(key.begin(), key.end(), '_', '-');
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (PrincipleId id : all_principles()) {
    if (key == to_string(id)) return id;
  }
  if (key == "utilitarian" || key == "utilitarianism") {
    return PrincipleId::kActUtilitarian;
  }
  if (key == "deontological") return PrincipleId::kDeontology;
  return std::nullopt;
}

const std::vector<PrincipleId>& all_principles() {
  static const std::vector<PrincipleId> kAll = {
      PrincipleId::kDeontology, PrincipleId::kActUtilitarian,
      PrincipleId::kDoNoHarm, PrincipleId::kDoNoInstrumentalHarm,
      PrincipleId::kDoubleEffect};
  return kAll;
}

std::vector<CausalLink> causal_links(const PlanningModel& model,
                                     const Plan& plan) {
  auto latest_producer = [&](const Fact& fact,
                             std::size_t before) -> std::optional<std::size_t> {
    for (std::size_t i = before; i-- > 0;) {
      const Action* a = model.find_action(plan.steps[i]);
      if (a != nullptr && a->add_effects.contains(fact)) return i;
    }
    return std::nullopt;
  };

  std::vector<CausalLink> links;
  for (std::size_t j = 0; j < plan.steps.size(); ++j) {
    const Action* a = model.find_action(plan.steps[j]);
    if (a == nullptr) continue;
    for (const auto& f : a->preconditions) {
      if (auto producer = latest_producer(f, j)) {
        links.push_back({*producer, f, j});
      }
    }
  }
  for (const auto& f : model.goal) {
    if (auto producer = latest_producer(f, plan.steps.size())) {
      links.push_back({*producer, f, std::nullopt});
    }
  }
  return links;
}

namespace {

struct PlanFacts {
  std::vector<std::string> distinct_actions;  // first-occurrence order
  std::set<std::pair<std::string, Fact>> harm_candidates;
  std::set<std::pair<std::string, Fact>> caused_harms;
  std::set<Fact> means;
};

PlanFacts analyse(const PlanningModel& model, const Plan& plan) {
  PlanFacts out;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const std::string& name = plan.steps[i];
    if (std::find(out.distinct_actions.begin(), out.distinct_actions.end(),
                  name) == out.distinct_actions.end()) {
      out.distinct_actions.push_back(name);
    }
    const Action& action = *model.find_action(name);
    for (const auto& f : action.add_effects) {
      if (!model.utility.is_harm(f)) continue;
      out.harm_candidates.emplace(name, f);
      if (!plan.trace[i].contains(f) && plan.trace[i + 1].contains(f)) {
        out.caused_harms.emplace(name, f);
      }
    }
  }
  for (const auto& link : causal_links(model, plan)) out.means.insert(link.fact);
  return out;
}

class FormulaBuilder {
 public:
  FormulaBuilder(const PlanningModel& model, const PlanFacts& facts)
      : model_(model), facts_(facts) {}

  void no_bad_actions() {
    for (const auto& name : facts_.distinct_actions) {
      Atom atom = Atom::bad(name);
      assignment_[atom] =
          model_.find_action(name)->intrinsic == IntrinsicValue::kBad;
      parts_.push_back(Formula::literal(std::move(atom), false));
    }
  }

  void no_caused_harm() {
    for (const auto& [action, fact] : facts_.harm_candidates) {
      parts_.push_back(Formula::literal(causes_harm(action, fact), false));
    }
  }

  // ¬(CausesHarm(a, f) ∧ Means(f)) in NNF.
  void no_harm_as_means() {
    for (const auto& [action, fact] : facts_.harm_candidates) {
      Atom means = Atom::means(fact);
      assignment_[means] = facts_.means.contains(fact);
      parts_.push_back(Formula::disjunction(
          {Formula::literal(causes_harm(action, fact), false),
           Formula::literal(std::move(means), false)}));
    }
  }

  void no_harmful_goal() {
    std::set<Fact> harms;
    for (const auto& f : model_.goal) {
      if (model_.utility.is_harm(f)) harms.insert(f);
    }
    for (const auto& [action, fact] : facts_.caused_harms) harms.insert(fact);
    for (const auto& f : harms) {
      Atom atom = Atom::goal_harm(f);
      assignment_[atom] = model_.goal.contains(f);
      parts_.push_back(Formula::literal(std::move(atom), false));
    }
  }

  void proportional(bool holds) {
    assignment_[Atom::proportional()] = holds;
    parts_.push_back(Formula::literal(Atom::proportional(), true));
  }

  void not_dominated(bool dominated) {
    assignment_[Atom::dominated()] = dominated;
    parts_.push_back(Formula::literal(Atom::dominated(), false));
  }

  PrincipleFormula finish() {
    return {Formula::conjunction(std::move(parts_)), std::move(assignment_)};
  }

 private:
  Atom causes_harm(const std::string& action, const Fact& fact) {
    Atom atom = Atom::causes_harm(action, fact);
    assignment_[atom] = facts_.caused_harms.contains({action, fact});
    return atom;
  }

  const PlanningModel& model_;
  const PlanFacts& facts_;
  std::vector<Formula> parts_;
  Assignment assignment_;
};

}  // namespace

Verdict evaluate(PrincipleId principle, const PlanningModel& model,
                 const Plan& plan, const SearchBudget& budget) {
  Plan executed;
  try {
    executed = execute_plan(model, plan.steps);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidPlan, e.what());
  }
  if (!check_goal(model, executed)) {
    throw Error(ErrorCode::kInvalidPlan, "plan does not reach the goal");
  }

  const PlanFacts facts = analyse(model, executed);
  FormulaBuilder builder(model, facts);
  Verdict verdict;
  verdict.principle = principle;

  switch (principle) {
    case PrincipleId::kDeontology:
      builder.no_bad_actions();
      break;
    case PrincipleId::kActUtilitarian: {
      const std::vector<Plan> alternatives = enumerate_plans(model, budget);
      const std::int64_t own = final_state_utility(model, executed);
      bool dominated = false;
      for (const auto& alt : alternatives) {
        if (final_state_utility(model, alt) > own) dominated = true;
      }
      builder.not_dominated(dominated);
      verdict.bound_note = "compared against " +
                           std::to_string(alternatives.size()) +
                           " simple-path plans of at most " +
                           std::to_string(budget.max_depth) + " steps";
      break;
    }
    case PrincipleId::kDoNoHarm:
      builder.no_caused_harm();
      break;
    case PrincipleId::kDoNoInstrumentalHarm:
      builder.no_harm_as_means();
      break;
    case PrincipleId::kDoubleEffect:
      builder.no_bad_actions();
      builder.no_harmful_goal();
      builder.no_harm_as_means();
      builder.proportional(final_state_utility(model, executed) > 0);
      break;
  }

  verdict.formula = builder.finish();
  verdict.permissible =
      verdict.formula.formula.evaluate(verdict.formula.assignment);
  return verdict;
}

}  // namespace ethex

#include "ethex/explain.hpp"

#include <algorithm>
#include <map>

#include "ethex/error.hpp"

namespace ethex {

PlanDiff plan_diff(std::span<const std::string> original,
                   std::span<const std::string> hplan) {
  PlanDiff diff;
  std::map<std::string, std::size_t> remaining;
  for (const auto& s : hplan) ++remaining[s];
  for (const auto& s : original) {
    auto it = remaining.find(s);
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      diff.common.push_back(s);
    } else {
      diff.removed.push_back(s);
    }
  }
  remaining.clear();
  for (const auto& s : original) ++remaining[s];
  for (const auto& s : hplan) {
    auto it = remaining.find(s);
    if (it != remaining.end() && it->second > 0) {
      --it->second;
    } else {
      diff.added.push_back(s);
    }
  }
  return diff;
}

PlannerFn internal_planner(Objective objective) {
  return [objective](const PlanningModel& model, const SearchBudget& budget) {
    return find_plan(model, objective, budget).steps;
  };
}

namespace {

const std::string* phrase(const PlanningModel& model, const std::string& name) {
  auto it = model.display.find(name);
  return it == model.display.end() ? nullptr : &it->second;
}

const char* vacuous_reason(PrincipleId principle) {
  switch (principle) {
    case PrincipleId::kDeontology: return "no action in it is bad";
    case PrincipleId::kActUtilitarian: return "no alternative is better";
    case PrincipleId::kDoNoHarm: return "no action in it causes harm";
    case PrincipleId::kDoNoInstrumentalHarm:
      return "no harm in it is used as a means";
    case PrincipleId::kDoubleEffect: return "all conditions of double effect hold";
  }
  return "nothing speaks against it";
}

bool mentions_focus(const Literal& l, std::span<const std::string> focus) {
  if (l.atom.action.empty()) return false;
  return std::find(focus.begin(), focus.end(), l.atom.action) != focus.end();
}

std::string join_phrases(const std::vector<Literal>& literals,
                         const std::string& separator,
                         const PlanningModel& model) {
  std::string out;
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (i > 0) out += separator;
    out += render_literal(literals[i], model);
  }
  return out;
}

const char* permissibility(bool permissible) {
  return permissible ? "permissible" : "impermissible";
}

}  // namespace

std::string render_literal(const Literal& literal, const PlanningModel& model) {
  const Atom& atom = literal.atom;
  const bool pos = literal.positive;
  switch (atom.kind) {
    case AtomKind::kBad:
      if (const auto* a = phrase(model, atom.action)) {
        return *a + (pos ? " is bad" : " is not bad");
      }
      break;
    case AtomKind::kCausesHarm: {
      const auto* a = phrase(model, atom.action);
      const auto* f = phrase(model, atom.fact);
      if (a && f) return *a + (pos ? " causes " : " does not cause ") + *f;
      break;
    }
    case AtomKind::kMeans:
      if (const auto* f = phrase(model, atom.fact)) {
        return *f + (pos ? " is a means to the goal"
                         : " is not a means to the goal");
      }
      break;
    case AtomKind::kGoalHarm:
      if (const auto* f = phrase(model, atom.fact)) {
        return *f + (pos ? " is part of the goal" : " is not part of the goal");
      }
      break;
    case AtomKind::kDominated:
      return pos ? "another plan achieves higher utility"
                 : "no alternative plan achieves higher utility";
    case AtomKind::kProportional:
      return pos ? "its benefits outweigh its harms"
                 : "its benefits do not outweigh its harms";
  }
  return literal.to_string();
}

std::string render_reason(const ReasonSet& reasons, PrincipleId principle,
                          const PlanningModel& model,
                          std::span<const std::string> focus) {
  struct Candidate {
    const std::vector<Literal>* literals;
    const char* separator;
  };
  std::vector<Candidate> candidates;
  for (const auto& t : reasons.sufficient_and_necessary) {
    candidates.push_back({&t.literals, " and "});
  }
  for (const auto& t : reasons.sufficient) candidates.push_back({&t.literals, " and "});
  for (const auto& c : reasons.necessary) candidates.push_back({&c.literals, " or "});
  if (candidates.empty()) return vacuous_reason(principle);

  auto focused = std::find_if(candidates.begin(), candidates.end(),
                              [&](const Candidate& c) {
                                return !c.literals->empty() &&
                                       std::all_of(c.literals->begin(),
                                                   c.literals->end(),
                                                   [&](const Literal& l) {
                                                     return mentions_focus(l, focus);
                                                   });
                              });
  const Candidate& chosen =
      focused != candidates.end() ? *focused : candidates.front();
  if (chosen.literals->empty()) return vacuous_reason(principle);
  return join_phrases(*chosen.literals, chosen.separator, model);
}

std::string render_nl(const ContrastiveExplanation& e,
                      const PlanningModel& model) {
  const PrincipleId principle = e.original_verdict.principle;
  const bool v1 = e.original_verdict.permissible;
  const bool v2 = e.h_verdict.permissible;
  const std::string r1 =
      render_reason(e.original_reasons, principle, model, e.diff.removed);
  const std::string r2 =
      render_reason(e.h_reasons, principle, model, e.diff.added);

  if (e.original_steps == e.hplan && v1 == v2) {
    return std::string("Both plans are ") + permissibility(v1) + " because " + r1;
  }
  if (v1 == v2) {
    return std::string("The original plan is ") + permissibility(v1) +
           " because " + r1 + ", and the HPlan is also " + permissibility(v2) +
           " because " + r2;
  }
  return std::string("The original plan is ") + permissibility(v1) +
         " because " + r1 + ", whereas the HPlan is " + permissibility(v2) +
         " because " + r2;
}

ContrastiveExplanation solve_explanation_problem(
    const ExplanationProblem& problem, const SearchBudget& budget,
    const PlannerFn& planner) {
  const PlanningModel& model = problem.model;
  Plan original;
  try {
    original = execute_plan(model, problem.plan.steps);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidPlan, e.what());
  }
  if (!check_goal(model, original)) {
    throw Error(ErrorCode::kInvalidPlan, "the current plan does not reach the goal");
  }

  ContrastiveExplanation out;
  out.hmodel = compile(model, problem.suggestion);
  const PlanningModel& hmodel = out.hmodel.hmodel;

  std::vector<std::string> hsteps;
  try {
    hsteps = planner(hmodel, budget);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoPlanFound) throw;
    std::string provenance;
    for (const auto& id : hmodel.provenance) {
      provenance += (provenance.empty() ? "" : "; ") + id;
    }
    throw Error(ErrorCode::kNoPlanFound,
                "no plan satisfies the suggestion (provenance: " + provenance +
                    "): " + e.what());
  }

  // The HPlan must be applicable in the model being explained and solve the
  // HModel it was planned for.
  out.hplan = strip_auxiliaries(model, hsteps);
  try {
    if (!check_goal(hmodel, execute_plan(hmodel, out.hplan))) {
      throw ValidationFailed(out.hplan.size(),
                             "HPlan does not reach the HModel goal");
    }
  } catch (const ValidationFailed&) {
    throw;
  } catch (const PreconditionViolation& e) {
    throw ValidationFailed(e.step(), std::string("HPlan does not solve the HModel: ") +
                                         e.what());
  } catch (const Error& e) {
    throw ValidationFailed(0, std::string("HPlan does not solve the HModel: ") +
                                  e.what());
  }

  out.original_steps = original.steps;
  out.original_verdict = evaluate(problem.principle, model, original, budget);
  out.h_verdict = evaluate(problem.principle, model,
                           execute_plan(model, out.hplan), budget);
  out.original_reasons = reasons_for(out.original_verdict);
  out.h_reasons = reasons_for(out.h_verdict);
  out.diff = plan_diff(out.original_steps, out.hplan);
  out.nl = render_nl(out, model);
  return out;
}

}  // namespace ethex

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ethex/compile.hpp"
#include "ethex/error.hpp"
#include "ethex/explain.hpp"
#include "ethex/json_io.hpp"
#include "ethex/parser.hpp"

namespace py = pybind11;
using namespace ethex;

namespace {

// Every entry point takes the model as domain/problem text and returns the
// same JSON payload text the CLI and the service emit.

PlanningModel load(const std::string& domain, const std::string& problem) {
  return parse_model({domain, "domain"}, {problem, "problem"});
}

SearchBudget budget_of(int max_depth, std::int64_t max_expansions) {
  SearchBudget budget{max_depth, max_expansions};
  budget.check();
  return budget;
}

Objective objective_of(const std::string& name) {
  if (name == "min-cost") return Objective::kMinCost;
  if (name == "max-utility") return Objective::kMaxUtility;
  throw std::invalid_argument("unknown objective '" + name +
                              "'; expected min-cost or max-utility");
}

PrincipleId principle_of(const std::string& name) {
  if (auto id = principle_from_string(name)) return *id;
  throw std::invalid_argument("unknown principle '" + name + "'");
}

Plan current_plan(const PlanningModel& model,
                  const std::optional<std::vector<std::string>>& steps,
                  Objective objective, const SearchBudget& budget) {
  if (!steps) return find_plan(model, objective, budget);
  Plan plan = execute_plan(model, *steps);
  if (!check_goal(model, plan)) {
    throw Error(ErrorCode::kInvalidPlan, "the given plan does not reach the goal");
  }
  return plan;
}

}  // namespace

PYBIND11_MODULE(_ethex, m) {
  m.doc() = "Plan ethics evaluation and contrastive explanation";

  static py::exception<Error> ethex_error(m, "EthexError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(to_string(e.code()), e.what());
      PyErr_SetObject(ethex_error.ptr(), args.ptr());
    }
  });

  m.def(
      "normalize",
      [](const std::string& domain, const std::string& problem) {
        const SourcePair text = serialize_model(load(domain, problem));
        return json{{"domain", text.domain.text}, {"problem", text.problem.text}}.dump();
      },
      py::arg("domain"), py::arg("problem"),
      "Parse a model and return its canonical text form.");

  m.def(
      "plan",
      [](const std::string& domain, const std::string& problem, const std::string& objective,
         int max_depth, std::int64_t max_expansions) {
        const PlanningModel model = load(domain, problem);
        return dump_payload(plan_json(
            find_plan(model, objective_of(objective), budget_of(max_depth, max_expansions))));
      },
      py::arg("domain"), py::arg("problem"), py::arg("objective") = "min-cost",
      py::arg("max_depth") = 20, py::arg("max_expansions") = 1'000'000);

  m.def(
      "enumerate_plans",
      [](const std::string& domain, const std::string& problem, int max_depth,
         std::int64_t max_expansions) {
        json out = json::array();
        for (const auto& p :
             enumerate_plans(load(domain, problem), budget_of(max_depth, max_expansions))) {
          out.push_back(plan_json(p));
        }
        return dump_payload(out);
      },
      py::arg("domain"), py::arg("problem"), py::arg("max_depth") = 20,
      py::arg("max_expansions") = 1'000'000);

  m.def(
      "evaluate",
      [](const std::string& domain, const std::string& problem, const std::string& principle,
         const std::optional<std::vector<std::string>>& steps, const std::string& objective,
         int max_depth, std::int64_t max_expansions) {
        const PlanningModel model = load(domain, problem);
        const SearchBudget budget = budget_of(max_depth, max_expansions);
        const Plan plan = current_plan(model, steps, objective_of(objective), budget);
        const Verdict verdict = evaluate(principle_of(principle), model, plan, budget);
        return dump_payload(evaluation_json(verdict, reasons_for(verdict)));
      },
      py::arg("domain"), py::arg("problem"), py::arg("principle"),
      py::arg("plan") = py::none(), py::arg("objective") = "min-cost",
      py::arg("max_depth") = 20, py::arg("max_expansions") = 1'000'000);

  m.def(
      "compile",
      [](const std::string& domain, const std::string& problem,
         const std::vector<std::string>& suggestions) {
        std::vector<Suggestion> parsed;
        for (const auto& s : suggestions) parsed.push_back(parse_suggestion(s));
        const HModelResult h = compile_chain(load(domain, problem), parsed);
        const SourcePair text = serialize_model(h.hmodel);
        return json{{"domain", text.domain.text},
                    {"problem", text.problem.text},
                    {"provenance", h.hmodel.provenance},
                    {"introduced_facts", h.introduced_facts}}
            .dump();
      },
      py::arg("domain"), py::arg("problem"), py::arg("suggestions"));

  m.def(
      "explain",
      [](const std::string& domain, const std::string& problem, const std::string& suggestion,
         const std::string& principle, const std::optional<std::vector<std::string>>& steps,
         const std::string& objective, int max_depth, std::int64_t max_expansions) {
        const PlanningModel model = load(domain, problem);
        const SearchBudget budget = budget_of(max_depth, max_expansions);
        const Objective obj = objective_of(objective);
        ExplanationProblem p{model, current_plan(model, steps, obj, budget),
                             parse_suggestion(suggestion), principle_of(principle)};
        py::gil_scoped_release release;
        return dump_payload(to_json(solve_explanation_problem(p, budget, internal_planner(obj))));
      },
      py::arg("domain"), py::arg("problem"), py::arg("suggestion"), py::arg("principle"),
      py::arg("plan") = py::none(), py::arg("objective") = "min-cost",
      py::arg("max_depth") = 20, py::arg("max_expansions") = 1'000'000);
}

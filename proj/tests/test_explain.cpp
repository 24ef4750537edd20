#include <doctest.h>

#include <random>

#include "ethex/error.hpp"
#include "ethex/explain.hpp"
#include "ethex/fixtures.hpp"
#include "ethex/json_io.hpp"

using namespace ethex;

using Steps = std::vector<std::string>;

namespace {

const char* kFrankSentence =
    "The original plan is impermissible because lying to Frank is bad, whereas the "
    "HPlan is permissible because begging Frank is not bad";

ExplanationProblem frank_problem(Suggestion s, PrincipleId p = PrincipleId::kDeontology) {
  const auto m = fixtures::robot_and_frank();
  return {m, execute_plan(m, Steps{"lie_frank", "exercise"}), std::move(s), p};
}

PlannerFn fixed_planner(Steps steps) {
  return [steps](const PlanningModel&, const SearchBudget&) { return steps; };
}

}  // namespace

TEST_CASE("plan_diff") {
  CHECK(plan_diff(Steps{"lie_frank", "exercise"}, Steps{"beg_frank", "exercise"}) ==
        PlanDiff{{"lie_frank"}, {"beg_frank"}, {"exercise"}});
  CHECK(plan_diff(Steps{"a", "b"}, Steps{"a", "b"}) == PlanDiff{{}, {}, {"a", "b"}});
  CHECK(plan_diff(Steps{}, Steps{"a"}) == PlanDiff{{}, {"a"}, {}});
  CHECK(plan_diff(Steps{"a", "a", "b"}, Steps{"b", "a", "c"}) ==
        PlanDiff{{"a"}, {"c"}, {"a", "b"}});
}

TEST_CASE("plan_diff partitions the multiset union") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> len(0, 6), letter(0, 3);
  for (int i = 0; i < 200; ++i) {
    Steps x, y;
    for (int k = len(rng); k > 0; --k) x.push_back(std::string(1, char('a' + letter(rng))));
    for (int k = len(rng); k > 0; --k) y.push_back(std::string(1, char('a' + letter(rng))));
    const PlanDiff d = plan_diff(x, y);
    std::multiset<std::string> left(d.removed.begin(), d.removed.end());
    left.insert(d.common.begin(), d.common.end());
    std::multiset<std::string> right(d.added.begin(), d.added.end());
    right.insert(d.common.begin(), d.common.end());
    CHECK(left == std::multiset<std::string>(x.begin(), x.end()));
    CHECK(right == std::multiset<std::string>(y.begin(), y.end()));
  }
}

TEST_CASE("the running example reproduces the sentence") {
  const auto e = solve_explanation_problem(
      frank_problem(Suggestion::replace("lie_frank", "beg_frank")));
  CHECK(e.nl == kFrankSentence);
  CHECK(e.hplan == Steps{"beg_frank", "exercise"});
  CHECK_FALSE(e.original_verdict.permissible);
  CHECK(e.h_verdict.permissible);
  CHECK(e.diff == PlanDiff{{"lie_frank"}, {"beg_frank"}, {"exercise"}});
  CHECK(e.hmodel.hmodel.provenance == Steps{"replace lie_frank with beg_frank"});
}

TEST_CASE("forbidding an unused action leaves both plans alike") {
  const auto e = solve_explanation_problem(frank_problem(Suggestion::forbid("beg_frank")));
  CHECK(e.hplan == Steps{"lie_frank", "exercise"});
  CHECK(e.original_verdict.permissible == e.h_verdict.permissible);
  CHECK(e.nl == "Both plans are impermissible because lying to Frank is bad");
}

TEST_CASE("same verdict for different plans") {
  const auto e = solve_explanation_problem(
      frank_problem(Suggestion::replace("lie_frank", "beg_frank"), PrincipleId::kActUtilitarian));
  CHECK(e.nl ==
        "The original plan is permissible because no alternative plan achieves higher "
        "utility, and the HPlan is also permissible because no alternative plan achieves "
        "higher utility");
}

TEST_CASE("an unsatisfiable chain reports its provenance") {
  const auto h = compile(fixtures::robot_and_frank(), Suggestion::forbid("lie_frank")).hmodel;
  ExplanationProblem p{h, execute_plan(h, Steps{"beg_frank", "exercise"}),
                       Suggestion::forbid("beg_frank"), PrincipleId::kDeontology};
  try {
    solve_explanation_problem(p);
    FAIL("expected NoPlanFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoPlanFound);
    CHECK(std::string(e.what()).find("forbid lie_frank; forbid beg_frank") !=
          std::string::npos);
  }
}

TEST_CASE("missing display phrases fall back to canonical atoms") {
  PlanningModel m;
  m.facts = {"g"};
  m.actions = {{"x_1", {}, {"g"}, {}, 1, IntrinsicValue::kBad},
               {"x_2", {}, {"g"}, {}, 2, IntrinsicValue::kNeutral}};
  m.goal = {"g"};
  ExplanationProblem p{m, execute_plan(m, Steps{"x_1"}), Suggestion::replace("x_1", "x_2"),
                       PrincipleId::kDeontology};
  CHECK(solve_explanation_problem(p).nl ==
        "The original plan is impermissible because Bad(x_1), whereas the HPlan is "
        "permissible because ¬Bad(x_2)");
}

TEST_CASE("literal phrases") {
  auto m = fixtures::medicine();
  m.display["side_pain"] = "the patient's pain";
  CHECK(render_literal({Atom::causes_harm("treat", "side_pain"), true}, m) ==
        "treating the patient causes the patient's pain");
  CHECK(render_literal({Atom::means("side_pain"), false}, m) ==
        "the patient's pain is not a means to the goal");
  CHECK(render_literal({Atom::goal_harm("side_pain"), false}, m) ==
        "the patient's pain is not part of the goal");
  CHECK(render_literal({Atom::goal_harm("cured"), false}, m) == "¬GoalHarm(cured)");
  CHECK(render_literal({Atom::proportional(), true}, m) == "its benefits outweigh its harms");
  CHECK(render_literal({Atom::bad("unknown"), true}, m) == "Bad(unknown)");
}

TEST_CASE("vacuous reasons") {
  auto m = fixtures::robot_and_frank();
  m.goal.clear();
  ExplanationProblem p{m, execute_plan(m, Steps{}), Suggestion::forbid("lie_frank"),
                       PrincipleId::kDeontology};
  CHECK(solve_explanation_problem(p).nl ==
        "Both plans are permissible because no action in it is bad");
}

TEST_CASE("the validation gate stops rogue HPlans") {
  const auto problem = frank_problem(Suggestion::replace("lie_frank", "beg_frank"));
  try {
    solve_explanation_problem(problem, {}, fixed_planner({"exercise"}));
    FAIL("expected ValidationFailed");
  } catch (const ValidationFailed& e) {
    CHECK(e.step() == 0);
  }
  try {
    // Applicable in the original model but ignores the suggestion.
    solve_explanation_problem(problem, {}, fixed_planner({"lie_frank", "exercise"}));
    FAIL("expected ValidationFailed");
  } catch (const ValidationFailed&) {
  }
  try {
    solve_explanation_problem(problem, {}, fixed_planner({"beg_frank"}));
    FAIL("expected ValidationFailed");
  } catch (const ValidationFailed& e) {
    CHECK(e.step() == 1);
  }
}

TEST_CASE("an original plan that misses the goal is rejected") {
  const auto m = fixtures::robot_and_frank();
  ExplanationProblem p{m, execute_plan(m, Steps{"lie_frank"}), Suggestion::forbid("lie_frank"),
                       PrincipleId::kDeontology};
  try {
    solve_explanation_problem(p);
    FAIL("expected InvalidPlan");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidPlan);
  }
}

TEST_CASE("explanations are deterministic and faithful") {
  for (PrincipleId principle : all_principles()) {
    for (const auto& s : {Suggestion::replace("lie_frank", "beg_frank"),
                          Suggestion::forbid("lie_frank"), Suggestion::force("beg_frank"),
                          Suggestion::order("beg_frank", "exercise")}) {
      const auto a = solve_explanation_problem(frank_problem(s, principle));
      const auto b = solve_explanation_problem(frank_problem(s, principle));
      CHECK(a == b);
      CHECK(dump_payload(to_json(a)) == dump_payload(to_json(b)));
      for (const auto* reasons : {&a.original_reasons, &a.h_reasons}) {
        const auto& assignment =
            reasons == &a.original_reasons ? a.original_verdict.formula.assignment
                                           : a.h_verdict.formula.assignment;
        for (const auto& t : reasons->sufficient) {
          for (const auto& l : t.literals) CHECK(assignment.at(l.atom) == l.positive);
        }
        for (const auto& c : reasons->necessary) {
          for (const auto& l : c.literals) CHECK(assignment.at(l.atom) == l.positive);
        }
      }
    }
  }
}

TEST_CASE("explanation JSON schema") {
  const auto e = solve_explanation_problem(
      frank_problem(Suggestion::replace("lie_frank", "beg_frank")));
  const json j = to_json(e);
  CHECK(j.at("nl") == kFrankSentence);
  CHECK(j.at("original").at("steps") == json::array({"lie_frank", "exercise"}));
  CHECK(j.at("hplan").at("steps") == json::array({"beg_frank", "exercise"}));
  CHECK(j.at("original").at("verdict").at("permissible") == false);
  CHECK(j.at("original").at("reasons").at("sufficient_and_necessary") ==
        json::array({"(Bad(lie_frank))"}));
  CHECK(j.at("diff").at("removed") == json::array({"lie_frank"}));
  CHECK(j.at("diff").at("added") == json::array({"beg_frank"}));
  CHECK(j.at("diff").at("common") == json::array({"exercise"}));
}

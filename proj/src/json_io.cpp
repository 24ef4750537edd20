#include "ethex/json_io.hpp"

namespace ethex {

json to_json(const Verdict& verdict) {
  json assignment = json::object();
  for (const auto& [atom, value] : verdict.formula.assignment) {
    assignment[atom.to_string()] = value;
  }
  json out = {
      {"principle", to_string(verdict.principle)},
      {"permissible", verdict.permissible},
      {"formula", verdict.formula.formula.to_string()},
      {"assignment", std::move(assignment)},
  };
  if (verdict.bound_note) out["bound_note"] = *verdict.bound_note;
  return out;
}

json to_json(const ReasonSet& reasons) {
  json sufficient = json::array();
  for (const auto& t : reasons.sufficient) sufficient.push_back(t.to_string());
  json necessary = json::array();
  for (const auto& c : reasons.necessary) necessary.push_back(c.to_string());
  json both = json::array();
  for (const auto& t : reasons.sufficient_and_necessary) {
    both.push_back(t.to_string());
  }
  return {{"sufficient", std::move(sufficient)},
          {"necessary", std::move(necessary)},
          {"sufficient_and_necessary", std::move(both)}};
}

json to_json(const PlanDiff& diff) {
  return {{"removed", diff.removed}, {"added", diff.added}, {"common", diff.common}};
}

json plan_json(const Plan& plan) {
  return {{"steps", plan.steps}, {"cost", plan.total_cost}};
}

json to_json(const ContrastiveExplanation& e) {
  return {
      {"original",
       {{"steps", e.original_steps},
        {"verdict", to_json(e.original_verdict)},
        {"reasons", to_json(e.original_reasons)}}},
      {"hplan",
       {{"steps", e.hplan},
        {"verdict", to_json(e.h_verdict)},
        {"reasons", to_json(e.h_reasons)}}},
      {"diff", to_json(e.diff)},
      {"nl", e.nl},
  };
}

json evaluation_json(const Verdict& verdict, const ReasonSet& reasons) {
  return {{"verdict", to_json(verdict)}, {"reasons", to_json(reasons)}};
}

std::string dump_payload(const json& payload) { return payload.dump(2); }

}  // namespace ethex

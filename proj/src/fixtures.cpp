#include "ethex/fixtures.hpp"

namespace ethex::fixtures {

PlanningModel robot_and_frank() {
  PlanningModel m;
  m.domain_name = "robot_and_frank";
  m.problem_name = "keep_frank_healthy";
  m.facts = {"motivated", "healthy", "unhealthy"};
  m.actions = {
      {"lie_frank", {}, {"motivated"}, {}, 1, IntrinsicValue::kBad},
      {"beg_frank", {}, {"motivated"}, {}, 2, IntrinsicValue::kNeutral},
      {"exercise", {"motivated"}, {"healthy"}, {"unhealthy"}, 1,
       IntrinsicValue::kNeutral},
  };
  m.init = {"unhealthy"};
  m.goal = {"healthy"};
  m.utility = UtilityFunction({{"healthy", 10}, {"unhealthy", -10}});
  m.display = {{"lie_frank", "lying to Frank"},
               {"beg_frank", "begging Frank"},
               {"exercise", "Frank exercising"}};
  return m;
}

PlanningModel medicine() {
  PlanningModel m;
  m.domain_name = "medicine";
  m.problem_name = "cure_patient";
  m.facts = {"cured", "side_pain"};
  m.actions = {
      {"treat", {}, {"cured", "side_pain"}, {}, 1, IntrinsicValue::kNeutral},
  };
  m.goal = {"cured"};
  m.utility = UtilityFunction({{"cured", 10}, {"side_pain", -3}});
  m.display = {{"treat", "treating the patient"}};
  return m;
}

PlanningModel shield() {
  PlanningModel m;
  m.domain_name = "shield";
  m.problem_name = "protect_convoy";
  m.facts = {"bystander_hurt", "convoy_safe"};
  m.actions = {
      {"push_bystander", {}, {"bystander_hurt"}, {}, 1,
       IntrinsicValue::kNeutral},
      {"stop_convoy", {"bystander_hurt"}, {"convoy_safe"}, {}, 1,
       IntrinsicValue::kNeutral},
  };
  m.goal = {"convoy_safe"};
  m.utility = UtilityFunction({{"bystander_hurt", -5}, {"convoy_safe", 8}});
  m.display = {{"push_bystander", "pushing the bystander"},
               {"stop_convoy", "stopping the convoy"}};
  return m;
}

}  // namespace ethex::fixtures

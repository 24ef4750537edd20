#pragma once

#include "ethex/model.hpp"

// In-code copies of the bundled fixture models under fixtures/. The parser
// tests check that the files parse to exactly these values.
namespace ethex::fixtures {

/// Care robot must motivate Frank to exercise: lie_frank (cost 1, bad) and
/// beg_frank (cost 2, neutral) both add `motivated`; exercise needs it.
PlanningModel robot_and_frank();

/// treat adds cured (+10) and side_pain (-3); the goal is cured.
PlanningModel medicine();

/// The harmful fact bystander_hurt is a precondition of the goal producer.
PlanningModel shield();

}  // namespace ethex::fixtures

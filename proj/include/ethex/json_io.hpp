#pragma once

#include <nlohmann/json.hpp>

#include "ethex/explain.hpp"

namespace ethex {

using nlohmann::json;

json to_json(const Verdict& verdict);
json to_json(const ReasonSet& reasons);
json to_json(const PlanDiff& diff);
json plan_json(const Plan& plan);

/// `{original: {steps, verdict, reasons}, hplan: {steps, verdict, reasons},
///   diff: {removed, added, common}, nl}`
json to_json(const ContrastiveExplanation& explanation);

/// `{verdict, reasons}` for a single plan.
json evaluation_json(const Verdict& verdict, const ReasonSet& reasons);

/// Canonical payload text; the CLI and the service emit exactly this.
std::string dump_payload(const json& payload);

}  // namespace ethex

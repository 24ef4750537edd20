#include "cli.hpp"

#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ethex/error.hpp"
#include "ethex/explain.hpp"
#include "ethex/json_io.hpp"
#include "ethex/parser.hpp"
#include "ethex/service.hpp"

namespace ethex::cli {
namespace {

struct Options {
  std::string domain;
  std::string problem;
  std::string principle;
  std::string suggestion;
  std::string objective = "min-cost";
  std::optional<std::string> plan;
  SearchBudget budget;
  bool json = false;

  std::optional<std::string> listen;
  std::optional<std::string> snapshot;
  std::optional<std::string> config;
};

std::vector<std::string> split_plan(const std::string& text) {
  std::vector<std::string> steps;
  std::string current;
  auto flush = [&] {
    auto first = current.find_first_not_of(" \t");
    auto last = current.find_last_not_of(" \t");
    if (first != std::string::npos) {
      steps.push_back(current.substr(first, last - first + 1));
    }
    current.clear();
  };
  for (char c : text) {
    if (c == ';' || c == ',') {
      flush();
    } else {
      current += c;
    }
  }
  flush();
  return steps;
}

PlanningModel load_model(const Options& o) {
  return parse_model(read_source(o.domain), read_source(o.problem));
}

Objective objective_of(const Options& o) {
  return o.objective == "max-utility" ? Objective::kMaxUtility
                                      : Objective::kMinCost;
}

Plan current_plan(const PlanningModel& model, const Options& o) {
  if (!o.plan) return find_plan(model, objective_of(o), o.budget);
  Plan plan = execute_plan(model, split_plan(*o.plan));
  if (!check_goal(model, plan)) {
    throw Error(ErrorCode::kInvalidPlan, "the given plan does not reach the goal");
  }
  return plan;
}

void print_reasons(const ReasonSet& reasons, std::ostream& out) {
  auto line = [&](const char* label, const auto& items) {
    out << label << ':';
    if (items.empty()) out << " (none)";
    for (const auto& item : items) out << ' ' << item.to_string();
    out << '\n';
  };
  line("sufficient and necessary", reasons.sufficient_and_necessary);
  line("sufficient", reasons.sufficient);
  line("necessary", reasons.necessary);
}

int cmd_plan(const Options& o, std::ostream& out) {
  const PlanningModel model = load_model(o);
  const Plan plan = find_plan(model, objective_of(o), o.budget);
  if (o.json) {
    out << dump_payload(plan_json(plan)) << '\n';
  } else {
    out << (plan.steps.empty() ? "(empty plan)" : join_steps(plan.steps))
        << " (cost " << plan.total_cost << ")\n";
  }
  return kOk;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const PlanningModel model = load_model(o);
  const Plan plan = current_plan(model, o);
  const Verdict verdict =
      evaluate(*principle_from_string(o.principle), model, plan, o.budget);
  const ReasonSet reasons = reasons_for(verdict);
  if (o.json) {
    out << dump_payload(evaluation_json(verdict, reasons)) << '\n';
    return kOk;
  }
  out << "plan: " << (plan.steps.empty() ? "(empty plan)" : join_steps(plan.steps))
      << '\n';
  out << "verdict: " << (verdict.permissible ? "permissible" : "impermissible")
      << " under " << to_string(verdict.principle) << '\n';
  out << "formula: " << verdict.formula.formula.to_string() << '\n';
  if (verdict.bound_note) out << "note: " << *verdict.bound_note << '\n';
  print_reasons(reasons, out);
  return kOk;
}

int cmd_explain(const Options& o, std::ostream& out) {
  const PlanningModel model = load_model(o);
  ExplanationProblem problem{model, current_plan(model, o),
                             parse_suggestion(o.suggestion),
                             *principle_from_string(o.principle)};
  const ContrastiveExplanation e = solve_explanation_problem(
      problem, o.budget, internal_planner(objective_of(o)));
  if (o.json) {
    out << dump_payload(to_json(e)) << '\n';
  } else {
    out << e.nl << '\n';
  }
  return kOk;
}

int cmd_serve(const Options& o) {
  ServiceConfig config = ServiceConfig::load(o.config);
  if (o.listen) config.set_listen(*o.listen);
  if (o.snapshot) config.snapshot_path = *o.snapshot;
  return run_server(config);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoPlanFound:
    case ErrorCode::kValidationFailed:
    case ErrorCode::kBudgetExceeded:
      return kNoPlan;
    case ErrorCode::kRestoreFailed:
    case ErrorCode::kSizeExceeded:
      return kInternal;
    default:
      return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Judge the ethics of plans and explain moderator suggestions",
               "ethex"};
  app.require_subcommand(1);

  auto principle_check = CLI::Validator(
      [](std::string& value) -> std::string {
        if (principle_from_string(value)) return {};
        return "unknown principle '" + value +
               "'; expected deontology, act-utilitarian, do-no-harm, "
               "do-no-instrumental-harm or double-effect";
      },
      "PRINCIPLE");

  auto add_model_options = [&](CLI::App* sub) {
    sub->add_option("-d,--domain", o.domain, "Domain file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("-p,--problem", o.problem, "Problem file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--objective", o.objective, "Planner objective")
        ->check(CLI::IsMember({"min-cost", "max-utility"}));
    sub->add_option("--max-depth", o.budget.max_depth, "Search depth bound")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--max-expansions", o.budget.max_expansions,
                    "Search node bound")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--json", o.json, "Emit JSON payloads");
  };

  CLI::App* plan = app.add_subcommand("plan", "Print a plan for the problem");
  add_model_options(plan);

  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Judge a plan under a principle");
  add_model_options(evaluate_cmd);
  evaluate_cmd->add_option("--principle", o.principle, "Ethical principle")
      ->required()
      ->check(principle_check);
  evaluate_cmd->add_option("--plan", o.plan,
                           "Steps to judge, separated by ';' (default: plan)");

  CLI::App* explain =
      app.add_subcommand("explain", "Contrast the plan with a suggestion");
  add_model_options(explain);
  explain->add_option("--suggest", o.suggestion,
                      "forbid A | force A | replace A with B | order A before B")
      ->required();
  explain->add_option("--principle", o.principle, "Ethical principle")
      ->required()
      ->check(principle_check);
  explain->add_option("--plan", o.plan,
                      "Current plan, separated by ';' (default: plan)");

  CLI::App* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--listen", o.listen, "HOST:PORT (default 127.0.0.1:8080)");
  serve->add_option("--snapshot", o.snapshot, "Session snapshot file");
  serve->add_option("--config", o.config, "JSON config file")
      ->check(CLI::ExistingFile);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (plan->parsed()) return cmd_plan(o, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(o, out);
    if (explain->parsed()) return cmd_explain(o, out);
    if (serve->parsed()) return cmd_serve(o);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace ethex::cli

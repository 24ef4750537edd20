#include "ethex/service.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "ethex/error.hpp"
#include "ethex/parser.hpp"

namespace ethex {
namespace {

constexpr int kSnapshotVersion = 1;

std::int64_t now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch())
      .count();
}

std::string new_session_id() {
  static std::mutex mutex;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mutex);
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(rng()));
  return buffer;
}

json model_json(const PlanningModel& model) {
  SourcePair text = serialize_model(model);
  return {{"domain", text.domain.text}, {"problem", text.problem.text}};
}

PlanningModel model_from_json(const json& j) {
  return parse_model({j.at("domain").get<std::string>(), "<snapshot domain>"},
                     {j.at("problem").get<std::string>(), "<snapshot problem>"});
}

Objective objective_from_string(const std::string& text) {
  if (text == "min-cost") return Objective::kMinCost;
  if (text == "max-utility") return Objective::kMaxUtility;
  throw std::invalid_argument("unknown objective '" + text +
                              "'; expected min-cost or max-utility");
}

SearchBudget budget_from_json(const json& j) {
  SearchBudget budget;
  if (j.is_null()) return budget;
  budget.max_depth = j.value("max_depth", budget.max_depth);
  budget.max_expansions = j.value("max_expansions", budget.max_expansions);
  budget.check();
  return budget;
}

json budget_json(const SearchBudget& budget) {
  return {{"max_depth", budget.max_depth},
          {"max_expansions", budget.max_expansions}};
}

json history_entry_json(const HistoryEntry& e) {
  json out = {
      {"suggestion", e.suggestion.id()},
      {"principle", to_string(e.principle)},
      {"committed", e.committed},
      {"ok", e.ok},
      {"error_code", e.error_code},
      {"error_message", e.error_message},
      {"hplan", e.hplan},
      {"explanation", e.explanation},
  };
  if (e.hmodel) {
    out["hmodel"] = model_json(e.hmodel->hmodel);
    out["introduced_facts"] = e.hmodel->introduced_facts;
  } else {
    out["hmodel"] = nullptr;
  }
  return out;
}

HistoryEntry history_entry_from_json(const json& j) {
  HistoryEntry e;
  e.suggestion = parse_suggestion(j.at("suggestion").get<std::string>());
  auto principle = principle_from_string(j.at("principle").get<std::string>());
  if (!principle) throw std::invalid_argument("unknown principle");
  e.principle = *principle;
  e.committed = j.at("committed").get<bool>();
  e.ok = j.at("ok").get<bool>();
  e.error_code = j.at("error_code").get<std::string>();
  e.error_message = j.at("error_message").get<std::string>();
  e.hplan = j.at("hplan").get<std::vector<std::string>>();
  e.explanation = j.at("explanation");
  if (!j.at("hmodel").is_null()) {
    e.hmodel = HModelResult{model_from_json(j.at("hmodel")),
                            j.at("introduced_facts").get<std::set<Fact>>()};
  }
  return e;
}

// Parses "/sessions/{id}/tail" into segments.
std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : path) {
    if (c == '?') break;
    if (c == '/') {
      if (!current.empty()) parts.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) parts.push_back(std::move(current));
  return parts;
}

Response error_response(const Error& e) {
  json detail = nullptr;
  if (const auto* s = dynamic_cast<const SyntaxError*>(&e)) {
    detail = {{"origin", s->origin()}, {"line", s->line()}, {"column", s->column()}};
  } else if (const auto* s = dynamic_cast<const SemanticError*>(&e)) {
    detail = {{"origin", s->origin()}, {"line", s->line()}, {"column", s->column()}};
  } else if (const auto* v = dynamic_cast<const ValidationFailed*>(&e)) {
    detail = {{"step", v->step()}};
  }
  return {http_status(e.code()), error_body(to_string(e.code()), e.what(), detail), {}};
}

Response not_found(const std::string& what) {
  return {404, error_body("NotFound", what + " not found"), {}};
}

Response bad_request(const std::string& message) {
  return {400, error_body("BadRequest", message), {}};
}

Response conflict(const std::string& message) {
  return {409, error_body("Conflict", message), {}};
}

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  json j = json::parse(body);  // json::parse_error handled by handle()
  if (!j.is_object()) throw std::invalid_argument("request body must be a JSON object");
  return j;
}

PrincipleId require_principle(const json& body) {
  if (!body.contains("principle") || !body["principle"].is_string()) {
    throw std::invalid_argument("missing 'principle'");
  }
  auto principle = principle_from_string(body["principle"].get<std::string>());
  if (!principle) {
    throw std::invalid_argument("unknown principle '" +
                                body["principle"].get<std::string>() + "'");
  }
  return *principle;
}

}  // namespace

// ---------------------------------------------------------------------------
// SessionStore

std::string SessionStore::insert(Session session) {
  std::unique_lock lock(mutex_);
  if (session.id.empty()) {
    do {
      session.id = new_session_id();
    } while (slots_.contains(session.id));
  }
  std::string id = session.id;
  auto slot = std::make_shared<Slot>();
  slot->session = std::move(session);
  slots_[id] = std::move(slot);
  return id;
}

std::optional<SessionStore::Locked> SessionStore::find(const std::string& id) {
  std::shared_ptr<Slot> slot;
  {
    std::shared_lock lock(mutex_);
    auto it = slots_.find(id);
    if (it == slots_.end()) return std::nullopt;
    slot = it->second;
  }
  std::unique_lock session_lock(slot->mutex);
  {
    // Erased while we waited for the session.
    std::shared_lock lock(mutex_);
    auto it = slots_.find(id);
    if (it == slots_.end() || it->second != slot) return std::nullopt;
  }
  Session* session = &slot->session;
  return Locked(std::move(slot), std::move(session_lock), session);
}

bool SessionStore::erase(const std::string& id) {
  std::shared_ptr<Slot> slot;
  {
    std::unique_lock lock(mutex_);
    auto it = slots_.find(id);
    if (it == slots_.end()) return false;
    slot = std::move(it->second);
    slots_.erase(it);
  }
  // Wait for in-flight operations on the session.
  std::lock_guard session_lock(slot->mutex);
  return true;
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mutex_);
  return slots_.size();
}

std::vector<Session> SessionStore::copy_all() const {
  std::vector<std::shared_ptr<Slot>> slots;
  {
    std::shared_lock lock(mutex_);
    for (const auto& [id, slot] : slots_) slots.push_back(slot);
  }
  std::vector<Session> out;
  for (const auto& slot : slots) {
    std::lock_guard lock(slot->mutex);
    out.push_back(slot->session);
  }
  return out;
}

json session_to_json(const Session& s) {
  json history = json::array();
  for (const auto& e : s.history) history.push_back(history_entry_json(e));
  return {
      {"id", s.id},
      {"base", model_json(s.base_model)},
      {"current", model_json(s.current_model)},
      {"plan", s.current_plan.steps},
      {"objective", to_string(s.objective)},
      {"budget", budget_json(s.budget)},
      {"history", std::move(history)},
      {"created_at", s.created_at},
      {"updated_at", s.updated_at},
  };
}

Session session_from_json(const json& j) {
  Session s;
  s.id = j.at("id").get<std::string>();
  s.base_model = model_from_json(j.at("base"));
  s.current_model = model_from_json(j.at("current"));
  s.current_plan =
      execute_plan(s.current_model, j.at("plan").get<std::vector<std::string>>());
  s.objective = objective_from_string(j.at("objective").get<std::string>());
  s.budget = budget_from_json(j.at("budget"));
  for (const auto& e : j.at("history")) {
    s.history.push_back(history_entry_from_json(e));
  }
  s.created_at = j.at("created_at").get<std::int64_t>();
  s.updated_at = j.at("updated_at").get<std::int64_t>();
  return s;
}

void SessionStore::snapshot(const std::string& path) const {
  json sessions = json::array();
  for (const auto& s : copy_all()) sessions.push_back(session_to_json(s));
  json doc = {{"version", kSnapshotVersion}, {"sessions", std::move(sessions)}};

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write snapshot " + tmp);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing snapshot " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("cannot move snapshot into place at " + path);
  }
}

void SessionStore::restore(const std::string& path) {
  std::map<std::string, std::shared_ptr<Slot>> restored;
  try {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    json doc = json::parse(in);
    if (doc.at("version").get<int>() != kSnapshotVersion) {
      throw std::runtime_error("unsupported snapshot version");
    }
    for (const auto& entry : doc.at("sessions")) {
      auto slot = std::make_shared<Slot>();
      slot->session = session_from_json(entry);
      const std::string id = slot->session.id;
      if (!restored.emplace(id, std::move(slot)).second) {
        throw std::runtime_error("duplicate session id " + id);
      }
    }
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kRestoreFailed,
                "cannot restore sessions from " + path + ": " + e.what());
  }
  std::unique_lock lock(mutex_);
  slots_ = std::move(restored);
}

// ---------------------------------------------------------------------------
// Service

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError:
    case ErrorCode::kSemanticError:
    case ErrorCode::kInvalidModel:
    case ErrorCode::kInvalidSuggestion:
    case ErrorCode::kUnknownAction:
      return 400;
    case ErrorCode::kRestoreFailed:
      return 500;
    case ErrorCode::kPreconditionViolation:
    case ErrorCode::kInvalidPlan:
    case ErrorCode::kNoPlanFound:
    case ErrorCode::kBudgetExceeded:
    case ErrorCode::kSizeExceeded:
    case ErrorCode::kConflictingSuggestion:
    case ErrorCode::kValidationFailed:
      return 422;
  }
  return 500;
}

json error_body(const std::string& code, const std::string& message,
                json detail) {
  return {{"code", code}, {"message", message}, {"detail", std::move(detail)}};
}

json session_summary(const Session& s) {
  return {
      {"id", s.id},
      {"plan", plan_json(s.current_plan)},
      {"provenance", s.current_model.provenance},
      {"objective", to_string(s.objective)},
      {"budget", budget_json(s.budget)},
      {"history_size", s.history.size()},
      {"created_at", s.created_at},
      {"updated_at", s.updated_at},
  };
}

Response Service::handle(const std::string& method, const std::string& path,
                         const std::string& body) {
  const auto parts = split_path(path);
  try {
    if (parts.size() == 1 && parts[0] == "sessions" && method == "POST") {
      return create_session(parse_body(body));
    }
    if (parts.size() == 2 && parts[0] == "admin" && parts[1] == "snapshot" &&
        method == "POST") {
      return take_snapshot();
    }
    if (parts.size() >= 2 && parts[0] == "sessions") {
      const std::string& id = parts[1];
      if (parts.size() == 2) {
        if (method == "GET") return get_session(id);
        if (method == "DELETE") return delete_session(id);
      } else if (parts.size() == 3) {
        const std::string& tail = parts[2];
        if (tail == "plan" && method == "GET") return get_plan(id);
        if (tail == "history" && method == "GET") return get_history(id);
        if (tail == "evaluate" && method == "POST") {
          return evaluate_plan(id, parse_body(body));
        }
        if (tail == "suggest" && method == "POST") {
          return suggest(id, parse_body(body));
        }
        if (tail == "commit" && method == "POST") {
          return commit(id, parse_body(body));
        }
      }
    }
    return not_found("route " + method + " " + path);
  } catch (const Error& e) {
    return error_response(e);
  } catch (const json::exception& e) {
    return bad_request(std::string("malformed request: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return bad_request(e.what());
  } catch (const std::exception& e) {
    return {500, error_body("InternalError", e.what()), {}};
  }
}

Response Service::create_session(const json& body) {
  if (!body.contains("domain") || !body.contains("problem")) {
    return bad_request("'domain' and 'problem' are required");
  }
  Session s;
  s.base_model = parse_model({body["domain"].get<std::string>(), "domain"},
                             {body["problem"].get<std::string>(), "problem"});
  s.current_model = s.base_model;
  s.objective = objective_from_string(body.value("objective", "min-cost"));
  s.budget = budget_from_json(body.value("budget", json()));
  if (body.contains("plan") && !body["plan"].is_null()) {
    Plan imported = execute_plan(s.base_model,
                                 body["plan"].get<std::vector<std::string>>());
    if (!check_goal(s.base_model, imported)) {
      throw Error(ErrorCode::kInvalidPlan, "imported plan does not reach the goal");
    }
    s.current_plan = std::move(imported);
  } else {
    s.current_plan = find_plan(s.base_model, s.objective, s.budget);
  }
  s.created_at = s.updated_at = now_ms();
  json summary = session_summary(s);
  summary["id"] = store_.insert(std::move(s));
  return {201, std::move(summary), {}};
}

Response Service::get_session(const std::string& id) {
  auto s = store_.find(id);
  if (!s) return not_found("session " + id);
  return {200, session_summary(**s), {}};
}

Response Service::get_plan(const std::string& id) {
  auto s = store_.find(id);
  if (!s) return not_found("session " + id);
  const Session& session = **s;
  json intrinsic = json::object();
  json display = json::object();
  for (const auto& step : session.current_plan.steps) {
    const Action* a = session.current_model.find_action(step);
    intrinsic[step] = to_string(a->intrinsic);
    if (auto it = session.base_model.display.find(step);
        it != session.base_model.display.end()) {
      display[step] = it->second;
    }
  }
  json out = plan_json(session.current_plan);
  out["intrinsic"] = std::move(intrinsic);
  out["display"] = std::move(display);
  out["goal_satisfied"] = check_goal(session.current_model, session.current_plan);
  json actions = json::array();
  for (const auto& a : session.current_model.actions) actions.push_back(a.name);
  out["actions"] = std::move(actions);
  return {200, std::move(out), {}};
}

Response Service::evaluate_plan(const std::string& id, const json& body) {
  const PrincipleId principle = require_principle(body);
  auto s = store_.find(id);
  if (!s) return not_found("session " + id);
  const Session& session = **s;
  Verdict verdict = evaluate(principle, session.current_model,
                             session.current_plan, session.budget);
  return {200, evaluation_json(verdict, reasons_for(verdict)), {}};
}

Response Service::suggest(const std::string& id, const json& body) {
  if (!body.contains("suggestion") || !body["suggestion"].is_string()) {
    return bad_request("missing 'suggestion'");
  }
  const Suggestion suggestion =
      parse_suggestion(body["suggestion"].get<std::string>());
  const PrincipleId principle = require_principle(body);
  auto s = store_.find(id);
  if (!s) return not_found("session " + id);
  Session& session = **s;

  HistoryEntry entry;
  entry.suggestion = suggestion;
  entry.principle = principle;
  Response response;
  try {
    ExplanationProblem problem{session.current_model, session.current_plan,
                               suggestion, principle};
    ContrastiveExplanation e = solve_explanation_problem(
        problem, session.budget, internal_planner(session.objective));
    entry.ok = true;
    entry.hplan = e.hplan;
    entry.explanation = to_json(e);
    entry.hmodel = std::move(e.hmodel);
    response = {200, entry.explanation, {}};
  } catch (const Error& e) {
    if (http_status(e.code()) != 422) throw;
    entry.ok = false;
    entry.error_code = to_string(e.code());
    entry.error_message = e.what();
    response = error_response(e);
  }
  session.history.push_back(std::move(entry));
  session.updated_at = now_ms();
  response.headers["X-History-Index"] = std::to_string(session.history.size() - 1);
  return response;
}

Response Service::commit(const std::string& id, const json& body) {
  if (!body.contains("index") || !body["index"].is_number_integer()) {
    return bad_request("missing integer 'index'");
  }
  const auto index = body["index"].get<std::int64_t>();
  auto s = store_.find(id);
  if (!s) return not_found("session " + id);
  Session& session = **s;
  if (index < 0 || static_cast<std::size_t>(index) >= session.history.size()) {
    return not_found("history entry " + std::to_string(index));
  }
  HistoryEntry& entry = session.history[static_cast<std::size_t>(index)];
  if (entry.committed) return conflict("history entry is already committed");
  if (!entry.ok || !entry.hmodel) {
    return conflict("history entry failed (" + entry.error_code +
                    ") and cannot be committed");
  }
  // The entry must have been compiled on top of the current model.
  std::vector<std::string> parent = entry.hmodel->hmodel.provenance;
  parent.pop_back();
  if (parent != session.current_model.provenance) {
    return conflict("history entry was explored against an older model");
  }
  session.current_model = entry.hmodel->hmodel;
  session.current_plan = execute_plan(session.current_model, entry.hplan);
  entry.committed = true;
  session.updated_at = now_ms();
  return {200, session_summary(session), {}};
}

Response Service::get_history(const std::string& id) {
  auto s = store_.find(id);
  if (!s) return not_found("session " + id);
  json out = json::array();
  const auto& history = (*s)->history;
  for (std::size_t i = 0; i < history.size(); ++i) {
    const HistoryEntry& e = history[i];
    json item = {{"index", i},
                 {"suggestion", e.suggestion.id()},
                 {"principle", to_string(e.principle)},
                 {"committed", e.committed},
                 {"ok", e.ok}};
    if (e.ok) {
      item["explanation"] = e.explanation;
    } else {
      item["error"] = error_body(e.error_code, e.error_message);
    }
    out.push_back(std::move(item));
  }
  return {200, std::move(out), {}};
}

Response Service::delete_session(const std::string& id) {
  if (!store_.erase(id)) return not_found("session " + id);
  return {204, nullptr, {}};
}

Response Service::take_snapshot() {
  if (!snapshot_path_) return conflict("no snapshot path configured");
  store_.snapshot(*snapshot_path_);
  return {200, {{"path", *snapshot_path_}, {"sessions", store_.size()}}, {}};
}

}  // namespace ethex

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ethex/error.hpp"
#include "ethex/explain.hpp"
#include "ethex/json_io.hpp"

namespace ethex {

struct HistoryEntry {
  Suggestion suggestion;
  PrincipleId principle = PrincipleId::kDeontology;
  bool committed = false;
  /// False when the suggestion could not be explained (no plan, failed
  /// validation); such entries cannot be committed.
  bool ok = false;
  std::string error_code;
  std::string error_message;
  std::optional<HModelResult> hmodel;
  std::vector<std::string> hplan;
  json explanation;  // the /suggest payload, null when !ok

  bool operator==(const HistoryEntry&) const = default;
};

struct Session {
  std::string id;
  PlanningModel base_model;
  PlanningModel current_model;
  Plan current_plan;
  Objective objective = Objective::kMinCost;
  SearchBudget budget;
  std::vector<HistoryEntry> history;
  std::int64_t created_at = 0;  // milliseconds since the Unix epoch
  std::int64_t updated_at = 0;

  bool operator==(const Session&) const = default;
};

/// Thread-safe session map. Reads of the map are shared, insertions and
/// removals exclusive; each session additionally has its own mutex that
/// serializes every operation on it.
class SessionStore {
  struct Slot;

 public:
  class Locked {
   public:
    Session& operator*() const { return *session_; }
    Session* operator->() const { return session_; }

   private:
    friend class SessionStore;
    Locked(std::shared_ptr<Slot> slot, std::unique_lock<std::mutex> lock,
           Session* session)
        : slot_(std::move(slot)), lock_(std::move(lock)), session_(session) {}

    std::shared_ptr<Slot> slot_;  // outlives lock_
    std::unique_lock<std::mutex> lock_;
    Session* session_;
  };

  std::string insert(Session session);
  std::optional<Locked> find(const std::string& id);
  bool erase(const std::string& id);
  std::size_t size() const;
  std::vector<Session> copy_all() const;

  /// Writes every session to one JSON file (atomically, via rename).
  void snapshot(const std::string& path) const;
  /// Replaces the store with the file's sessions. Throws
  /// Error(kRestoreFailed) and leaves the store untouched on any failure.
  void restore(const std::string& path);

 private:
  struct Slot {
    std::mutex mutex;
    Session session;
  };

  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
};

json session_to_json(const Session& session);
Session session_from_json(const json& j);

struct Response {
  int status = 200;
  json body;
  std::map<std::string, std::string> headers;
};

/// HTTP-independent request router for the workbench API.
class Service {
 public:
  explicit Service(std::optional<std::string> snapshot_path = std::nullopt)
      : snapshot_path_(std::move(snapshot_path)) {}

  Response handle(const std::string& method, const std::string& path,
                  const std::string& body);

  SessionStore& store() { return store_; }
  const std::optional<std::string>& snapshot_path() const {
    return snapshot_path_;
  }

 private:
  Response create_session(const json& body);
  Response get_session(const std::string& id);
  Response get_plan(const std::string& id);
  Response evaluate_plan(const std::string& id, const json& body);
  Response suggest(const std::string& id, const json& body);
  Response commit(const std::string& id, const json& body);
  Response get_history(const std::string& id);
  Response delete_session(const std::string& id);
  Response take_snapshot();

  SessionStore store_;
  std::optional<std::string> snapshot_path_;
};

/// HTTP status for an error category.
int http_status(ErrorCode code);
json error_body(const std::string& code, const std::string& message,
                json detail = nullptr);

/// Summary returned by POST /sessions, GET /sessions/{id} and commit.
json session_summary(const Session& session);

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::string> snapshot_path;

  /// Layers, lowest first: defaults, JSON config file (`listen`,
  /// `snapshot`), then ETHEX_LISTEN / ETHEX_SNAPSHOT.
  static ServiceConfig load(const std::optional<std::string>& config_file);
  void set_listen(const std::string& host_port);
};

/// JSON-over-HTTP adapter around a Service.
class HttpFrontend {
 public:
  explicit HttpFrontend(Service& service);
  ~HttpFrontend();
  HttpFrontend(const HttpFrontend&) = delete;
  HttpFrontend& operator=(const HttpFrontend&) = delete;

  /// Binds the listening socket; port 0 picks a free port. Returns the bound
  /// port, or -1 on failure.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  bool serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Serves the API until SIGINT or SIGTERM, restoring from and snapshotting to
/// the configured path. Returns the process exit code.
int run_server(const ServiceConfig& config);

}  // namespace ethex

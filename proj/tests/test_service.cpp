#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include <httplib.h>

#include "ethex/fixtures.hpp"
#include "ethex/parser.hpp"
#include "ethex/service.hpp"

using namespace ethex;

using Steps = std::vector<std::string>;

namespace {

const char* kFrankSentence =
    "The original plan is impermissible because lying to Frank is bad, whereas the "
    "HPlan is permissible because begging Frank is not bad";

json frank_body() {
  const SourcePair text = serialize_model(fixtures::robot_and_frank());
  return {{"domain", text.domain.text}, {"problem", text.problem.text}};
}

std::string create(Service& service, json body = frank_body()) {
  Response r = service.handle("POST", "/sessions", body.dump());
  REQUIRE(r.status == 201);
  return r.body.at("id").get<std::string>();
}

Response suggest(Service& service, const std::string& id, const std::string& suggestion,
                 const std::string& principle = "deontology") {
  return service.handle("POST", "/sessions/" + id + "/suggest",
                        json{{"suggestion", suggestion}, {"principle", principle}}.dump());
}

Response commit(Service& service, const std::string& id, int index) {
  return service.handle("POST", "/sessions/" + id + "/commit", json{{"index", index}}.dump());
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         (name + "_" + std::to_string(std::random_device{}()) + ".json");
}

std::vector<Session> sorted_sessions(const SessionStore& store) {
  auto all = store.copy_all();
  std::sort(all.begin(), all.end(),
            [](const Session& a, const Session& b) { return a.id < b.id; });
  return all;
}

}  // namespace

TEST_CASE("create session") {
  Service service;
  Response r = service.handle("POST", "/sessions", frank_body().dump());
  CHECK(r.status == 201);
  CHECK(r.body.at("plan").at("steps") == json::array({"lie_frank", "exercise"}));
  CHECK(r.body.at("plan").at("cost") == 2);
  CHECK(r.body.at("provenance") == json::array());
  CHECK(r.body.at("id").get<std::string>().size() == 16);

  json broken = frank_body();
  broken["domain"] = "(define (domain robot_and_frank)\n  (:facts a\n";
  Response bad = service.handle("POST", "/sessions", broken.dump());
  CHECK(bad.status == 400);
  CHECK(bad.body.at("code") == "SyntaxError");
  CHECK(bad.body.at("detail").at("line").get<int>() >= 1);
  CHECK(bad.body.at("detail").contains("column"));

  json unsolvable = frank_body();
  auto m = fixtures::robot_and_frank();
  m.facts.insert("flying");
  m.goal = {"flying"};
  const SourcePair text = serialize_model(m);
  unsolvable["domain"] = text.domain.text;
  unsolvable["problem"] = text.problem.text;
  Response none = service.handle("POST", "/sessions", unsolvable.dump());
  CHECK(none.status == 422);
  CHECK(none.body.at("code") == "NoPlanFound");

  CHECK(service.handle("POST", "/sessions", "{not json").status == 400);
  CHECK(service.handle("POST", "/sessions", "{}").status == 400);
}

TEST_CASE("imported plans") {
  Service service;
  json body = frank_body();
  body["plan"] = {"beg_frank", "exercise"};
  Response r = service.handle("POST", "/sessions", body.dump());
  CHECK(r.status == 201);
  CHECK(r.body.at("plan").at("steps") == json::array({"beg_frank", "exercise"}));

  body["plan"] = {"beg_frank"};
  Response short_plan = service.handle("POST", "/sessions", body.dump());
  CHECK(short_plan.status == 422);
  CHECK(short_plan.body.at("code") == "InvalidPlan");

  body["plan"] = {"exercise"};
  CHECK(service.handle("POST", "/sessions", body.dump()).status == 422);
}

TEST_CASE("read endpoints") {
  Service service;
  const std::string id = create(service);

  Response s = service.handle("GET", "/sessions/" + id, "");
  CHECK(s.status == 200);
  CHECK(s.body.at("history_size") == 0);

  Response plan = service.handle("GET", "/sessions/" + id + "/plan", "");
  CHECK(plan.status == 200);
  CHECK(plan.body.at("steps") == json::array({"lie_frank", "exercise"}));
  CHECK(plan.body.at("intrinsic").at("lie_frank") == "bad");
  CHECK(plan.body.at("display").at("lie_frank") == "lying to Frank");
  CHECK(plan.body.at("goal_satisfied") == true);
  CHECK(plan.body.at("actions") == json::array({"lie_frank", "beg_frank", "exercise"}));

  Response eval = service.handle("POST", "/sessions/" + id + "/evaluate",
                                 json{{"principle", "deontology"}}.dump());
  CHECK(eval.status == 200);
  CHECK(eval.body.at("verdict").at("permissible") == false);
  CHECK(eval.body.at("reasons").at("sufficient_and_necessary") ==
        json::array({"(Bad(lie_frank))"}));

  CHECK(service.handle("POST", "/sessions/" + id + "/evaluate",
                       json{{"principle", "virtue"}}.dump())
            .status == 400);
  CHECK(service.handle("GET", "/sessions/nope", "").status == 404);
  CHECK(service.handle("GET", "/sessions/nope/plan", "").status == 404);
  CHECK(service.handle("GET", "/elsewhere", "").status == 404);

  // GETs leave the session untouched.
  const auto before = sorted_sessions(service.store());
  service.handle("GET", "/sessions/" + id, "");
  service.handle("GET", "/sessions/" + id + "/plan", "");
  service.handle("GET", "/sessions/" + id + "/history", "");
  CHECK(sorted_sessions(service.store()) == before);
}

TEST_CASE("suggest") {
  Service service;
  const std::string id = create(service);

  Response replace = suggest(service, id, "replace lie_frank with beg_frank");
  CHECK(replace.status == 200);
  CHECK(replace.body.at("nl") == kFrankSentence);
  CHECK(replace.headers.at("X-History-Index") == "0");

  Response forbid = suggest(service, id, "forbid exercise");
  CHECK(forbid.status == 422);
  CHECK(forbid.body.at("code") == "NoPlanFound");
  CHECK(forbid.headers.at("X-History-Index") == "1");

  Response order = suggest(service, id, "order beg_frank before exercise");
  CHECK(order.status == 200);
  CHECK(order.body.at("hplan").at("steps") == json::array({"beg_frank", "exercise"}));
  CHECK(order.body.at("hplan").at("verdict").at("permissible") == true);

  CHECK(suggest(service, id, "swap a b").status == 400);
  CHECK(suggest(service, id, "forbid fly").status == 400);
  CHECK(suggest(service, "nope", "forbid lie_frank").status == 404);

  Response history = service.handle("GET", "/sessions/" + id + "/history", "");
  REQUIRE(history.body.size() == 3);
  CHECK(history.body[0].at("ok") == true);
  CHECK(history.body[0].at("explanation").at("nl") == kFrankSentence);
  CHECK(history.body[1].at("ok") == false);
  CHECK(history.body[1].at("error").at("code") == "NoPlanFound");
  CHECK(history.body[2].at("committed") == false);
}

TEST_CASE("commit") {
  Service service;
  const std::string id = create(service);
  suggest(service, id, "replace lie_frank with beg_frank");
  suggest(service, id, "forbid exercise");
  suggest(service, id, "forbid beg_frank");

  Response ok = commit(service, id, 0);
  CHECK(ok.status == 200);
  CHECK(ok.body.at("plan").at("steps") == json::array({"beg_frank", "exercise"}));
  CHECK(ok.body.at("provenance") == json::array({"replace lie_frank with beg_frank"}));

  CHECK(commit(service, id, 0).status == 409);   // twice
  CHECK(commit(service, id, 1).status == 409);   // failed entry
  CHECK(commit(service, id, 2).status == 409);   // explored against the old model
  CHECK(commit(service, id, 7).status == 404);
  CHECK(service.handle("POST", "/sessions/" + id + "/commit", "{}").status == 400);

  // Later suggestions build on the committed model.
  Response conflict = suggest(service, id, "force lie_frank");
  CHECK(conflict.status == 422);
  CHECK(conflict.body.at("code") == "ConflictingSuggestion");

  auto session = service.store().find(id);
  REQUIRE(session);
  CHECK((*session)->base_model == fixtures::robot_and_frank());
  CHECK((*session)->current_model.provenance == Steps{"replace lie_frank with beg_frank"});
}

TEST_CASE("iteration law") {
  const auto base = fixtures::robot_and_frank();
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"forbid lie_frank", "order beg_frank before exercise"},
      {"replace lie_frank with beg_frank", "order beg_frank before exercise"},
      {"force beg_frank", "forbid lie_frank"},
      {"order lie_frank before exercise", "force beg_frank"},
  };
  for (const auto& [first, second] : pairs) {
    Service service;
    const std::string id = create(service);
    REQUIRE(suggest(service, id, first).status == 200);
    REQUIRE(commit(service, id, 0).status == 200);
    REQUIRE(suggest(service, id, second).status == 200);

    auto session = service.store().find(id);
    const HistoryEntry& entry = (*session)->history.at(1);
    const std::vector<Suggestion> chain = {parse_suggestion(first), parse_suggestion(second)};
    CHECK(entry.hmodel->hmodel == compile_chain(base, chain).hmodel);
    CHECK((*session)->base_model == base);
  }
}

TEST_CASE("delete") {
  Service service;
  const std::string id = create(service);
  CHECK(service.handle("DELETE", "/sessions/" + id, "").status == 204);
  CHECK(service.handle("DELETE", "/sessions/" + id, "").status == 404);
  CHECK(service.handle("GET", "/sessions/" + id, "").status == 404);
}

TEST_CASE("snapshot and restore") {
  const auto path = temp_file("ethex_snapshot");
  Service service(path.string());
  const std::string a = create(service);
  const std::string b = create(service);
  suggest(service, a, "replace lie_frank with beg_frank");
  suggest(service, a, "forbid exercise");
  commit(service, a, 0);
  suggest(service, b, "order beg_frank before exercise", "double-effect");

  Response snap = service.handle("POST", "/admin/snapshot", "");
  CHECK(snap.status == 200);
  CHECK(snap.body.at("sessions") == 2);

  SessionStore restored;
  restored.restore(path.string());
  CHECK(sorted_sessions(restored) == sorted_sessions(service.store()));

  SUBCASE("a corrupt file leaves the store untouched") {
    const auto empty = temp_file("ethex_empty");
    std::ofstream(empty).close();
    const auto before = sorted_sessions(restored);
    try {
      restored.restore(empty.string());
      FAIL("expected RestoreFailed");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kRestoreFailed);
    }
    CHECK(sorted_sessions(restored) == before);

    std::ofstream(empty) << R"({"version": 1, "sessions": [{"id": "x"}]})";
    CHECK_THROWS_AS(restored.restore(empty.string()), Error);
    CHECK(sorted_sessions(restored) == before);
    CHECK_THROWS_AS(restored.restore((empty.string() + ".missing")), Error);
    std::filesystem::remove(empty);
  }

  SUBCASE("an empty store snapshots to an empty list") {
    const auto zero = temp_file("ethex_zero");
    SessionStore nothing;
    nothing.snapshot(zero.string());
    std::ifstream in(zero);
    const json doc = json::parse(in);
    CHECK(doc.at("sessions") == json::array());
    SessionStore back;
    back.restore(zero.string());
    CHECK(back.size() == 0);
    std::filesystem::remove(zero);
  }

  std::filesystem::remove(path);
  CHECK(Service().handle("POST", "/admin/snapshot", "").status == 409);
}

TEST_CASE("concurrent sessions") {
  Service service;
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(create(service));
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      const std::string& id = ids[t % ids.size()];
      for (int k = 0; k < 5; ++k) {
        if (suggest(service, id, "replace lie_frank with beg_frank").status == 200) ++ok;
        service.handle("GET", "/sessions/" + id, "");
      }
    });
  }
  for (auto& t : threads) t.join();
  CHECK(ok == 40);
  for (const auto& id : ids) {
    auto s = service.store().find(id);
    CHECK((*s)->history.size() == 10);
  }
}

TEST_CASE("configuration layers") {
  const auto path = temp_file("ethex_config");
  std::ofstream(path) << R"({"listen": "0.0.0.0:9001", "snapshot": "/tmp/x.json"})";
  ServiceConfig c = ServiceConfig::load(path.string());
  CHECK(c.host == "0.0.0.0");
  CHECK(c.port == 9001);
  CHECK(c.snapshot_path == "/tmp/x.json");

  ::setenv("ETHEX_LISTEN", "127.0.0.1:9100", 1);
  c = ServiceConfig::load(path.string());
  CHECK(c.port == 9100);
  ::unsetenv("ETHEX_LISTEN");

  CHECK(ServiceConfig::load(std::nullopt).port == 8080);
  CHECK_THROWS(c.set_listen("nocolon"));
  std::filesystem::remove(path);
}

TEST_CASE("live HTTP round trip") {
  Service service;
  HttpFrontend frontend(service);
  const int port = frontend.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread server([&] { frontend.serve(); });

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/sessions", frank_body().dump(), "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "*");
  const std::string id = json::parse(created->body).at("id");

  auto explained = client.Post("/sessions/" + id + "/suggest",
                               json{{"suggestion", "replace lie_frank with beg_frank"},
                                    {"principle", "deontology"}}
                                   .dump(),
                               "application/json");
  REQUIRE(explained);
  CHECK(explained->status == 200);
  CHECK(explained->get_header_value("X-History-Index") == "0");
  CHECK(json::parse(explained->body).at("nl") == kFrankSentence);
  CHECK(explained->body == dump_payload(json::parse(explained->body)));

  auto committed = client.Post("/sessions/" + id + "/commit", R"({"index": 0})",
                               "application/json");
  REQUIRE(committed);
  CHECK(json::parse(committed->body).at("plan").at("steps") ==
        json::array({"beg_frank", "exercise"}));

  auto removed = client.Delete("/sessions/" + id);
  REQUIRE(removed);
  CHECK(removed->status == 204);
  auto missing = client.Get("/sessions/" + id);
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body).at("code") == "NotFound");

  frontend.stop();
  server.join();
}

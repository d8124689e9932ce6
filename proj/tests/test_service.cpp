#include <atomic>
#include <thread>

#include "doctest.h"
#include "httplib.h"

#include "heapgame/service.hpp"

using namespace heapgame;
using namespace heapgame::service;

namespace {

json body_of(const Reply& r) { return r.body; }

std::string create(GameService& svc, const json& req) {
  const Reply r = svc.create_session(req.dump());
  REQUIRE(r.status == 201);
  return r.body["id"].get<std::string>();
}

json subset_move(std::vector<Tokens> amounts) { return {{"type", "subset"}, {"amounts", amounts}}; }

}  // namespace

TEST_CASE("health") {
  GameService svc;
  CHECK(svc.health().status == 200);
  CHECK(svc.health().body["status"] == "ok");
}

TEST_CASE("POST /analyze") {
  GameService svc;
  const Reply p = svc.analyze(R"({"k":4,"heaps":[3,3,4,4]})");
  CHECK(p.status == 200);
  CHECK(p.body["verdict"] == "P");
  CHECK(p.body["class_index"] == 2);

  const Reply n = svc.analyze(R"({"k":4,"heaps":[7,7,7,8]})");
  CHECK(n.status == 200);
  CHECK(n.body["verdict"] == "N");
  CHECK(n.body["winning_move"] == json{{"type", "diagonal"}, {"t", 6}});

  const Reply labeled = svc.analyze(R"({"heaps":[6,3,3,3]})");
  CHECK(labeled.body["winning_move"] == subset_move({1, 0, 0, 0}));
  CHECK(labeled.body["canonical"] == json{3, 3, 3, 6});

  const Reply two = svc.analyze(R"({"k":2,"heaps":[1,2]})");
  CHECK(two.status == 422);
  CHECK(two.body["error"].get<std::string>().find("/wythoff/analyze") != std::string::npos);

  CHECK(svc.analyze("not json").status == 400);
  CHECK(svc.analyze("[1,2,3]").status == 400);
  CHECK(svc.analyze(R"({"heaps":[1,-2,3]})").status == 400);
  CHECK(svc.analyze(R"({"k":4,"heaps":[1,2,3]})").status == 400);
  CHECK(svc.analyze(R"({"heaps":[18446744073709551615,1,1]})").status == 422);
}

TEST_CASE("POST /wythoff/analyze") {
  GameService svc;
  const Reply p = svc.wythoff_analyze(R"({"heaps":[12,20]})");
  CHECK(p.status == 200);
  CHECK(p.body["verdict"] == "P");
  CHECK(p.body["index"] == 8);
  const Reply n = svc.wythoff_analyze(R"({"heaps":[12,21]})");
  CHECK(n.body["verdict"] == "N");
  CHECK(n.body.contains("winning_move"));
  CHECK(svc.wythoff_analyze(R"({"heaps":[1,2,3]})").status == 422);
}

TEST_CASE("engine moving first from (1,1,1,1) wins at once") {
  GameService svc;
  const Reply r = svc.create_session(R"({"k":4,"heaps":[1,1,1,1],"engine_side":"first"})");
  CHECK(r.status == 201);
  CHECK(r.body["heaps"] == json{0, 0, 0, 0});
  CHECK(r.body["status"] == "finished");
  CHECK(r.body["winner"] == "engine");
  CHECK(r.body["history"].size() == 1);
  CHECK(r.body["history"][0]["move"] == json{{"type", "diagonal"}, {"t", 1}});

  const std::string id = r.body["id"];
  CHECK(svc.get_session(id).body == r.body);
  CHECK(svc.move(id, R"({"move":{"type":"diagonal","t":1}})").status == 409);
}

TEST_CASE("human moves get the engine reply bundled") {
  GameService svc;
  const std::string id = create(svc, {{"heaps", {7, 7, 7, 8}}});
  const Reply r = svc.move(id, R"({"move":{"type":"diagonal","t":6},"ply":0})");
  CHECK(r.status == 200);
  const json s = r.body;
  CHECK(s["history"].size() == 2);
  CHECK(s["history"][0]["mover"] == "human");
  CHECK(s["history"][0]["heaps"] == json{1, 1, 1, 2});
  CHECK(s["history"][1]["mover"] == "engine");
  CHECK(s["ply"] == 2);
  // The human handed over a P-position, so the engine stalls on the largest heap.
  CHECK(s["heaps"] == json{1, 1, 1, 1});
  CHECK(s["status"] == "in_progress");
  CHECK(s["turn"] == "human");
}

TEST_CASE("engine replies land on P-positions") {
  GameService svc;
  const std::string id = create(svc, {{"heaps", {5, 9, 4, 11}}});
  json state = body_of(svc.get_session(id));
  for (int guard = 0; guard < 100 && state["status"] == "in_progress"; ++guard) {
    std::vector<Tokens> heaps = state["heaps"];
    // Take one token from the first nonempty heap.
    std::vector<Tokens> amounts(heaps.size(), 0);
    for (std::size_t i = 0; i < heaps.size(); ++i)
      if (heaps[i] > 0) {
        amounts[i] = 1;
        break;
      }
    const Reply r = svc.move(id, json{{"move", subset_move(amounts)}, {"ply", state["ply"]}}.dump());
    REQUIRE(r.status == 200);
    state = r.body;
    const json& hist = state["history"];
    const json& human = hist[hist.size() - (hist.back()["mover"] == "engine" ? 2 : 1)];
    const bool human_left_n = !is_p_position(Position::canonical(human["heaps"].get<std::vector<Tokens>>()));
    if (hist.back()["mover"] == "engine" && human_left_n)
      REQUIRE(is_p_position(Position::canonical(hist.back()["heaps"].get<std::vector<Tokens>>())));
  }
  CHECK(state["status"] == "finished");
}

TEST_CASE("session errors") {
  GameService svc;
  CHECK(svc.get_session("ffff").status == 404);
  CHECK(svc.move("ffff", R"({"move":{"type":"diagonal","t":1}})").status == 404);

  CHECK(svc.create_session(R"({"heaps":[1,2]})").status == 422);
  CHECK(svc.create_session(R"({"heaps":[1,2,3],"engine_side":"middle"})").status == 400);
  CHECK(svc.create_session("{").status == 400);

  const std::string id = create(svc, {{"heaps", {3, 3, 4, 5}}});
  const Reply all = svc.move(id, json{{"move", subset_move({1, 1, 1, 1})}}.dump());
  CHECK(all.status == 422);
  CHECK(all.body["rule"] == "at most k-1 heaps may be reduced by a subset move");

  const Reply too_many = svc.move(id, json{{"move", subset_move({4, 0, 0, 0})}}.dump());
  CHECK(too_many.status == 422);
  CHECK(svc.move(id, R"({"move":{"type":"spin"}})").status == 400);
  CHECK(svc.move(id, R"({"mv":1})").status == 400);
  CHECK(svc.move(id, R"({"move":{"type":"diagonal","t":1},"ply":5})").status == 409);
  CHECK(svc.get_session(id).body["ply"] == 0);
}

TEST_CASE("terminal starting positions") {
  GameService svc;
  const Reply engine_first = svc.create_session(R"({"heaps":[0,0,0],"engine_side":"first"})");
  CHECK(engine_first.body["winner"] == "human");
  const Reply human_first = svc.create_session(R"({"heaps":[0,0,0]})");
  CHECK(human_first.body["winner"] == "engine");
}

TEST_CASE("concurrent moves with the same ply: one wins, one conflicts") {
  for (int round = 0; round < 20; ++round) {
    GameService svc;
    const std::string id = create(svc, {{"heaps", {9, 9, 9, 9}}});
    const std::string body = json{{"move", subset_move({0, 0, 0, 1})}, {"ply", 0}}.dump();
    std::atomic<int> ok{0}, conflict{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 2; ++t)
      threads.emplace_back([&] {
        const int status = svc.move(id, body).status;
        if (status == 200) ++ok;
        else if (status == 409) ++conflict;
      });
    for (auto& t : threads) t.join();
    REQUIRE(ok == 1);
    REQUIRE(conflict == 1);
  }
}

TEST_CASE("idle sessions are evicted") {
  ServiceConfig cfg;
  cfg.session_ttl = std::chrono::seconds(10);
  GameService svc(cfg);
  const std::string id = create(svc, {{"heaps", {2, 3, 4}}});
  CHECK(svc.session_count() == 1);
  CHECK(svc.evict_expired(Clock::now()) == 0);
  CHECK(svc.evict_expired(Clock::now() + std::chrono::seconds(11)) == 1);
  CHECK(svc.session_count() == 0);
  CHECK(svc.get_session(id).status == 404);
}

TEST_CASE("HTTP end to end") {
  GameService svc;
  httplib::Server server;
  svc.mount(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);

  auto analysis = client.Post("/analyze", R"({"k":4,"heaps":[3,3,4,4]})", "application/json");
  REQUIRE(analysis);
  CHECK(analysis->status == 200);
  CHECK(json::parse(analysis->body)["class_index"] == 2);

  auto created =
      client.Post("/sessions", R"({"k":4,"heaps":[1,1,1,1],"engine_side":"first"})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const json session = json::parse(created->body);
  CHECK(session["status"] == "finished");
  CHECK(session["winner"] == "engine");

  auto fetched = client.Get("/sessions/" + session["id"].get<std::string>());
  REQUIRE(fetched);
  CHECK(json::parse(fetched->body) == session);

  auto late = client.Post("/sessions/" + session["id"].get<std::string>() + "/move",
                          R"({"move":{"type":"diagonal","t":1}})", "application/json");
  REQUIRE(late);
  CHECK(late->status == 409);

  auto missing = client.Get("/sessions/deadbeef");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  server.stop();
  thread.join();
}

#include "heapgame/service.hpp"

#include <algorithm>
#include <cstdio>

#include "httplib.h"

#include "heapgame/wire.hpp"
#include "heapgame/wythoff.hpp"

namespace heapgame::service {

namespace {

Reply error(int status, std::string message) { return {status, json{{"error", std::move(message)}}}; }

bool all_empty(const std::vector<Tokens>& heaps) {
  return std::all_of(heaps.begin(), heaps.end(), [](Tokens h) { return h == 0; });
}

std::optional<json> parse_body(std::string_view body) {
  json j = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

// Heaps from {k?, heaps}; k, when given, must match the heap count.
std::vector<Tokens> game_heaps(const json& j) {
  if (!j.contains("heaps")) throw DomainError("missing 'heaps'");
  std::vector<Tokens> heaps = wire::heaps_from_json(j["heaps"]);
  if (j.contains("k")) {
    if (!j["k"].is_number_unsigned()) throw DomainError("'k' must be a nonnegative integer");
    if (j["k"].get<std::size_t>() != heaps.size())
      throw DomainError("'k' does not match the number of heaps");
  }
  return heaps;
}

// k < 3 is a different game; report it apart from malformed input.
std::optional<Reply> reject_small_k(const std::vector<Tokens>& heaps) {
  if (heaps.size() >= kMinHeaps) return std::nullopt;
  return error(422, "this game needs k >= 3 heaps; two-heap Wythoff is served at /wythoff/analyze");
}

void engine_plays(Session& s) {
  const Normalized nz = normalize(s.heaps);
  const std::optional<Move> reply = engine_reply(nz.position);
  if (!reply) return;
  Move labeled = to_caller_order(*reply, nz.permutation);
  s.heaps = apply_labeled(s.heaps, labeled);
  s.history.push_back({"engine", std::move(labeled), s.heaps});
  if (all_empty(s.heaps)) s.winner = "engine";
}

}  // namespace

json session_to_json(const Session& s) {
  json history = json::array();
  for (const auto& h : s.history)
    history.push_back({{"mover", h.mover}, {"move", wire::move_to_json(h.move)}, {"heaps", h.heaps}});
  std::vector<Tokens> canonical = s.heaps;
  std::sort(canonical.begin(), canonical.end());
  return {{"id", s.id},
          {"k", s.heaps.size()},
          {"initial", s.initial},
          {"heaps", s.heaps},
          {"canonical", canonical},
          {"engine_side", s.engine_side == Side::first ? "first" : "second"},
          {"status", s.finished() ? "finished" : "in_progress"},
          {"winner", s.winner ? json(*s.winner) : json(nullptr)},
          {"turn", s.finished() ? json(nullptr) : json("human")},
          {"ply", s.history.size()},
          {"history", std::move(history)}};
}

GameService::GameService(ServiceConfig config)
    : config_(std::move(config)), id_rng_(std::random_device{}()) {}

Reply GameService::health() const { return {200, json{{"status", "ok"}}}; }

Reply GameService::analyze(std::string_view body) const {
  const auto j = parse_body(body);
  if (!j) return error(400, "request body must be a JSON object");
  std::vector<Tokens> heaps;
  try {
    heaps = game_heaps(*j);
  } catch (const DomainError& e) {
    return error(400, e.what());
  }
  if (auto r = reject_small_k(heaps)) return *r;
  try {
    return {200, wire::analysis_record(heaps)};
  } catch (const Error& e) {
    return error(422, e.what());  // too many heaps or a total past 64 bits
  }
}

Reply GameService::wythoff_analyze(std::string_view body) const {
  const auto j = parse_body(body);
  if (!j) return error(400, "request body must be a JSON object");
  try {
    if (!j->contains("heaps")) throw DomainError("missing 'heaps'");
    const std::vector<Tokens> heaps = wire::heaps_from_json((*j)["heaps"]);
    if (heaps.size() != 2) return error(422, "Wythoff is played on exactly two heaps");
    const Verdict v = wythoff::wythoff_classify(heaps[0], heaps[1]);
    json out = {{"heaps", heaps}, {"verdict", std::string(to_string(v))}};
    if (v == Verdict::P) {
      out["index"] = std::max(heaps[0], heaps[1]) - std::min(heaps[0], heaps[1]);
    } else {
      const auto mv = *wythoff::wythoff_winning_move(heaps[0], heaps[1]);
      out["winning_move"] = {{"take", {mv.take_x, mv.take_y}}};
      out["result"] = {heaps[0] - mv.take_x, heaps[1] - mv.take_y};
    }
    return {200, std::move(out)};
  } catch (const ArithmeticRangeError& e) {
    return error(422, e.what());
  } catch (const DomainError& e) {
    return error(400, e.what());
  }
}

std::string GameService::fresh_id() {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id_rng_()));
  return buf;
}

Reply GameService::create_session(std::string_view body) {
  evict_expired(Clock::now());
  const auto j = parse_body(body);
  if (!j) return error(400, "request body must be a JSON object");
  auto slot = std::make_shared<Slot>();
  Session& s = slot->session;
  try {
    s.heaps = game_heaps(*j);
  } catch (const DomainError& e) {
    return error(400, e.what());
  }
  if (j->contains("engine_side")) {
    const json& side = (*j)["engine_side"];
    if (side == "first") s.engine_side = Side::first;
    else if (side == "second") s.engine_side = Side::second;
    else return error(400, "engine_side must be 'first' or 'second'");
  }
  if (auto r = reject_small_k(s.heaps)) return *r;
  try {
    normalize(s.heaps);  // heap count limit and token total
  } catch (const Error& e) {
    return error(422, e.what());
  }
  s.initial = s.heaps;
  s.last_access = Clock::now();
  if (all_empty(s.heaps)) {
    // Nobody can move; whoever is to move has lost.
    s.winner = s.engine_side == Side::first ? "human" : "engine";
  } else if (s.engine_side == Side::first) {
    engine_plays(s);
  }
  json out;
  {
    std::lock_guard lock(store_mutex_);
    do s.id = fresh_id();
    while (sessions_.contains(s.id));
    out = session_to_json(s);
    sessions_.emplace(s.id, std::move(slot));
  }
  return {201, std::move(out)};
}

std::shared_ptr<GameService::Slot> GameService::find(const std::string& id) {
  std::lock_guard lock(store_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

Reply GameService::get_session(const std::string& id) {
  evict_expired(Clock::now());
  auto slot = find(id);
  if (!slot) return error(404, "unknown session " + id);
  std::lock_guard lock(slot->mutex);
  slot->session.last_access = Clock::now();
  return {200, session_to_json(slot->session)};
}

Reply GameService::move(const std::string& id, std::string_view body) {
  evict_expired(Clock::now());
  auto slot = find(id);
  if (!slot) return error(404, "unknown session " + id);
  std::lock_guard lock(slot->mutex);
  Session& s = slot->session;
  s.last_access = Clock::now();
  if (s.finished()) return error(409, "game is finished");

  const auto j = parse_body(body);
  if (!j || !j->contains("move")) return error(400, "request body must be {\"move\": {...}}");
  if (j->contains("ply")) {
    const json& ply = (*j)["ply"];
    if (!ply.is_number_unsigned()) return error(400, "'ply' must be a nonnegative integer");
    if (ply.get<std::size_t>() != s.history.size())
      return error(409, "move out of turn: session is at ply " + std::to_string(s.history.size()));
  }
  Move mv;
  try {
    mv = wire::move_from_json((*j)["move"]);
    s.heaps = apply_labeled(s.heaps, mv);
  } catch (const IllegalMoveError& e) {
    Reply r = error(422, e.what());
    r.body["rule"] = e.rule();
    return r;
  } catch (const DomainError& e) {
    return error(400, e.what());
  }
  s.history.push_back({"human", std::move(mv), s.heaps});
  if (all_empty(s.heaps)) s.winner = "human";
  else engine_plays(s);
  return {200, session_to_json(s)};
}

std::size_t GameService::evict_expired(Clock::time_point now) {
  std::lock_guard lock(store_mutex_);
  std::size_t evicted = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock slot_lock(it->second->mutex, std::try_to_lock);
    // A slot that is locked is in use right now.
    if (slot_lock && now - it->second->session.last_access > config_.session_ttl) {
      slot_lock.unlock();
      it = sessions_.erase(it);
      ++evicted;
    } else {
      ++it;
    }
  }
  return evicted;
}

std::size_t GameService::session_count() const {
  std::lock_guard lock(store_mutex_);
  return sessions_.size();
}

void GameService::mount(httplib::Server& server) {
  auto send = [](httplib::Response& res, const Reply& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get("/health", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, health());
  });
  server.Post("/analyze", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, analyze(req.body));
  });
  server.Post("/wythoff/analyze", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, wythoff_analyze(req.body));
  });
  server.Post("/sessions", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, create_session(req.body));
  });
  server.Get(R"(/sessions/([0-9A-Za-z]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, get_session(req.matches[1]));
  });
  server.Post(R"(/sessions/([0-9A-Za-z]+)/move)",
              [this, send](const httplib::Request& req, httplib::Response& res) {
                send(res, move(req.matches[1], req.body));
              });
  if (!config_.static_dir.empty()) server.set_mount_point("/", config_.static_dir);
}

int serve(const ServiceConfig& config, const std::string& host, int port) {
  httplib::Server server;
  GameService service(config);
  service.mount(server);
  std::fprintf(stderr, "serving on http://%s:%d\n", host.c_str(), port);
  return server.listen(host, port) ? 0 : 1;
}

}  // namespace heapgame::service

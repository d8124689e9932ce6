#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "heapgame/strategy.hpp"

namespace httplib {
class Server;
}

// HTTP/JSON facade: stateless analysis plus in-memory play sessions.
//
//   POST /analyze               {k, heaps}                  -> analysis record
//   POST /wythoff/analyze       {heaps: [x, y]}             -> {verdict, index?, winning_move?}
//   POST /sessions              {k, heaps, engine_side}     -> session (201)
//   GET  /sessions/{id}                                     -> session
//   POST /sessions/{id}/move    {move, ply?}                -> session, engine reply included
//   GET  /health                                            -> {status: "ok"}
//
// Errors carry {"error": message} and, for illegal moves, {"rule": ...}.
namespace heapgame::service {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Reply {
  int status = 200;
  json body;
};

enum class Side { first, second };

struct ServiceConfig {
  std::chrono::seconds session_ttl{3600};
  std::string static_dir;  // served at "/" when non-empty
};

struct HistoryEntry {
  std::string mover;  // "engine" or "human"
  Move move;          // caller's heap order
  std::vector<Tokens> heaps;
};

struct Session {
  std::string id;
  std::vector<Tokens> initial;
  std::vector<Tokens> heaps;  // caller's heap order
  std::vector<HistoryEntry> history;
  Side engine_side = Side::second;
  std::optional<std::string> winner;  // set iff every heap is empty
  Clock::time_point last_access;

  bool finished() const noexcept { return winner.has_value(); }
};

json session_to_json(const Session& s);

class GameService {
 public:
  explicit GameService(ServiceConfig config = {});

  Reply health() const;
  Reply analyze(std::string_view body) const;
  Reply wythoff_analyze(std::string_view body) const;
  Reply create_session(std::string_view body);
  Reply get_session(const std::string& id);
  // A `ply` field, when present, must equal the session's history length;
  // otherwise the request is stale and gets 409.
  Reply move(const std::string& id, std::string_view body);

  std::size_t evict_expired(Clock::time_point now);
  std::size_t session_count() const;

  void mount(httplib::Server& server);

 private:
  struct Slot {
    std::mutex mutex;
    Session session;
  };

  std::shared_ptr<Slot> find(const std::string& id);
  std::string fresh_id();

  ServiceConfig config_;
  mutable std::mutex store_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::mt19937_64 id_rng_;
};

// Blocks serving on host:port. Returns nonzero when the socket cannot be bound.
int serve(const ServiceConfig& config, const std::string& host, int port);

}  // namespace heapgame::service

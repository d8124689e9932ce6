#include "heapgame/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include "CLI11.hpp"

#include "heapgame/density.hpp"
#include "heapgame/oracle.hpp"
#include "heapgame/service.hpp"
#include "heapgame/strategy.hpp"
#include "heapgame/wire.hpp"
#include "heapgame/wythoff.hpp"

namespace heapgame::cli {

namespace {

enum class Format { human, json_lines };

struct CliConfig {
  std::optional<std::size_t> k;
  std::optional<Tokens> bound;
  std::size_t cap = kDefaultFollowerCap;
  Format format = Format::human;
  std::string out_path;

  std::vector<Tokens> heaps;
  std::uint64_t class_n = 0;
  std::uint64_t density_n = 10;
  std::optional<std::size_t> pairs;
  std::string kernel = "parallel";
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  std::string engine_side = "second";
  std::string cache_path;

  std::string host = "127.0.0.1";
  int port = 8080;
  long ttl_seconds = 3600;
  std::string static_dir;
};

using wire::json;

bool all_empty(std::span<const Tokens> heaps) {
  return std::all_of(heaps.begin(), heaps.end(), [](Tokens h) { return h == 0; });
}

// Writes to --out when given, else to `out`.
template <class F>
int with_output(const CliConfig& cfg, std::ostream& out, F&& body) {
  if (cfg.out_path.empty()) return body(out);
  std::ofstream file(cfg.out_path);
  if (!file) throw DomainError("cannot open " + cfg.out_path + " for writing");
  return body(file);
}

std::size_t game_k(const CliConfig& cfg) {
  const std::size_t k = cfg.k.value_or(3);
  if (k == 2) throw DomainError("k=2 is classic Wythoff; use the `wythoff` command");
  if (k < kMinHeaps) throw DomainError("the game needs k >= 3");
  return k;
}

int cmd_analyze(const CliConfig& cfg, std::ostream& out) {
  const auto& heaps = cfg.heaps;
  if (heaps.size() == 2)
    throw DomainError("two heaps is classic Wythoff; use `heapgame wythoff X Y`");
  if (heaps.size() < kMinHeaps) throw DomainError("analyze needs at least 3 heap sizes");
  if (cfg.k && *cfg.k != heaps.size())
    throw DomainError("--k " + std::to_string(*cfg.k) + " does not match " +
                      std::to_string(heaps.size()) + " heap sizes");
  const json rec = wire::analysis_record(heaps);
  return with_output(cfg, out, [&](std::ostream& os) {
    if (cfg.format == Format::json_lines) {
      os << rec.dump() << '\n';
      return kOk;
    }
    if (rec["verdict"] == "P") {
      os << "P (n=" << rec["class_index"].get<std::uint64_t>() << ")\n";
      return kOk;
    }
    const Move mv = wire::move_from_json(rec["winning_move"]);
    os << "N; move: " << describe(mv) << " -> "
       << format_heaps(rec["result"].get<std::vector<Tokens>>()) << '\n';
    const json& d = rec["derivation"];
    os << "derivation: case=" << d["case"].get<std::string>() << " n=" << d["n"] << " j=" << d["j"]
       << " L=" << d["L"];
    if (d.contains("m")) os << " m=" << d["m"];
    if (d.contains("t")) os << " t=" << d["t"];
    os << '\n';
    return kOk;
  });
}

int cmd_enumerate(const CliConfig& cfg, std::ostream& out) {
  const PClass cls = enumerate_p_class(cfg.class_n, game_k(cfg), cfg.cap);
  return with_output(cfg, out, [&](std::ostream& os) {
    for (const Position& p : cls.members) {
      if (cfg.format == Format::json_lines) {
        os << json{{"n", cls.n}, {"k", cls.k}, {"position", p.heaps()}}.dump() << '\n';
      } else {
        os << p << '\n';
      }
    }
    return kOk;
  });
}

int cmd_verify(const CliConfig& cfg, std::ostream& out) {
  const std::size_t k = game_k(cfg);
  const Tokens bound = cfg.bound.value_or(oracle::default_bound(k));
  const auto kernel = cfg.kernel == "serial" ? oracle::Kernel::serial : oracle::Kernel::parallel;
  oracle::AgreementReport report = oracle::exhaustive_agreement(k, bound, kernel);

  // Optional spot checks of the constructive move on large random positions.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<Tokens> heap_size(0, (Tokens{1} << 58) - 1);
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    std::vector<Tokens> heaps(k);
    for (Tokens& h : heaps) h = heap_size(rng);
    const Position p = Position::canonical(heaps);
    const Analysis a = analyze(p);
    if (a.verdict == Verdict::P) continue;
    if (!is_legal(p, *a.winning_move) || !is_p_position(apply(p, *a.winning_move)))
      report.disagreements.push_back(
          {oracle::Disagreement::Kind::bad_winning_move, p, "random spot check: " + describe(*a.winning_move)});
  }

  return with_output(cfg, out, [&](std::ostream& os) {
    if (cfg.format == Format::json_lines) {
      os << json{{"k", k},
                 {"bound", bound},
                 {"checked", report.positions_checked},
                 {"p_positions", report.p_positions},
                 {"winning_moves_checked", report.winning_moves_checked},
                 {"p_followers_checked", report.p_followers_checked},
                 {"samples", cfg.samples},
                 {"disagreements", report.disagreements.size()}}
                .dump()
         << '\n';
      for (const auto& d : report.disagreements)
        os << json{{"kind", std::string(oracle::to_string(d.kind))},
                   {"position", d.position.heaps()},
                   {"detail", d.detail}}
                  .dump()
           << '\n';
    } else {
      os << "checked " << report.positions_checked << " positions (k=" << k << ", bound=" << bound
         << "; " << report.p_positions << " P-positions, " << report.winning_moves_checked
         << " winning moves, " << report.p_followers_checked << " P-followers";
      if (cfg.samples) os << ", " << cfg.samples << " random samples";
      os << "), " << report.disagreements.size() << " disagreements\n";
      for (const auto& d : report.disagreements)
        os << "  " << oracle::to_string(d.kind) << ' ' << d.position << ": " << d.detail << '\n';
    }
    return report.ok() ? kOk : kVerificationFailure;
  });
}

int cmd_density(const CliConfig& cfg, std::ostream& out) {
  const auto reports = density::ratio_scan(game_k(cfg), cfg.density_n);
  return with_output(cfg, out, [&](std::ostream& os) {
    if (cfg.format == Format::human) {
      density::write_csv(os, reports);
      return kOk;
    }
    for (const auto& r : reports) {
      os << json{{"N", r.N},
                 {"pi_exact", r.pi_exact.str()},
                 {"nu_exact", r.nu_exact.str()},
                 {"pi_lower", density::to_decimal(r.bounds.pi_lower)},
                 {"pi_upper", density::to_decimal(r.bounds.pi_upper)},
                 {"nu_lower", density::to_decimal(r.bounds.nu_lower)},
                 {"nu_upper", density::to_decimal(r.bounds.nu_upper)},
                 {"ratio", r.ratio}}
                .dump()
         << '\n';
    }
    return kOk;
  });
}

int cmd_grundy(const CliConfig& cfg, std::ostream& out) {
  const std::size_t k = game_k(cfg);
  const Tokens bound = cfg.bound.value_or(oracle::default_bound(k));
  std::optional<oracle::GrundyTable> table;
  if (!cfg.cache_path.empty()) {
    if (std::ifstream cached(cfg.cache_path); cached) {
      table.emplace(oracle::GrundyTable::read_csv(cached));
      if (table->k() != k || table->bound() != bound) table.reset();
    }
  }
  if (!table) {
    table.emplace(k, bound);
    table->solve(oracle::Kernel::parallel);
    if (!cfg.cache_path.empty()) {
      std::ofstream cache(cfg.cache_path);
      if (!cache) throw DomainError("cannot write cache " + cfg.cache_path);
      table->write_csv(cache);
    }
  }
  return with_output(cfg, out, [&](std::ostream& os) {
    if (cfg.format == Format::human) {
      table->write_csv(os);
      return kOk;
    }
    const auto& index = table->index();
    for (std::size_t r : index.lexicographic()) {
      const Position p = index.position(r);
      os << json{{"heaps", p.heaps()}, {"g", table->grundy(p)}}.dump() << '\n';
    }
    return kOk;
  });
}

int cmd_wythoff(const CliConfig& cfg, std::ostream& out) {
  if (cfg.pairs) {
    const auto pairs = wythoff::wythoff_pairs_mex(*cfg.pairs);
    return with_output(cfg, out, [&](std::ostream& os) {
      if (cfg.format == Format::human) os << "n A_n B_n\n";
      for (const auto& p : pairs) {
        if (cfg.format == Format::json_lines) os << json{{"n", p.n}, {"a", p.a}, {"b", p.b}}.dump() << '\n';
        else os << p.n << ' ' << p.a << ' ' << p.b << '\n';
      }
      return kOk;
    });
  }
  if (cfg.heaps.size() != 2) throw DomainError("wythoff takes --pairs N or exactly two heap sizes");
  const Tokens x = cfg.heaps[0], y = cfg.heaps[1];
  const Verdict v = wythoff::wythoff_classify(x, y);
  const auto mv = wythoff::wythoff_winning_move(x, y);
  return with_output(cfg, out, [&](std::ostream& os) {
    if (cfg.format == Format::json_lines) {
      json rec = {{"heaps", {x, y}}, {"verdict", std::string(to_string(v))}};
      if (mv) rec["winning_move"] = {{"take", {mv->take_x, mv->take_y}}};
      else rec["index"] = std::max(x, y) - std::min(x, y);
      os << rec.dump() << '\n';
    } else if (!mv) {
      os << "P (n=" << std::max(x, y) - std::min(x, y) << ")\n";
    } else {
      os << "N; move: take " << mv->take_x << " from heap 0, " << mv->take_y << " from heap 1 -> ("
         << x - mv->take_x << ',' << y - mv->take_y << ")\n";
    }
    return kOk;
  });
}

// "diagonal T" or "take A from heap I[, B from heap J ...]" (heaps 0-based).
std::optional<Move> parse_human_move(const std::string& line, std::size_t k, std::string& why) {
  static const std::regex diagonal(R"(^\s*diagonal\s+(\d+)\s*$)", std::regex::icase);
  static const std::regex take(R"(^\s*take\s+(.+)$)", std::regex::icase);
  static const std::regex part(R"(^\s*(\d+)\s+from\s+heap\s+(\d+)\s*$)", std::regex::icase);
  std::smatch m;
  try {
    if (std::regex_match(line, m, diagonal)) return DiagonalReduction{std::stoull(m[1])};
    if (!std::regex_match(line, m, take)) {
      why = "expected 'take A from heap I[, B from heap J ...]' or 'diagonal T'";
      return std::nullopt;
    }
    SubsetReduction mv{std::vector<Tokens>(k, 0)};
    std::istringstream parts(m[1].str());
    for (std::string chunk; std::getline(parts, chunk, ',');) {
      std::smatch pm;
      if (!std::regex_match(chunk, pm, part)) {
        why = "could not read '" + chunk + "'";
        return std::nullopt;
      }
      const std::size_t heap = std::stoull(pm[2]);
      if (heap >= k) {
        why = "there is no heap " + std::to_string(heap);
        return std::nullopt;
      }
      if (mv.amounts[heap] != 0) {
        why = "heap " + std::to_string(heap) + " named twice";
        return std::nullopt;
      }
      mv.amounts[heap] = std::stoull(pm[1]);
    }
    return mv;
  } catch (const std::out_of_range&) {
    why = "number out of range";
    return std::nullopt;
  }
}

int cmd_play(const CliConfig& cfg, std::istream& in, std::ostream& out) {
  if (cfg.engine_side != "first" && cfg.engine_side != "second")
    throw DomainError("--engine must be 'first' or 'second'");
  if (cfg.heaps.size() == 2) throw DomainError("two heaps is classic Wythoff; this game needs k >= 3");
  normalize(cfg.heaps);
  return play(cfg.heaps, cfg.engine_side == "first", in, out);
}

}  // namespace

int play(std::span<const Tokens> start, bool engine_first, std::istream& in, std::ostream& out) {
  std::vector<Tokens> heaps(start.begin(), start.end());
  out << "Heaps " << format_heaps(heaps) << " (heaps numbered from 0). Last move wins.\n";

  auto engine_turn = [&] {
    const Normalized nz = normalize(heaps);
    const bool winning = !is_p_position(nz.position);
    const Move mv = to_caller_order(*engine_reply(nz.position), nz.permutation);
    heaps = apply_labeled(heaps, mv);
    out << "Engine" << (winning ? "" : " (stalling)") << ": " << describe(mv) << " -> "
        << format_heaps(heaps) << '\n';
  };

  if (engine_first) {
    if (all_empty(heaps)) {
      out << "Engine cannot move. You win.\n";
      return kOk;
    }
    engine_turn();
    if (all_empty(heaps)) {
      out << "Engine wins.\n";
      return kOk;
    }
  } else if (all_empty(heaps)) {
    out << "You cannot move. Engine wins.\n";
    return kOk;
  }

  for (;;) {
    out << "your move> " << std::flush;
    std::string line;
    if (!std::getline(in, line)) {
      out << "\naborted.\n";
      return kOk;
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line == "quit" || line == "exit") {
      out << "aborted.\n";
      return kOk;
    }
    std::string why;
    const auto mv = parse_human_move(line, heaps.size(), why);
    if (!mv) {
      out << "could not parse move: " << why << '\n';
      continue;
    }
    try {
      heaps = apply_labeled(heaps, *mv);
    } catch (const IllegalMoveError& e) {
      out << "illegal move: " << e.rule() << '\n';
      continue;
    }
    out << "You: " << describe(*mv) << " -> " << format_heaps(heaps) << '\n';
    if (all_empty(heaps)) {
      out << "You win.\n";
      return kOk;
    }
    engine_turn();
    if (all_empty(heaps)) {
      out << "Engine wins.\n";
      return kOk;
    }
  }
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Perfect-play engine for the k-heap Wythoff extension", "heapgame"};
  app.require_subcommand(1);
  CliConfig cfg;

  std::string format = "human";
  app.add_option("--k", cfg.k, "heap count");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"human", "json-lines"}));
  app.add_option("--bound", cfg.bound, "largest heap size for exhaustive runs");
  app.add_option("--cap", cfg.cap, "cap on enumerated states");
  app.add_option("--out", cfg.out_path, "write output to FILE");

  auto* analyze = app.add_subcommand("analyze", "classify a position and give a winning move");
  analyze->add_option("heaps", cfg.heaps, "heap sizes")->required();
  auto* enumerate = app.add_subcommand("enumerate", "list the P-positions with smallest heap T_n");
  enumerate->add_option("--n", cfg.class_n, "class index")->required();
  auto* verify = app.add_subcommand("verify", "check the closed form against the retrograde oracle");
  verify->add_option("--kernel", cfg.kernel)->check(CLI::IsMember({"serial", "parallel"}));
  verify->add_option("--samples", cfg.samples, "extra random large positions to spot-check");
  verify->add_option("--seed", cfg.seed, "seed for --samples");
  auto* dens = app.add_subcommand("density", "exact P-position density and closed-form bounds (CSV)");
  dens->add_option("--N,--max-n", cfg.density_n, "largest class index");
  auto* grundy = app.add_subcommand("grundy", "Grundy table export (CSV)");
  grundy->add_option("--cache", cfg.cache_path, "reuse or create a table file");
  auto* wyt = app.add_subcommand("wythoff", "two-heap Wythoff: pairs table or a position");
  wyt->add_option("--pairs", cfg.pairs, "print the first N P-positions");
  wyt->add_option("heaps", cfg.heaps, "x y");
  auto* play_cmd = app.add_subcommand("play", "play against the engine on the terminal");
  play_cmd->add_option("heaps", cfg.heaps, "starting heap sizes")->required();
  play_cmd->add_option("--engine", cfg.engine_side, "first or second");
  auto* serve = app.add_subcommand("serve", "HTTP/JSON service for the web client");
  serve->add_option("--host", cfg.host);
  serve->add_option("--port", cfg.port);
  serve->add_option("--ttl", cfg.ttl_seconds, "session lifetime in seconds");
  serve->add_option("--static-dir", cfg.static_dir, "directory of web client assets");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  cfg.format = format == "json-lines" ? Format::json_lines : Format::human;

  try {
    if (analyze->parsed()) return cmd_analyze(cfg, out);
    if (enumerate->parsed()) return cmd_enumerate(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (dens->parsed()) return cmd_density(cfg, out);
    if (grundy->parsed()) return cmd_grundy(cfg, out);
    if (wyt->parsed()) return cmd_wythoff(cfg, out);
    if (play_cmd->parsed()) return cmd_play(cfg, in, out);
    if (serve->parsed()) {
      service::ServiceConfig sc;
      sc.session_ttl = std::chrono::seconds(cfg.ttl_seconds);
      sc.static_dir = cfg.static_dir;
      return service::serve(sc, cfg.host, cfg.port) == 0 ? kOk : kUsage;
    }
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const ArithmeticRangeError& e) {
    err << "error: " << e.what() << '\n';
    return kArithmeticRange;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace heapgame::cli

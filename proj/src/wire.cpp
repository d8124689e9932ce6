#include "heapgame/wire.hpp"

namespace heapgame::wire {

json move_to_json(const Move& mv) {
  if (const auto* d = std::get_if<DiagonalReduction>(&mv)) return {{"type", "diagonal"}, {"t", d->t}};
  return {{"type", "subset"}, {"amounts", std::get<SubsetReduction>(mv).amounts}};
}

namespace {

Tokens token_field(const json& j, const char* what) {
  // nlohmann stores every nonnegative integer literal as unsigned.
  if (!j.is_number_unsigned())
    throw DomainError(std::string(what) + " must be a nonnegative integer");
  return j.get<Tokens>();
}

}  // namespace

Move move_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw DomainError("move must be an object with a string 'type'");
  const auto type = j["type"].get<std::string>();
  if (type == "diagonal") {
    if (!j.contains("t")) throw DomainError("diagonal move needs 't'");
    return DiagonalReduction{token_field(j["t"], "t")};
  }
  if (type == "subset") {
    if (!j.contains("amounts")) throw DomainError("subset move needs 'amounts'");
    return SubsetReduction{heaps_from_json(j["amounts"])};
  }
  throw DomainError("move type must be 'subset' or 'diagonal'");
}

std::vector<Tokens> heaps_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("expected an array of nonnegative integers");
  std::vector<Tokens> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(token_field(v, "every entry"));
  return out;
}

json analysis_record(std::span<const Tokens> heaps) {
  const Normalized nz = normalize(heaps);
  const Analysis a = analyze(nz.position);
  json rec = {{"k", heaps.size()},
              {"heaps", std::vector<Tokens>(heaps.begin(), heaps.end())},
              {"canonical", std::vector<Tokens>(nz.position.heaps().begin(), nz.position.heaps().end())},
              {"verdict", std::string(to_string(a.verdict))}};
  if (a.verdict == Verdict::P) {
    rec["class_index"] = *a.class_index;
    return rec;
  }
  const Move labeled = to_caller_order(*a.winning_move, nz.permutation);
  rec["winning_move"] = move_to_json(labeled);
  rec["result"] = apply_labeled(heaps, labeled);
  const Derivation& d = *a.derivation;
  json der = {{"case", std::string(to_string(d.branch))}, {"n", d.n}, {"j", d.j}, {"L", d.rest_sum}};
  if (d.target_class) der["m"] = *d.target_class;
  if (d.diagonal) der["t"] = *d.diagonal;
  rec["derivation"] = std::move(der);
  return rec;
}

}  // namespace heapgame::wire

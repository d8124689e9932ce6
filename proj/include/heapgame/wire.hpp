#pragma once

#include <span>
#include <vector>

#include "json.hpp"

#include "heapgame/core.hpp"
#include "heapgame/strategy.hpp"

// JSON records shared by the service and the CLI's json-lines output, so both
// use the same field names.
namespace heapgame::wire {

using nlohmann::json;

// {"type":"diagonal","t":6} or {"type":"subset","amounts":[0,2,3,4]}
json move_to_json(const Move& mv);
// Throws DomainError when the record is malformed.
Move move_from_json(const json& j);

// Array of nonnegative integers. Throws DomainError otherwise.
std::vector<Tokens> heaps_from_json(const json& j);

// Analysis of labeled heaps:
//   {"k", "heaps", "canonical", "verdict", "class_index"}            for P
//   {"k", "heaps", "canonical", "verdict", "winning_move", "result",
//    "derivation": {"case", "n", "j", "L", "m"?, "t"?}}              for N
// Moves and results use the caller's heap order.
json analysis_record(std::span<const Tokens> heaps);

}  // namespace heapgame::wire

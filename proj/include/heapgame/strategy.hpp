#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "heapgame/core.hpp"

namespace heapgame {

inline constexpr std::size_t kDefaultFollowerCap = 2'000'000;

// Remove amounts[i] tokens from heap i; at most k-1 amounts may be nonzero.
struct SubsetReduction {
  std::vector<Tokens> amounts;
  friend bool operator==(const SubsetReduction&, const SubsetReduction&) = default;
};

// Remove t tokens from every heap.
struct DiagonalReduction {
  Tokens t = 0;
  friend bool operator==(const DiagonalReduction&, const DiagonalReduction&) = default;
};

using Move = std::variant<SubsetReduction, DiagonalReduction>;

// Which constructive branch produced a winning move. Smallest heap m_0 with
// T_n <= m_0 < T_{n+1}, j = m_0 - T_n, L = sum of the other heaps, and
// target = (k-1)T_n + n.
enum class StrategyCase {
  trim_rest,        // j = 0, L > target: shave the other heaps
  anchored_diagonal,  // j = 0, L < target: diagonal down to class L-(k-1)T_n
  trim_anchor,      // j > 0, L > target+j, m_1 < T_{n+1}: m_0 -> T_n, shave heaps 2..
  drop_second,      // j > 0, L > target+j, m_1 >= T_{n+1}: m_1 -> T_n, shave heaps 2..
  shifted_diagonal,   // j > 0, L <= target+j: diagonal down to class L-(k-1)m_0
};

std::string_view to_string(StrategyCase c) noexcept;

struct Derivation {
  std::uint64_t n = 0;
  Tokens j = 0;
  Tokens rest_sum = 0;  // L
  StrategyCase branch = StrategyCase::trim_rest;
  std::optional<std::uint64_t> target_class;  // m, diagonal branches only
  std::optional<Tokens> diagonal;             // t, diagonal branches only
};

struct Analysis {
  Verdict verdict = Verdict::P;
  std::optional<std::uint64_t> class_index;  // set iff verdict == P
  std::optional<Move> winning_move;          // set iff verdict == N
  std::optional<Derivation> derivation;      // set iff verdict == N
};

// Empty when legal, otherwise the violated rule.
std::optional<std::string> legality_violation(const Position& p, const Move& mv);

inline bool is_legal(const Position& p, const Move& mv) {
  return !legality_violation(p, mv).has_value();
}

// Throws IllegalMoveError naming the violated rule.
Position apply(const Position& p, const Move& mv);

// Applies a move given in the caller's labeling to labeled heaps; the result
// keeps the labeling.
std::vector<Tokens> apply_labeled(std::span<const Tokens> heaps, const Move& mv);

// Translate between canonical and caller heap indices (see Normalized).
Move to_caller_order(const Move& mv, std::span<const std::size_t> permutation);
Move to_canonical_order(const Move& mv, std::span<const std::size_t> permutation);

// Number of labeled reductions a follower scan visits; saturates.
std::uint64_t follower_scan_size(const Position& p) noexcept;

// Every position reachable in one move, deduplicated and sorted. Throws
// ResourceLimitError when the scan would exceed `cap` states.
std::vector<Position> followers(const Position& p, std::size_t cap = kDefaultFollowerCap);

// P/N verdict and, for N-positions, the constructive winning move.
Analysis analyze(const Position& p);

// Every legal move onto a P-position, at most `max_moves` of them.
std::vector<Move> all_winning_moves(const Position& p,
                                    std::size_t max_moves = kDefaultFollowerCap,
                                    std::size_t cap = kDefaultFollowerCap);

// Engine reply: the winning move when one exists, otherwise one token off the
// largest heap. Empty at the terminal position.
std::optional<Move> engine_reply(const Position& p);

std::string describe(const Move& mv);

}  // namespace heapgame

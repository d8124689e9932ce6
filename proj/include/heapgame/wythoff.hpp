#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "heapgame/core.hpp"

namespace heapgame::wythoff {

// The n-th P-position (A_n, B_n) of two-heap Wythoff, with B_n = A_n + n.
struct WythoffPair {
  std::uint64_t n = 0;
  Tokens a = 0;
  Tokens b = 0;
  friend bool operator==(const WythoffPair&, const WythoffPair&) = default;
};

// First `count` pairs from A_n = mex{A_i, B_i : i < n}, B_n = A_n + n.
std::vector<WythoffPair> wythoff_pairs_mex(std::size_t count);

// (floor(n*phi), floor(n*phi^2)) in exact integer arithmetic:
// floor(n*phi) = floor((n + isqrt(5n^2)) / 2). Throws ArithmeticRangeError when
// B_n does not fit in 64 bits.
WythoffPair beatty_pair(std::uint64_t n);

// Heaps may come in either order.
Verdict wythoff_classify(Tokens x, Tokens y);

// Tokens to remove from each heap (same labeling as the arguments).
struct WythoffMove {
  Tokens take_x = 0;
  Tokens take_y = 0;
  friend bool operator==(const WythoffMove&, const WythoffMove&) = default;
};

// A move onto a P-position, empty when (x, y) is already P.
std::optional<WythoffMove> wythoff_winning_move(Tokens x, Tokens y);

}  // namespace heapgame::wythoff

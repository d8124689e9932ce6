#include <set>

#include "doctest.h"

#include "brute_force.hpp"
#include "heapgame/error.hpp"
#include "heapgame/wythoff.hpp"

using namespace heapgame;
using namespace heapgame::wythoff;

TEST_CASE("mex pairs reproduce the classical table") {
  const std::vector<std::pair<Tokens, Tokens>> table{{0, 0},   {1, 2},   {3, 5},   {4, 7},
                                                     {6, 10},  {8, 13},  {9, 15},  {11, 18},
                                                     {12, 20}, {14, 23}, {16, 26}};
  const auto pairs = wythoff_pairs_mex(table.size());
  REQUIRE(pairs.size() == table.size());
  for (std::size_t n = 0; n < table.size(); ++n) {
    CHECK(pairs[n].n == n);
    CHECK(pairs[n].a == table[n].first);
    CHECK(pairs[n].b == table[n].second);
  }
}

TEST_CASE("beatty_pair examples") {
  CHECK(beatty_pair(0) == WythoffPair{0, 0, 0});
  CHECK(beatty_pair(4) == WythoffPair{4, 6, 10});
  CHECK(beatty_pair(9) == WythoffPair{9, 14, 23});
  CHECK_NOTHROW(beatty_pair(std::uint64_t{1} << 62));
  CHECK_THROWS_AS(beatty_pair((std::uint64_t{1} << 62) + 1), ArithmeticRangeError);
}

TEST_CASE("mex recurrence equals Beatty floors") {
  const auto pairs = wythoff_pairs_mex(100'000);
  for (const auto& p : pairs) {
    REQUIRE(beatty_pair(p.n) == p);
    REQUIRE(p.b - p.a == p.n);
  }
}

TEST_CASE("A and B partition the positive integers") {
  const auto pairs = wythoff_pairs_mex(5'000);
  std::set<Tokens> seen;
  for (std::size_t n = 1; n < pairs.size(); ++n) {
    REQUIRE(seen.insert(pairs[n].a).second);
    REQUIRE(seen.insert(pairs[n].b).second);
  }
  const Tokens top = pairs.back().a;
  for (Tokens v = 1; v <= top; ++v) REQUIRE(seen.count(v) == 1);
}

TEST_CASE("wythoff_classify examples") {
  CHECK(wythoff_classify(0, 0) == Verdict::P);
  CHECK(wythoff_classify(12, 20) == Verdict::P);
  CHECK(wythoff_classify(20, 12) == Verdict::P);
  CHECK(wythoff_classify(12, 21) == Verdict::N);
}

TEST_CASE("classifier and winning moves agree with retrograde analysis") {
  const Tokens bound = 80;
  const auto p = brute::wythoff_p_table(bound);
  CHECK_FALSE(p[12][21]);
  for (Tokens x = 0; x <= bound; ++x) {
    for (Tokens y = 0; y <= bound; ++y) {
      REQUIRE((wythoff_classify(x, y) == Verdict::P) == p[x][y]);
      const auto mv = wythoff_winning_move(x, y);
      REQUIRE(mv.has_value() == !p[x][y]);
      if (!mv) continue;
      REQUIRE(mv->take_x <= x);
      REQUIRE(mv->take_y <= y);
      REQUIRE(mv->take_x + mv->take_y > 0);
      if (mv->take_x > 0 && mv->take_y > 0) REQUIRE(mv->take_x == mv->take_y);
      REQUIRE(p[x - mv->take_x][y - mv->take_y]);
    }
  }
}

TEST_CASE("large coordinates") {
  const WythoffPair big = beatty_pair(1'000'000'000'000ULL);
  CHECK(wythoff_classify(big.a, big.b) == Verdict::P);
  CHECK(wythoff_classify(big.a, big.b + 1) == Verdict::N);
  const auto mv = wythoff_winning_move(big.a + 5, big.b + 5);
  REQUIRE(mv.has_value());
  CHECK(wythoff_classify(big.a + 5 - mv->take_x, big.b + 5 - mv->take_y) == Verdict::P);
}

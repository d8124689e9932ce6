#include <sstream>

#include "doctest.h"

#include "brute_force.hpp"
#include "heapgame/error.hpp"
#include "heapgame/oracle.hpp"
#include "heapgame/strategy.hpp"

using namespace heapgame;
using namespace heapgame::oracle;

namespace {

Position pos(std::vector<Tokens> h) { return Position::from_sorted(std::move(h)); }

std::uint32_t mex_of(std::vector<std::uint32_t> v) { return mex(v); }

}  // namespace

TEST_CASE("mex") {
  CHECK(mex_of({}) == 0);
  CHECK(mex_of({0, 1, 2}) == 3);
  CHECK(mex_of({1, 2}) == 0);
  CHECK(mex_of({2, 0, 2, 1, 5}) == 3);
}

TEST_CASE("oracle_classify examples") {
  CHECK(oracle_classify(pos({0, 0, 0})) == Verdict::P);
  CHECK(oracle_classify(pos({1, 1, 2})) == Verdict::P);
  CHECK(oracle_classify(pos({1, 1, 1, 1})) == Verdict::N);
}

TEST_CASE("grundy examples") {
  CHECK(oracle_grundy(pos({0, 0, 0})) == 0);
  CHECK(oracle_grundy(pos({0, 0, 1})) == 1);
  GrundyTable table(3, 15);
  for (std::uint64_t n = 0; n <= 3; ++n)
    for (const Position& p : enumerate_p_class(n, 3).members) REQUIRE(table.grundy(p) == 0);
}

TEST_CASE("position index ranks are dense") {
  for (std::size_t k = 3; k <= 5; ++k) {
    const PositionIndex index(k, 6);
    const auto all = brute::all_positions(k, 6);
    REQUIRE(index.size() == all.size());
    std::vector<bool> seen(index.size(), false);
    for (const auto& h : all) {
      const std::size_t r = index.rank(h);
      REQUIRE(r < index.size());
      REQUIRE_FALSE(seen[r]);
      seen[r] = true;
      REQUIRE(brute::Heaps(index.tuple(r).begin(), index.tuple(r).end()) == h);
    }
    std::size_t total = 0;
    for (const auto& level : index.levels()) total += level.size();
    CHECK(total == index.size());
    for (std::size_t i = 0; i < all.size(); ++i)
      REQUIRE(brute::Heaps(index.tuple(index.lexicographic()[i]).begin(),
                           index.tuple(index.lexicographic()[i]).end()) == all[i]);
  }
  CHECK_THROWS_AS(PositionIndex(8, 60, 1000), ResourceLimitError);
}

TEST_CASE("serial and parallel kernels are bit-identical") {
  const std::vector<std::pair<std::size_t, Tokens>> shapes{{3, 12}, {4, 7}, {5, 5}, {6, 4}};
  for (auto [k, bound] : shapes) {
    const PositionIndex index(k, bound);
    REQUIRE(grundy_serial(index) == grundy_parallel(index));
    REQUIRE(outcome_serial(index) == outcome_parallel(index));
  }
}

TEST_CASE("table outcomes match the independent recursion") {
  const std::vector<std::pair<std::size_t, Tokens>> shapes{{3, 9}, {4, 6}, {5, 4}};
  for (auto [k, bound] : shapes) {
    GrundyTable table(k, bound);
    brute::Outcomes naive;
    for (const auto& h : brute::all_positions(k, bound))
      REQUIRE((table.classify(pos(h)) == Verdict::P) == naive.is_p(h));
  }
}

TEST_CASE("cold and warm tables agree") {
  GrundyTable solved(4, 6);
  solved.solve(Kernel::serial);
  CHECK(solved.grundy_complete());
  GrundyTable lazy(4, 6);
  const auto all = brute::all_positions(4, 6);
  // Query largest first so the work-list fills most of the table on one call.
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    const Position p = pos(*it);
    REQUIRE(lazy.grundy(p) == solved.grundy(p));
    REQUIRE(lazy.classify(p) == solved.classify(p));
  }
  GrundyTable fresh(4, 6);
  for (const auto& h : all) REQUIRE(fresh.classify(pos(h)) == solved.classify(pos(h)));
}

TEST_CASE("grundy is zero exactly on P-positions") {
  GrundyTable table(3, 12);
  table.solve();
  for (const auto& h : brute::all_positions(3, 12)) {
    const Position p = pos(h);
    REQUIRE((table.grundy(p) == 0) == (table.classify(p) == Verdict::P));
  }
}

TEST_CASE("queries outside the bound") {
  GrundyTable table(3, 5);
  CHECK_THROWS_AS(table.classify(pos({0, 0, 6})), ResourceLimitError);
  CHECK_THROWS(table.grundy(pos({0, 0, 0, 0})));
}

TEST_CASE("exhaustive_agreement") {
  const AgreementReport zero = exhaustive_agreement(3, 0);
  CHECK(zero.positions_checked == 1);
  CHECK(zero.ok());

  const AgreementReport r3 = exhaustive_agreement(3, 12);
  CHECK(r3.ok());
  CHECK(r3.positions_checked == 455);
  CHECK(r3.p_positions + r3.winning_moves_checked == r3.positions_checked);

  const AgreementReport r4 = exhaustive_agreement(4, 8, Kernel::serial);
  CHECK(r4.ok());
  CHECK(r4.positions_checked == 495);

  CHECK(default_bound(3) == 15);
  CHECK(default_bound(4) == 10);
  CHECK(default_bound(5) == 5);
}

TEST_CASE("grundy CSV round trip") {
  GrundyTable table(3, 4);
  std::ostringstream out;
  table.write_csv(out);
  const std::string text = out.str();
  CHECK(text.rfind("# heapgame grundy table v1\nk,bound\n3,4\n0,0,0,0\n0,0,1,1\n", 0) == 0);

  std::istringstream in(text);
  GrundyTable back = GrundyTable::read_csv(in);
  CHECK(back.k() == 3);
  CHECK(back.bound() == 4);
  CHECK(back.grundy_complete());
  for (const auto& h : brute::all_positions(3, 4)) REQUIRE(back.grundy(pos(h)) == table.grundy(pos(h)));

  std::ostringstream again;
  back.write_csv(again);
  CHECK(again.str() == text);
}

TEST_CASE("malformed grundy CSV is rejected") {
  const auto rejects = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(GrundyTable::read_csv(in), DomainError);
  };
  rejects("");
  rejects("k,bound\n3,1\n");
  rejects("# heapgame grundy table v1\nk,bound\n3,1\n0,0,0,0\n");
  rejects("# heapgame grundy table v1\nk,bound\n2,1\n");
  rejects("# heapgame grundy table v1\nk,bound\n3,1\n0,0,1,1\n0,0,0,0\n0,1,1,2\n1,1,1,3\n");
  rejects("# heapgame grundy table v1\nk,bound\n3,1\n0,0,0,0\n0,0,1,1\n0,1,1,2\n1,1,1,3\nextra\n");
}

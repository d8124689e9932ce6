#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "heapgame/core.hpp"
#include "heapgame/oracle_kernels.hpp"

namespace heapgame::oracle {

// Least nonnegative integer not in `values` (any order, duplicates allowed).
std::uint32_t mex(std::span<const std::uint32_t> values);

enum class Kernel { serial, parallel };

// Memoized P/N verdicts and Grundy values over every canonical position with
// heaps <= bound. Queries fill the table lazily with an explicit work-list;
// solve() fills it completely with one of the kernels.
//
// Not thread-safe: share behind a mutex or give each thread its own table.
class GrundyTable {
 public:
  GrundyTable(std::size_t k, Tokens bound, std::size_t max_entries = kDefaultMaxEntries);

  std::size_t k() const noexcept { return index_->k(); }
  Tokens bound() const noexcept { return index_->bound(); }
  std::size_t size() const noexcept { return index_->size(); }
  const PositionIndex& index() const noexcept { return *index_; }

  // P iff every follower is N. Throws ResourceLimitError outside the bound.
  Verdict classify(const Position& p);
  // mex of the followers' values. Throws ResourceLimitError outside the bound.
  std::uint32_t grundy(const Position& p);

  void solve(Kernel kernel = Kernel::parallel);
  bool grundy_complete() const noexcept;

  // Header "k,bound", then one row h_0,...,h_{k-1},g per position in
  // lexicographic order. Solves missing entries first.
  void write_csv(std::ostream& os);
  // Throws DomainError on a malformed or inconsistent file.
  static GrundyTable read_csv(std::istream& is, std::size_t max_entries = kDefaultMaxEntries);

 private:
  std::size_t checked_rank(const Position& p) const;

  std::shared_ptr<const PositionIndex> index_;
  std::vector<std::uint32_t> grundy_;
  std::vector<Outcome> outcome_;
};

// Fresh table sized to p's largest heap.
Verdict oracle_classify(const Position& p);
std::uint32_t oracle_grundy(const Position& p);

struct Disagreement {
  enum class Kind {
    classifier_mismatch,  // oracle verdict differs from the closed form
    bad_winning_move,     // analyze's move is illegal or misses a P-position
    p_follower,           // a P-position has a follower the closed form calls P
  };
  Kind kind;
  Position position;
  std::string detail;
};

std::string_view to_string(Disagreement::Kind kind) noexcept;

struct AgreementReport {
  std::size_t k = 0;
  Tokens bound = 0;
  std::size_t positions_checked = 0;
  std::size_t p_positions = 0;
  std::size_t winning_moves_checked = 0;
  std::size_t p_followers_checked = 0;
  std::vector<Disagreement> disagreements;

  bool ok() const noexcept { return disagreements.empty(); }
};

// Compares the retrograde oracle with the closed-form classifier on every
// canonical position with heaps <= bound, checks analyze's move from every
// N-position and every follower of every P-position.
AgreementReport exhaustive_agreement(std::size_t k, Tokens bound,
                                     Kernel kernel = Kernel::parallel,
                                     std::size_t max_entries = kDefaultMaxEntries);

// Default exploration bounds: 15 for k=3, 10 for k=4, 5 beyond.
Tokens default_bound(std::size_t k) noexcept;

}  // namespace heapgame::oracle

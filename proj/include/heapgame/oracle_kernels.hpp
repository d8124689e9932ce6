#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "heapgame/core.hpp"

namespace heapgame::oracle {

inline constexpr std::size_t kDefaultMaxEntries = 4'000'000;
inline constexpr std::uint32_t kUnknownGrundy = 0xffffffffu;

enum class Outcome : std::uint8_t { unknown = 0, p = 1, n = 2 };

// Dense numbering of every canonical k-tuple with entries in [0, bound].
// Tuples are ranked colexicographically through the combinatorial number
// system (h_i + i is strictly increasing), so ranks are contiguous.
class PositionIndex {
 public:
  PositionIndex(std::size_t k, Tokens bound, std::size_t max_entries = kDefaultMaxEntries);

  std::size_t k() const noexcept { return k_; }
  Tokens bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return size_; }

  bool contains(std::span<const Tokens> sorted) const noexcept;
  // `sorted` must be nondecreasing with entries <= bound.
  std::size_t rank(std::span<const Tokens> sorted) const noexcept;
  std::span<const Tokens> tuple(std::size_t rank) const noexcept {
    return {tuples_.data() + rank * k_, k_};
  }
  Position position(std::size_t rank) const;

  // Ranks grouped by total token count; followers always sit in a lower level.
  const std::vector<std::vector<std::size_t>>& levels() const noexcept { return levels_; }
  // Ranks in lexicographic order of their tuples.
  const std::vector<std::size_t>& lexicographic() const noexcept { return lex_; }

 private:
  std::uint64_t binom(std::size_t n, std::size_t r) const noexcept {
    return binom_[n * (k_ + 1) + r];
  }

  std::size_t k_;
  Tokens bound_;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> binom_;
  std::vector<Tokens> tuples_;
  std::vector<std::vector<std::size_t>> levels_;
  std::vector<std::size_t> lex_;
};

// Calls visit(rank) for every follower of `sorted`, one call per labeled move
// (duplicates included). Scratch buffers are caller-owned so kernels can keep
// them per thread.
template <class Visit>
void for_each_follower_rank(const PositionIndex& index, std::span<const Tokens> sorted,
                            std::vector<Tokens>& kept, std::vector<Tokens>& scratch,
                            Visit&& visit) {
  const std::size_t k = sorted.size();
  kept.assign(k, 0);
  scratch.resize(k);
  for (;;) {
    bool untouched = false;
    bool all_kept = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (kept[i] == sorted[i]) untouched = true;
      else all_kept = false;
    }
    if (untouched && !all_kept) {
      // Insertion sort: k is small.
      for (std::size_t i = 0; i < k; ++i) {
        Tokens v = kept[i];
        std::size_t pos = i;
        while (pos > 0 && scratch[pos - 1] > v) {
          scratch[pos] = scratch[pos - 1];
          --pos;
        }
        scratch[pos] = v;
      }
      visit(index.rank(scratch));
    }
    std::size_t i = 0;
    while (i < k && kept[i] == sorted[i]) kept[i++] = 0;
    if (i == k) break;
    ++kept[i];
  }
  for (Tokens t = 1; t <= sorted[0]; ++t) {
    for (std::size_t i = 0; i < k; ++i) scratch[i] = sorted[i] - t;
    visit(index.rank(scratch));
  }
}

// Reference kernels: one pass over positions in order of total tokens,
// followers generated by the strategy module's followers().
std::vector<std::uint32_t> grundy_serial(const PositionIndex& index);
std::vector<Outcome> outcome_serial(const PositionIndex& index);

// OpenMP kernels: level-synchronous over total tokens, positions within a
// level in parallel. Results are bit-identical to the serial kernels.
std::vector<std::uint32_t> grundy_parallel(const PositionIndex& index);
std::vector<Outcome> outcome_parallel(const PositionIndex& index);

// Threads the parallel kernels will use (1 without OpenMP).
int kernel_threads() noexcept;

}  // namespace heapgame::oracle

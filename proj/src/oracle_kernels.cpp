#include "heapgame/oracle_kernels.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "heapgame/oracle.hpp"
#include "heapgame/strategy.hpp"

namespace heapgame::oracle {

namespace {
constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max();
}  // namespace

PositionIndex::PositionIndex(std::size_t k, Tokens bound, std::size_t max_entries)
    : k_(k), bound_(bound) {
  if (k < kMinHeaps || k > kDefaultMaxHeaps)
    throw DomainError("position index needs 3 <= k <= 64, got " + std::to_string(k));
  if (bound > max_entries)
    throw ResourceLimitError("bound " + std::to_string(bound) + " exceeds the table cap");

  // C(n, r) for n <= bound + k, r <= k; saturate past the cap.
  const std::size_t rows = static_cast<std::size_t>(bound) + k + 1;
  binom_.assign(rows * (k + 1), 0);
  const std::uint64_t sat = static_cast<std::uint64_t>(max_entries) + 1;
  for (std::size_t n = 0; n < rows; ++n) {
    binom_[n * (k + 1)] = 1;
    for (std::size_t r = 1; r <= std::min(n, k); ++r) {
      std::uint64_t v = binom_[(n - 1) * (k + 1) + r - 1] + binom_[(n - 1) * (k + 1) + r];
      binom_[n * (k + 1) + r] = std::min(v, sat);
    }
  }
  const std::uint64_t count = binom(rows - 1, k);
  if (count > max_entries)
    throw ResourceLimitError("k=" + std::to_string(k) + ", bound=" + std::to_string(bound) +
                             " has more than " + std::to_string(max_entries) + " positions");
  size_ = static_cast<std::size_t>(count);

  tuples_.assign(size_ * k_, 0);
  levels_.assign(static_cast<std::size_t>(bound) * k + 1, {});
  lex_.reserve(size_);

  std::vector<Tokens> cur(k, 0);
  for (;;) {
    const std::size_t r = rank(cur);
    std::copy(cur.begin(), cur.end(), tuples_.begin() + static_cast<std::ptrdiff_t>(r * k_));
    lex_.push_back(r);
    Tokens total = 0;
    for (Tokens h : cur) total += h;
    levels_[total].push_back(r);
    // Next nondecreasing tuple in lexicographic order.
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == bound) --i;
    if (i == 0) break;
    const Tokens v = cur[i - 1] + 1;
    for (std::size_t t = i - 1; t < k; ++t) cur[t] = v;
  }
}

bool PositionIndex::contains(std::span<const Tokens> sorted) const noexcept {
  return sorted.size() == k_ && std::is_sorted(sorted.begin(), sorted.end()) &&
         sorted.back() <= bound_;
}

std::size_t PositionIndex::rank(std::span<const Tokens> sorted) const noexcept {
  std::size_t r = 0;
  for (std::size_t i = 0; i < k_; ++i)
    r += static_cast<std::size_t>(binom(static_cast<std::size_t>(sorted[i]) + i, i + 1));
  return r;
}

Position PositionIndex::position(std::size_t rank) const {
  auto t = tuple(rank);
  return Position::from_sorted(std::vector<Tokens>(t.begin(), t.end()), k_);
}

int kernel_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<std::uint32_t> grundy_serial(const PositionIndex& index) {
  std::vector<std::uint32_t> table(index.size(), kUnknownGrundy);
  std::vector<std::uint32_t> values;
  for (const auto& level : index.levels()) {
    for (std::size_t r : level) {
      values.clear();
      for (const Position& f : followers(index.position(r), kNoCap))
        values.push_back(table[index.rank(f.heaps())]);
      table[r] = mex(values);
    }
  }
  return table;
}

std::vector<Outcome> outcome_serial(const PositionIndex& index) {
  std::vector<Outcome> table(index.size(), Outcome::unknown);
  for (const auto& level : index.levels()) {
    for (std::size_t r : level) {
      bool reaches_p = false;
      for (const Position& f : followers(index.position(r), kNoCap)) {
        if (table[index.rank(f.heaps())] == Outcome::p) {
          reaches_p = true;
          break;
        }
      }
      table[r] = reaches_p ? Outcome::n : Outcome::p;
    }
  }
  return table;
}

std::vector<std::uint32_t> grundy_parallel(const PositionIndex& index) {
  std::vector<std::uint32_t> table(index.size(), kUnknownGrundy);
  for (const auto& level : index.levels()) {
    const auto count = static_cast<std::ptrdiff_t>(level.size());
#pragma omp parallel
    {
      std::vector<Tokens> kept, scratch;
      std::vector<std::uint32_t> values;
#pragma omp for schedule(dynamic, 8)
      for (std::ptrdiff_t i = 0; i < count; ++i) {
        const std::size_t r = level[static_cast<std::size_t>(i)];
        values.clear();
        for_each_follower_rank(index, index.tuple(r), kept, scratch,
                               [&](std::size_t f) { values.push_back(table[f]); });
        table[r] = mex(values);
      }
    }
  }
  return table;
}

std::vector<Outcome> outcome_parallel(const PositionIndex& index) {
  std::vector<Outcome> table(index.size(), Outcome::unknown);
  for (const auto& level : index.levels()) {
    const auto count = static_cast<std::ptrdiff_t>(level.size());
#pragma omp parallel
    {
      std::vector<Tokens> kept, scratch;
#pragma omp for schedule(dynamic, 8)
      for (std::ptrdiff_t i = 0; i < count; ++i) {
        const std::size_t r = level[static_cast<std::size_t>(i)];
        bool reaches_p = false;
        for_each_follower_rank(index, index.tuple(r), kept, scratch, [&](std::size_t f) {
          reaches_p = reaches_p || table[f] == Outcome::p;
        });
        table[r] = reaches_p ? Outcome::n : Outcome::p;
      }
    }
  }
  return table;
}

}  // namespace heapgame::oracle

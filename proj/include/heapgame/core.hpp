#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heapgame/arith.hpp"

namespace heapgame {

inline constexpr std::size_t kMinHeaps = 3;
inline constexpr std::size_t kDefaultMaxHeaps = 64;
inline constexpr std::size_t kDefaultEnumerationCap = 2'000'000;

enum class Verdict { P, N };

std::string_view to_string(Verdict v) noexcept;

// T_n = n(n+1)/2. Throws ArithmeticRangeError when it does not fit in 64 bits.
Tokens triangular(std::uint64_t n);

// The unique n with T_n <= m < T_{n+1}.
std::uint64_t triangular_floor_index(Tokens m) noexcept;

// n when m == T_n, empty otherwise.
std::optional<std::uint64_t> exact_triangular_index(Tokens m) noexcept;

// A game position in standard form: k >= 3 heap sizes sorted nondecreasing,
// whose total fits in 64 bits.
class Position {
 public:
  // Validates k, sortedness and the total. Throws DomainError or
  // ArithmeticRangeError.
  static Position from_sorted(std::vector<Tokens> heaps,
                              std::size_t max_heaps = kDefaultMaxHeaps);

  // Sorts first, then validates.
  static Position canonical(std::vector<Tokens> heaps,
                            std::size_t max_heaps = kDefaultMaxHeaps);

  std::size_t k() const noexcept { return heaps_.size(); }
  Tokens operator[](std::size_t i) const noexcept { return heaps_[i]; }
  std::span<const Tokens> heaps() const noexcept { return heaps_; }
  Tokens smallest() const noexcept { return heaps_.front(); }
  Tokens total() const noexcept { return total_; }
  // Sum of every heap except the smallest.
  Tokens rest_sum() const noexcept { return total_ - heaps_.front(); }
  bool is_terminal() const noexcept { return heaps_.back() == 0; }

  friend bool operator==(const Position& a, const Position& b) noexcept {
    return a.heaps_ == b.heaps_;
  }
  friend auto operator<=>(const Position& a, const Position& b) noexcept {
    return a.heaps_ <=> b.heaps_;
  }

 private:
  Position(std::vector<Tokens> heaps, Tokens total)
      : heaps_(std::move(heaps)), total_(total) {}

  std::vector<Tokens> heaps_;
  Tokens total_ = 0;
};

// "(3,3,4,4)"
std::string format_heaps(std::span<const Tokens> heaps);
std::ostream& operator<<(std::ostream& os, const Position& p);

// A sorted position together with the map back to the caller's labels:
// canonical heap i is the caller's heap `permutation[i]`.
struct Normalized {
  Position position;
  std::vector<std::size_t> permutation;
};

// Stable sort of labeled heaps. Fewer than three heaps is a DomainError.
Normalized normalize(std::span<const Tokens> raw,
                     std::size_t max_heaps = kDefaultMaxHeaps);

// The class index n when p is a P-position: smallest heap T_n and the other
// heaps summing to (k-1)T_n + n.
std::optional<std::uint64_t> p_class_index(const Position& p) noexcept;

inline bool is_p_position(const Position& p) noexcept {
  return p_class_index(p).has_value();
}

// All P-positions whose smallest heap is T_n, in lexicographic order.
struct PClass {
  std::uint64_t n = 0;
  std::size_t k = 0;
  std::vector<Position> members;
};

PClass enumerate_p_class(std::uint64_t n, std::size_t k,
                         std::size_t cap = kDefaultEnumerationCap);

// The member of t's class built from T_n repeated k-3 times, T_n+n-j and
// T_n+j (with t = T_n + j), prefixed by T_n. It contains t as a heap.
Position witness_containing(Tokens t, std::size_t k);

}  // namespace heapgame

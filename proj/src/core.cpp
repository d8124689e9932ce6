#include "heapgame/core.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

namespace heapgame {

std::string_view to_string(Verdict v) noexcept { return v == Verdict::P ? "P" : "N"; }

Tokens triangular(std::uint64_t n) {
  // One of n, n+1 is even; halve it before multiplying.
  const std::uint64_t next = checked_add(n, 1, "triangular index");
  return n % 2 == 0 ? checked_mul(n / 2, next, "triangular number")
                    : checked_mul(n, next / 2, "triangular number");
}

std::uint64_t triangular_floor_index(Tokens m) noexcept {
  // n = floor((sqrt(8m+1) - 1) / 2), evaluated in 128-bit integers.
  const u128 disc = static_cast<u128>(m) * 8 + 1;
  std::uint64_t n = (isqrt(disc) - 1) / 2;
  // T_n <= m < T_{n+1} holds exactly after the integer root; the checks
  // below guard the invariant rather than the estimate.
  auto tri = [](std::uint64_t x) { return static_cast<u128>(x) * (x + 1) / 2; };
  while (tri(n) > m) --n;
  while (tri(n + 1) <= m) ++n;
  return n;
}

std::optional<std::uint64_t> exact_triangular_index(Tokens m) noexcept {
  const std::uint64_t n = triangular_floor_index(m);
  if (static_cast<u128>(n) * (n + 1) / 2 == m) return n;
  return std::nullopt;
}

namespace {

void check_heap_count(std::size_t k, std::size_t max_heaps) {
  if (k < kMinHeaps)
    throw DomainError("the game needs at least 3 heaps (got " + std::to_string(k) +
                      "); two heaps is classic Wythoff");
  if (k > max_heaps)
    throw DomainError("heap count " + std::to_string(k) + " exceeds the limit of " +
                      std::to_string(max_heaps));
}

}  // namespace

Position Position::from_sorted(std::vector<Tokens> heaps, std::size_t max_heaps) {
  check_heap_count(heaps.size(), max_heaps);
  if (!std::is_sorted(heaps.begin(), heaps.end()))
    throw DomainError("heaps are not in nondecreasing order: " + format_heaps(heaps));
  Tokens total = 0;
  for (Tokens h : heaps) total = checked_add(total, h, "total token count");
  return Position(std::move(heaps), total);
}

Position Position::canonical(std::vector<Tokens> heaps, std::size_t max_heaps) {
  std::sort(heaps.begin(), heaps.end());
  return from_sorted(std::move(heaps), max_heaps);
}

std::string format_heaps(std::span<const Tokens> heaps) {
  std::string s = "(";
  for (std::size_t i = 0; i < heaps.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(heaps[i]);
  }
  s += ')';
  return s;
}

std::ostream& operator<<(std::ostream& os, const Position& p) {
  return os << format_heaps(p.heaps());
}

Normalized normalize(std::span<const Tokens> raw, std::size_t max_heaps) {
  check_heap_count(raw.size(), max_heaps);
  std::vector<std::size_t> perm(raw.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
  std::vector<Tokens> sorted(raw.size());
  for (std::size_t i = 0; i < perm.size(); ++i) sorted[i] = raw[perm[i]];
  return {Position::from_sorted(std::move(sorted), max_heaps), std::move(perm)};
}

std::optional<std::uint64_t> p_class_index(const Position& p) noexcept {
  const auto n = exact_triangular_index(p.smallest());
  if (!n) return std::nullopt;
  // (k-1)T_n + n in 128 bits; rest_sum always fits in 64.
  const u128 want = static_cast<u128>(p.k() - 1) * p.smallest() + *n;
  if (want != p.rest_sum()) return std::nullopt;
  return n;
}

PClass enumerate_p_class(std::uint64_t n, std::size_t k, std::size_t cap) {
  check_heap_count(k, kDefaultMaxHeaps);
  const Tokens tn = triangular(n);
  // Every member totals kT_n + n; make sure that fits before enumerating.
  checked_add(checked_mul(k, tn, "class total"), n, "class total");

  PClass out{n, k, {}};
  // Offsets x_i = m_i - T_n form a nondecreasing (k-1)-tuple summing to n.
  const std::size_t slots = k - 1;
  std::vector<Tokens> offsets(slots, 0);
  auto emit = [&] {
    if (out.members.size() >= cap)
      throw ResourceLimitError("class P_" + std::to_string(n) + " has more than " +
                               std::to_string(cap) + " members");
    std::vector<Tokens> heaps;
    heaps.reserve(k);
    heaps.push_back(tn);
    for (Tokens x : offsets) heaps.push_back(tn + x);
    out.members.push_back(Position::from_sorted(std::move(heaps), k));
  };
  auto fill = [&](auto&& self, std::size_t slot, Tokens lo, Tokens remaining) -> void {
    const std::size_t left = slots - slot;
    if (left == 1) {
      if (remaining >= lo) {
        offsets[slot] = remaining;
        emit();
      }
      return;
    }
    for (Tokens x = lo; x <= remaining / left; ++x) {
      offsets[slot] = x;
      self(self, slot + 1, x, remaining - x);
    }
  };
  fill(fill, 0, 0, n);
  return out;
}

Position witness_containing(Tokens t, std::size_t k) {
  check_heap_count(k, kDefaultMaxHeaps);
  const std::uint64_t n = triangular_floor_index(t);
  const Tokens tn = triangular(n);
  const Tokens j = t - tn;
  std::vector<Tokens> heaps(k - 2, tn);  // anchor plus k-3 copies
  heaps.push_back(checked_add(tn, n - j));
  heaps.push_back(t);
  return Position::canonical(std::move(heaps), k);
}

}  // namespace heapgame

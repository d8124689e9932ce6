#include "heapgame/wythoff.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace heapgame::wythoff {

namespace {

// Keeps 5n^2 inside 128 bits and B_n inside 64 bits.
constexpr std::uint64_t kMaxIndex = std::uint64_t{1} << 62;

void check_heap(Tokens h) {
  if (h > kMaxIndex)
    throw ArithmeticRangeError("Wythoff heap " + std::to_string(h) + " exceeds 2^62");
}

// Smallest n in [lo, hi] with key(n) >= target; key is increasing.
template <class Key>
std::uint64_t lower_index(std::uint64_t lo, std::uint64_t hi, Tokens target, Key key) {
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (key(mid) >= target) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

}  // namespace

std::vector<WythoffPair> wythoff_pairs_mex(std::size_t count) {
  std::vector<WythoffPair> out;
  out.reserve(count);
  // used[v]: v is already some A_i or B_i. B_n < 3n covers every value.
  std::vector<char> used(3 * count + 3, 0);
  Tokens next_free = 0;
  for (std::uint64_t n = 0; n < count; ++n) {
    while (used[next_free]) ++next_free;
    const Tokens a = next_free;
    const Tokens b = a + n;
    used[a] = 1;
    used[b] = 1;
    out.push_back({n, a, b});
  }
  return out;
}

WythoffPair beatty_pair(std::uint64_t n) {
  if (n > kMaxIndex)
    throw ArithmeticRangeError("Beatty index " + std::to_string(n) + " exceeds 2^62");
  const u128 n2 = static_cast<u128>(n) * n;
  // n*sqrt(5) is irrational for n > 0, so flooring the root first is exact.
  const Tokens a = static_cast<Tokens>((static_cast<u128>(n) + isqrt(5 * n2)) / 2);
  return {n, a, a + n};
}

Verdict wythoff_classify(Tokens x, Tokens y) {
  if (x > y) std::swap(x, y);
  check_heap(y);
  return beatty_pair(y - x).a == x ? Verdict::P : Verdict::N;
}

std::optional<WythoffMove> wythoff_winning_move(Tokens x, Tokens y) {
  const bool swapped = x > y;
  if (swapped) std::swap(x, y);
  check_heap(y);
  if (wythoff_classify(x, y) == Verdict::P) return std::nullopt;

  auto labeled = [&](Tokens take_small, Tokens take_large) {
    return swapped ? WythoffMove{take_large, take_small} : WythoffMove{take_small, take_large};
  };

  // A_n >= n and B_n >= 2n bound the searches.
  const std::uint64_t n = lower_index(0, x, x, [](std::uint64_t i) { return beatty_pair(i).a; });
  const WythoffPair pa = beatty_pair(n);
  if (pa.a == x) {
    if (y > pa.b) return labeled(0, y - pa.b);
    // y < B_n: the gap d = y - x < n, and (A_d, B_d) sits diagonally below.
    const WythoffPair pd = beatty_pair(y - x);
    return labeled(x - pd.a, x - pd.a);
  }
  // Otherwise x = B_m for some m; pair it with A_m.
  const std::uint64_t m = lower_index(0, x / 2, x, [](std::uint64_t i) { return beatty_pair(i).b; });
  const WythoffPair pb = beatty_pair(m);
  return labeled(0, y - pb.a);
}

}  // namespace heapgame::wythoff

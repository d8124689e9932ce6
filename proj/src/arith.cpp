#include "heapgame/arith.hpp"

#include <cmath>
#include <limits>

namespace heapgame {

std::uint64_t isqrt(u128 x) noexcept {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  // long double carries a 64-bit mantissa on x86, so the estimate is off by
  // at most a few units; the loops below make it exact.
  long double est = std::sqrt(static_cast<long double>(x));
  std::uint64_t r = est >= static_cast<long double>(kMax)
                        ? kMax
                        : static_cast<std::uint64_t>(est);
  while (static_cast<u128>(r) * r > x) --r;
  while (r < kMax && static_cast<u128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace heapgame

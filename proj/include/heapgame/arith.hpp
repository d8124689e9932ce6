#pragma once

#include <cstdint>
#include <string_view>

#include "heapgame/error.hpp"

namespace heapgame {

using Tokens = std::uint64_t;
using u128 = unsigned __int128;

inline Tokens checked_add(Tokens a, Tokens b, std::string_view what = "sum") {
  Tokens r;
  if (__builtin_add_overflow(a, b, &r))
    throw ArithmeticRangeError(std::string(what) + " exceeds 64-bit range");
  return r;
}

inline Tokens checked_sub(Tokens a, Tokens b, std::string_view what = "difference") {
  if (b > a) throw ArithmeticRangeError(std::string(what) + " would be negative");
  return a - b;
}

inline Tokens checked_mul(Tokens a, Tokens b, std::string_view what = "product") {
  Tokens r;
  if (__builtin_mul_overflow(a, b, &r))
    throw ArithmeticRangeError(std::string(what) + " exceeds 64-bit range");
  return r;
}

// floor(sqrt(x)), exact for every 128-bit input.
std::uint64_t isqrt(u128 x) noexcept;

}  // namespace heapgame

#pragma once

#include <cstdint>
#include <numeric>

#include "subprod/errors.hpp"

namespace subprod::checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in multiplication");
  return r;
}

inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

inline std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return mul(a / std::gcd(a, b), b);
}

/// Least nonnegative residue; m > 0.
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// (a * b) mod m without intermediate overflow; m > 0.
inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  __int128 r = static_cast<__int128>(mod(a, m)) * mod(b, m) % m;
  return static_cast<std::int64_t>(r);
}

/// Inverse of a modulo m, assuming gcd(a, m) == 1. For m == 1 returns 0.
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  ensure(old_r == 1, "inverse_mod: argument not invertible");
  return mod(old_s, m);
}

}  // namespace subprod::checked

#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "kms/error.hpp"

namespace kms {

using i64 = std::int64_t;

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Overflow, "integer multiplication overflow");
  return r;
}

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::Overflow, "integer addition overflow");
  return r;
}

// gcd(k, 0) = k, always non-negative.
inline i64 gcd0(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

inline i64 lcm0(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  i64 g = gcd0(a, b);
  return checked_mul(std::llabs(a) / g, std::llabs(b));
}

// Floor-style modulus into [0, m).
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline std::vector<i64> divisors(i64 n) {
  std::vector<i64> out;
  n = std::llabs(n);
  for (i64 d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// Extended Euclid: returns g = gcd(a,b) >= 0 with x*a + y*b = g.
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

}  // namespace kms

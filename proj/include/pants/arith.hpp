#pragma once

#include <cstdint>
#include <stdexcept>

namespace pants {

using i64 = std::int64_t;

// Checked 64-bit arithmetic. Weights and chart matrices grow quickly under
// twisting, so silent wraparound is never acceptable.
inline i64 add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

inline i64 sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
  return r;
}

inline i64 mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

inline i64 iabs(i64 a) {
  if (a == INT64_MIN) throw std::overflow_error("integer overflow in abs");
  return a < 0 ? -a : a;
}

inline i64 gcd(i64 a, i64 b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Exact halving; odd input means the caller's data is inconsistent.
inline i64 half(i64 a) {
  if (a % 2 != 0) throw std::domain_error("odd value where an even one was required");
  return a / 2;
}

}  // namespace pants

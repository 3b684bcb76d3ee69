#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cycloforge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

// Thrown by the checked 64-bit kernels; callers catch it and re-run in BigInt.
struct Overflow {};

template <class C>
struct Arith;

template <>
struct Arith<std::int64_t> {
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t neg(std::int64_t a) {
    if (a == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return -a;
  }
  static std::int64_t abs(std::int64_t a) { return a < 0 ? neg(a) : a; }
};

template <>
struct Arith<BigInt> {
  static BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
  static BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
  static BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
  static BigInt neg(const BigInt& a) { return -a; }
  static BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }
};

}  // namespace detail

inline bool fits_int64(const BigInt& v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

inline std::optional<std::int64_t> to_int64(const BigInt& v) {
  if (!fits_int64(v)) return std::nullopt;
  return static_cast<std::int64_t>(v);
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

}  // namespace cycloforge

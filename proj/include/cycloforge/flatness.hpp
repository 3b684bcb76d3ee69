#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cycloforge/cyclotomic.hpp"
#include "cycloforge/error.hpp"
#include "cycloforge/intpoly.hpp"
#include "cycloforge/number_theory.hpp"
#include "cycloforge/pseudocyclo.hpp"

namespace cycloforge {

using Height = BigInt;

namespace detail {

inline void require_distinct_primes(const std::vector<u64>& factors, bool allow_two) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const u64 f = factors[i];
    if (!is_prime(f) || (f == 2 && !allow_two)) {
      fail(ErrorKind::NotSortedDistinctOddPrimes, std::to_string(f) + " is not an odd prime");
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (factors[k] == f) fail(ErrorKind::NotSortedDistinctOddPrimes, "repeated prime factor");
    }
  }
}

inline u64 product(const std::vector<u64>& fs) {
  u64 n = 1;
  for (u64 f : fs) n *= f;
  return n;
}

}  // namespace detail

/// A(n) for any positive n; reduces to the odd radical, which has the same height.
inline Height height(u64 n) {
  u64 m = radical(n);
  if (m % 2 == 0) m /= 2;
  return poly_height(phi_uncached(m));
}

/// A(n) where n is built from distinct odd primes times an optional multiplier
/// whose prime factors are 2 or already among `factors`.
inline Height height_of(const std::vector<u64>& factors, u64 multiplier = 1) {
  detail::require_distinct_primes(factors, false);
  if (multiplier == 0) fail(ErrorKind::InvalidArgument, "multiplier must be positive");
  for (u64 q : prime_factors(multiplier)) {
    if (q != 2 && std::find(factors.begin(), factors.end(), q) == factors.end()) {
      fail(ErrorKind::InvalidArgument, "multiplier introduces a new odd prime");
    }
  }
  return poly_height(phi_uncached(detail::product(factors)));
}

/// V_n for n the product of distinct primes (2 allowed). Substituting x^k does
/// not change the coefficient set, so only the radical matters.
inline std::set<BigInt> coefficient_set_of(const std::vector<u64>& factors) {
  detail::require_distinct_primes(factors, true);
  return coeff_set(phi_uncached(detail::product(factors)));
}

enum class VerdictStatus { Flat, NotFlat, HeightExactly2, BoundOnly, TheoremSilent };

constexpr std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Flat: return "Flat";
    case VerdictStatus::NotFlat: return "NotFlat";
    case VerdictStatus::HeightExactly2: return "HeightExactly2";
    case VerdictStatus::BoundOnly: return "BoundOnly";
    case VerdictStatus::TheoremSilent: return "TheoremSilent";
  }
  return "?";
}

struct Verdict {
  VerdictStatus status = VerdictStatus::TheoremSilent;
  std::string citation;          // e.g. "r±1", "broadhurst-ii w=3"; empty when silent
  std::optional<BigInt> bound;   // set for BoundOnly
  std::string detail;

  /// Whether a brute-force height agrees with this verdict.
  bool consistent_with(const Height& h) const {
    switch (status) {
      case VerdictStatus::Flat: return h == 1;
      case VerdictStatus::NotFlat: return h > 1;
      case VerdictStatus::HeightExactly2: return h == 2;
      case VerdictStatus::BoundOnly: return h <= *bound;
      case VerdictStatus::TheoremSilent: return true;
    }
    return false;
  }
};

inline std::string format_verdict(const Verdict& v) {
  std::string s(to_string(v.status));
  if (!v.citation.empty()) s += " theorem=" + v.citation;
  if (v.bound) s += " bound=" + v.bound->str();
  return s;
}

inline void require_sorted_odd_primes(const std::vector<u64>& factors) {
  detail::require_distinct_primes(factors, false);
  if (!std::is_sorted(factors.begin(), factors.end())) {
    fail(ErrorKind::NotSortedDistinctOddPrimes, "factors must be ascending");
  }
}

namespace detail {

inline bool pm(u64 a, u64 target, u64 m) {
  const u64 r = a % m;
  return r == target % m || (r + target) % m == 0;
}

inline Verdict classify_ternary(u64 p, u64 q, u64 r) {
  const u64 pq = p * q;
  auto say = [](VerdictStatus s, std::string cite, std::string why) {
    return Verdict{s, std::move(cite), std::nullopt, std::move(why)};
  };
  if (pm(r, 1, pq)) return say(VerdictStatus::Flat, "r±1", "r = ±1 mod pq");
  if (pm(r, 2, pq)) {
    if (q % p == 1) return say(VerdictStatus::Flat, "r±2", "r = ±2 mod pq and q = 1 mod p");
    return say(VerdictStatus::HeightExactly2, "r±2", "r = ±2 mod pq and q != 1 mod p");
  }
  for (u64 w : divisors(p - 1)) {
    if (q % (p * w) != 1 % (p * w)) continue;
    if (pm(r, w, pq)) {
      return say(VerdictStatus::Flat, "broadhurst-ii w=" + std::to_string(w),
                 "r = ±w mod pq, p = 1 mod w, q = 1 mod pw");
    }
  }
  const std::int64_t w = least_abs_residue(static_cast<std::int64_t>(r), static_cast<std::int64_t>(pq));
  const u64 aw = static_cast<u64>(w < 0 ? -w : w);
  if (r > pq && 2 * aw < pq && q - p < aw && aw < q + p && aw != q) {
    return say(VerdictStatus::NotFlat, "forbidden-binomial", "q-p < |w| < q+p with r > pq");
  }
  Verdict v = say(VerdictStatus::BoundOnly, "|w|", "A(pqr) <= |w|");
  v.bound = BigInt(aw);
  return v;
}

}  // namespace detail

/// Theorem-backed flatness verdict for an ascending list of distinct odd primes.
/// Never computes a height.
inline Verdict classify(const std::vector<u64>& f) {
  require_sorted_odd_primes(f);
  using detail::pm;
  switch (f.size()) {
    case 0:
    case 1:
    case 2:
      return {VerdictStatus::Flat, "order<=2", std::nullopt, "prime and binary cyclotomics are flat"};
    case 3:
      return detail::classify_ternary(f[0], f[1], f[2]);
    case 4: {
      const u64 pq = f[0] * f[1];
      if (pm(f[2], 1, pq) && pm(f[3], 1, pq * f[2])) {
        if (f[1] % f[0] == f[0] - 1) {
          return {VerdictStatus::Flat, "pqrs", std::nullopt, "chain congruences with q = -1 mod p"};
        }
        return {VerdictStatus::NotFlat, "pqrs", std::nullopt, "chain congruences with q != -1 mod p"};
      }
      break;
    }
    case 5: {
      const u64 pq = f[0] * f[1];
      const u64 pqr = pq * f[2];
      if (pm(f[2], 1, pq) && pm(f[3], 1, pqr) && pm(f[4], 1, pqr * f[3])) {
        return {VerdictStatus::NotFlat, "pqrst", std::nullopt, "quinary chain congruences"};
      }
      break;
    }
    default:
      break;
  }
  return {VerdictStatus::TheoremSilent, "", std::nullopt, "no theorem applies"};
}

/// Height of the pseudocyclotomic polynomial for the given parts.
inline Height pseudo_height(const std::vector<u64>& parts) {
  return poly_height(pseudo_phi(PseudoParts(parts)));
}

}  // namespace cycloforge

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "cycloforge/error.hpp"

namespace cycloforge {

using u64 = std::uint64_t;

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve prime bases cover all of u64.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

using Factorization = std::vector<std::pair<u64, int>>;

/// Trial division; fine for every n the library handles (n <= ~10^12).
inline Factorization factorize(u64 n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "n must be positive");
  Factorization f;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> ps;
  for (auto [p, e] : factorize(n)) ps.push_back(p);
  return ps;
}

inline u64 totient(u64 n) {
  u64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

inline int mobius(u64 n) {
  int r = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    r = -r;
  }
  return r;
}

inline u64 radical(u64 n) {
  u64 r = 1;
  for (auto [p, e] : factorize(n)) r *= p;
  return r;
}

inline bool is_squarefree(u64 n) { return mobius(n) != 0; }

/// Divisors in increasing order.
inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> ds{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t base = ds.size();
    u64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

/// x with a*x = 1 (mod m), 0 <= x < m.
inline std::int64_t modinv(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, r = ((a % m) + m) % m, y = 1;
  while (r) {
    const std::int64_t q = g / r;
    std::tie(g, r) = std::pair{r, g - q * r};
    std::tie(x, y) = std::pair{y, x - q * y};
  }
  if (g != 1) fail(ErrorKind::NotCoprime, "no inverse: arguments not coprime");
  return ((x % m) + m) % m;
}

/// Least absolute residue of a modulo m; ties resolve to the positive value.
inline std::int64_t least_abs_residue(std::int64_t a, std::int64_t m) {
  std::int64_t r = ((a % m) + m) % m;
  return 2 * r > m ? r - m : r;
}

inline std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> ps;
  if (limit < 2) return ps;
  std::vector<bool> comp(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    ps.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
  }
  return ps;
}

/// A positive integer together with its factorization.
struct CycloIndex {
  u64 n = 1;
  Factorization prime_factorization;
  u64 radical = 1;
  int odd_part_order = 0;  // number of distinct odd primes dividing n

  friend bool operator==(const CycloIndex&, const CycloIndex&) = default;
};

inline CycloIndex make_cyclo_index(u64 n) {
  CycloIndex c;
  c.n = n;
  c.prime_factorization = factorize(n);
  for (auto [p, e] : c.prime_factorization) {
    c.radical *= p;
    if (p != 2) ++c.odd_part_order;
  }
  return c;
}

}  // namespace cycloforge

#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cycloforge/error.hpp"
#include "cycloforge/intpoly.hpp"
#include "cycloforge/number_theory.hpp"

namespace cycloforge {

enum class PhiAlgorithm { MobiusProduct, RecursiveQuotient, SparseSeries, GcdOfSparse };

constexpr std::string_view to_string(PhiAlgorithm a) {
  switch (a) {
    case PhiAlgorithm::MobiusProduct: return "mobius";
    case PhiAlgorithm::RecursiveQuotient: return "quotient";
    case PhiAlgorithm::SparseSeries: return "sparse";
    case PhiAlgorithm::GcdOfSparse: return "gcd";
  }
  return "?";
}

inline std::optional<PhiAlgorithm> parse_phi_algorithm(std::string_view s) {
  for (auto a : {PhiAlgorithm::MobiusProduct, PhiAlgorithm::RecursiveQuotient,
                 PhiAlgorithm::SparseSeries, PhiAlgorithm::GcdOfSparse}) {
    if (s == to_string(a)) return a;
  }
  return std::nullopt;
}

/// (m, k) with m the radical of n and k = n / m, so Phi_n(x) = Phi_m(x^k).
inline std::pair<u64, u64> radical_reduce(u64 n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "n must be positive");
  const u64 m = radical(n);
  return {m, n / m};
}

inline PhiAlgorithm default_algorithm(u64 n) {
  const u64 m = radical(n);
  const auto c = make_cyclo_index(m);
  return c.odd_part_order >= 2 ? PhiAlgorithm::SparseSeries : PhiAlgorithm::MobiusProduct;
}

/// Memo of Phi_m for squarefree m. Bounded by a total coefficient budget; when
/// the budget is exhausted the cache starts over rather than growing.
class PhiCache {
 public:
  std::optional<IntPolynomial> get(u64 m) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(m);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void put(u64 m, const IntPolynomial& phi) {
    std::unique_lock lock(mutex_);
    if (map_.count(m)) return;
    if (stored_ + phi.size() > budget_) {
      map_.clear();
      stored_ = 0;
    }
    if (phi.size() > budget_ / 4) return;
    map_.emplace(m, phi);
    stored_ += phi.size();
  }

  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
    stored_ = 0;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<u64, IntPolynomial> map_;
  std::size_t stored_ = 0;
  std::size_t budget_ = std::size_t(1) << 23;
};

inline PhiCache& phi_cache() {
  static PhiCache cache;
  return cache;
}

namespace detail {

using SubPhi = std::function<IntPolynomial(u64)>;

// Truncated power series of prod_{d|m} (1 - x^d)^{mu(m/d)}, alternating
// multiplications and divisions to keep the running coefficients small.
template <class C>
std::vector<C> mobius_kernel(u64 m) {
  const std::size_t len = totient(m) + 1;
  std::vector<C> c(len, C(0));
  c[0] = C(1);
  std::vector<u64> up, down;
  for (u64 d : divisors(m)) {
    const int mu = mobius(m / d);
    if (mu == 1) up.push_back(d);
    if (mu == -1) down.push_back(d);
  }
  auto multiply = [&](u64 d) {
    for (std::size_t i = len; i-- > d;) c[i] = Arith<C>::sub(c[i], c[i - d]);
  };
  auto divide = [&](u64 d) {
    for (std::size_t i = d; i < len; ++i) c[i] = Arith<C>::add(c[i], c[i - d]);
  };
  std::size_t i = 0, j = 0;
  while (i < up.size() || j < down.size()) {
    if (i < up.size()) multiply(up[i++]);
    if (j < down.size()) divide(down[j++]);
  }
  trim(c);
  return c;
}

inline IntPolynomial phi_mobius(u64 m) {
  if (m == 1) return IntPolynomial{-1, 1};
  try {
    return IntPolynomial(mobius_kernel<std::int64_t>(m));
  } catch (const Overflow&) {
    return IntPolynomial::from_big(mobius_kernel<BigInt>(m));
  }
}

inline IntPolynomial phi_quotient(u64 m) {
  IntPolynomial f{-1, 1};
  for (u64 p : prime_factors(m)) f = poly_exact_div(substitute_power(f, p), f);
  return f;
}

// Psi_m for squarefree m via Psi_{np}(x) = Psi_n(x^p) Phi_n(x).
inline IntPolynomial psi_squarefree(u64 m, const SubPhi& sub) {
  IntPolynomial s = IntPolynomial::constant(1);
  u64 cur = 1;
  for (u64 p : prime_factors(m)) {
    s = poly_mul(substitute_power(s, p), sub(cur));
    cur *= p;
  }
  return s;
}

// -psi * phi(x^p) * (1 + x^n + x^{2n} + ...) truncated at degree N.
template <class C>
std::vector<C> sparse_series_kernel(std::span<const C> psi, std::span<const C> phi, u64 p, u64 n,
                                    std::size_t N) {
  std::vector<C> c(N + 1, C(0));
  const auto nzpsi = nonzeros(psi);
  for (std::size_t i = 0; i < phi.size() && i * p <= N; ++i) {
    if (phi[i] == 0) continue;
    const std::size_t e = i * p;
    for (const auto& [j, v] : nzpsi) {
      if (e + j > N) break;
      c[e + j] = Arith<C>::add(c[e + j], Arith<C>::mul(phi[i], v));
    }
  }
  for (std::size_t i = n; i <= N; ++i) c[i] = Arith<C>::add(c[i], c[i - n]);
  for (auto& v : c) v = Arith<C>::neg(v);
  trim(c);
  return c;
}

inline IntPolynomial phi_sparse(u64 m, const SubPhi& sub) {
  if (m == 1) return IntPolynomial{-1, 1};
  const auto ps = prime_factors(m);
  const u64 p = ps.back();
  const u64 n = m / p;
  const IntPolynomial psi = psi_squarefree(n, sub);
  const IntPolynomial base = sub(n);
  const std::size_t N = totient(m);
  return escalate(psi, base, [&](auto a, auto b) { return sparse_series_kernel(a, b, p, n, N); });
}

inline IntPolynomial phi_gcd(u64 m) {
  if (m == 1) return IntPolynomial{-1, 1};
  const auto ps = prime_factors(m);
  IntPolynomial g;
  // largest prime first: smallest-degree operand leads the remainder sequence
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
    const IntPolynomial f = IntPolynomial::geometric(m / *it, *it);
    g = g.is_zero() ? f : poly_gcd(g, f);
  }
  return g;
}

inline IntPolynomial phi_squarefree(u64 m, PhiAlgorithm alg, const SubPhi& sub) {
  switch (alg) {
    case PhiAlgorithm::MobiusProduct: return phi_mobius(m);
    case PhiAlgorithm::RecursiveQuotient: return phi_quotient(m);
    case PhiAlgorithm::SparseSeries: return phi_sparse(m, sub);
    case PhiAlgorithm::GcdOfSparse: return phi_gcd(m);
  }
  return {};
}

inline IntPolynomial phi_squarefree_cached(u64 m);

inline IntPolynomial phi_squarefree_default(u64 m) {
  return phi_squarefree(m, default_algorithm(m), phi_squarefree_cached);
}

inline IntPolynomial phi_squarefree_cached(u64 m) {
  if (auto hit = phi_cache().get(m)) return *hit;
  IntPolynomial f = phi_squarefree_default(m);
  phi_cache().put(m, f);
  return f;
}

}  // namespace detail

/// Phi_n by the default algorithm, memoized per process.
inline IntPolynomial phi(u64 n) {
  const auto [m, k] = radical_reduce(n);
  return substitute_power(detail::phi_squarefree_cached(m), k);
}

/// Phi_n by the default algorithm without storing the result; intermediate
/// factors of smaller index still go through the cache.
inline IntPolynomial phi_uncached(u64 n) {
  const auto [m, k] = radical_reduce(n);
  if (auto hit = phi_cache().get(m)) return substitute_power(*hit, k);
  return substitute_power(detail::phi_squarefree_default(m), k);
}

/// Phi_n by the named algorithm, computed fresh with every sub-step using the
/// same algorithm. GcdOfSparse is limited to n <= 5000 unless `force` is set.
inline IntPolynomial phi(u64 n, PhiAlgorithm alg, bool force = false) {
  const auto [m, k] = radical_reduce(n);
  if (alg == PhiAlgorithm::GcdOfSparse && n > 5000 && !force) {
    fail(ErrorKind::InvalidArgument, "gcd algorithm limited to n <= 5000");
  }
  std::function<IntPolynomial(u64)> sub = [&](u64 d) {
    return detail::phi_squarefree(d, alg, sub);
  };
  return substitute_power(sub(m), k);
}

/// Psi_n = (x^n - 1) / Phi_n.
inline IntPolynomial psi(u64 n) {
  const auto [m, k] = radical_reduce(n);
  return substitute_power(detail::psi_squarefree(m, detail::phi_squarefree_cached), k);
}

}  // namespace cycloforge

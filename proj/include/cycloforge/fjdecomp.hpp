#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "cycloforge/binary_structure.hpp"
#include "cycloforge/cyclotomic.hpp"
#include "cycloforge/error.hpp"
#include "cycloforge/intpoly.hpp"
#include "cycloforge/number_theory.hpp"
#include "cycloforge/pseudocyclo.hpp"

namespace cycloforge {

/// Residue-class slices F_0..F_{p-1} of Phi_np by exponent mod p.
struct FjFamily {
  u64 n = 0;
  u64 p = 0;
  std::vector<IntPolynomial> members;
};

/// Phi_np = a * Phi_p(x^n) + b * Phi_n(x^p), deg a < phi(n).
struct BezoutSplit {
  u64 n = 0;
  u64 p = 0;
  IntPolynomial a;
  IntPolynomial b;
};

namespace detail {

inline void require_prime_index(u64 n, u64 p) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "n must be positive");
  if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (n % p == 0) fail(ErrorKind::NotCoprimeIndex, "p divides n");
}

// Dense polynomial arithmetic over Z/P for P = 2^61 - 1.
struct ModP {
  static constexpr u64 P = (u64(1) << 61) - 1;
  using Vec = std::vector<u64>;

  static u64 add(u64 a, u64 b) { return (a + b) % P; }
  static u64 sub(u64 a, u64 b) { return (a + P - b) % P; }
  static u64 mul(u64 a, u64 b) { return mulmod(a, b, P); }
  static u64 inv(u64 a) { return powmod(a, P - 2, P); }

  static void trim(Vec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  }

  static Vec from(const IntPolynomial& f) {
    Vec v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      BigInt c = f.coeff(static_cast<std::int64_t>(i)) % BigInt(P);
      if (c < 0) c += P;
      v[i] = static_cast<u64>(c);
    }
    return v;
  }

  static Vec mul(const Vec& a, const Vec& b) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
    }
    trim(r);
    return r;
  }

  static Vec sub(const Vec& a, const Vec& b) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
    trim(r);
    return r;
  }

  static void divmod(const Vec& a, const Vec& b, Vec& q, Vec& r) {
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    const u64 il = inv(b.back());
    while (r.size() >= b.size() && !r.empty()) {
      const std::size_t s = r.size() - b.size();
      const u64 c = mul(r.back(), il);
      q[s] = c;
      for (std::size_t i = 0; i < b.size(); ++i) r[s + i] = sub(r[s + i], mul(c, b[i]));
      trim(r);
    }
    trim(q);
  }

  // s with s * a = 1 (mod m), or nullopt when gcd(a, m) is not a unit.
  static std::optional<Vec> inverse(const Vec& a, const Vec& m) {
    Vec r0 = m, r1 = a, s0, s1{1};
    while (!r1.empty()) {
      Vec q, r;
      divmod(r0, r1, q, r);
      Vec s = sub(s0, mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    if (r0.size() != 1) return std::nullopt;
    const u64 c = inv(r0[0]);
    for (auto& x : s0) x = mul(x, c);
    Vec q, rem;
    divmod(s0, m, q, rem);
    return rem;
  }

  static IntPolynomial lift(const Vec& v) {
    std::vector<BigInt> c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      c[i] = v[i] > P / 2 ? BigInt(v[i]) - BigInt(P) : BigInt(v[i]);
    }
    return IntPolynomial::from_big(std::move(c));
  }
};

// Extended Euclid over Q[x]: s with s * a = 1 (mod m); IntegralityFailure if
// s has a non-integral coefficient.
inline IntPolynomial rational_inverse(const IntPolynomial& a, const IntPolynomial& m) {
  using RVec = std::vector<Rational>;
  auto to_r = [](const IntPolynomial& f) {
    RVec v;
    for (std::int64_t i = 0; i <= f.degree(); ++i) v.emplace_back(f.coeff(i));
    return v;
  };
  auto trim_r = [](RVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  auto divmod = [&](const RVec& x, const RVec& y, RVec& q, RVec& r) {
    r = x;
    q.assign(x.size() >= y.size() ? x.size() - y.size() + 1 : 0, Rational(0));
    while (r.size() >= y.size() && !r.empty()) {
      const std::size_t s = r.size() - y.size();
      const Rational c = r.back() / y.back();
      q[s] = c;
      for (std::size_t i = 0; i < y.size(); ++i) r[s + i] -= c * y[i];
      trim_r(r);
    }
    trim_r(q);
  };
  auto mul = [&](const RVec& x, const RVec& y) {
    if (x.empty() || y.empty()) return RVec{};
    RVec r(x.size() + y.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
    }
    trim_r(r);
    return r;
  };
  auto sub = [&](const RVec& x, const RVec& y) {
    RVec r(std::max(x.size(), y.size()), Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i) r[i] += x[i];
    for (std::size_t i = 0; i < y.size(); ++i) r[i] -= y[i];
    trim_r(r);
    return r;
  };
  RVec r0 = to_r(m), r1 = to_r(a), s0, s1{Rational(1)};
  while (!r1.empty()) {
    RVec q, r;
    divmod(r0, r1, q, r);
    RVec s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) fail(ErrorKind::IntegralityFailure, "cofactors are not coprime");
  for (auto& x : s0) x /= r0[0];
  RVec q, rem;
  divmod(s0, to_r(m), q, rem);
  std::vector<BigInt> out;
  for (const auto& x : rem) {
    if (denominator(x) != 1) {
      fail(ErrorKind::IntegralityFailure, "Bezout coefficient has a non-integral coefficient");
    }
    out.push_back(numerator(x));
  }
  return IntPolynomial::from_big(std::move(out));
}

}  // namespace detail

/// Residue-class slices of Phi_np.
inline FjFamily fj_family(u64 n, u64 p) {
  detail::require_prime_index(n, p);
  const IntPolynomial f = phi_uncached(n * p);
  FjFamily fam{n, p, {}};
  fam.members.reserve(p);
  for (u64 j = 0; j < p; ++j) fam.members.push_back(extract_residue(f, p, static_cast<std::int64_t>(j)));
  return fam;
}

/// F_j for any integer j, using F_j = x F_{j+p} in both directions.
inline LaurentPolynomial fj_extended(const FjFamily& fam, std::int64_t j) {
  const auto p = static_cast<std::int64_t>(fam.p);
  std::int64_t r = j % p;
  if (r < 0) r += p;
  const std::int64_t q = (j - r) / p;
  return LaurentPolynomial(fam.members[r]).shifted(-q);
}

/// The unique (a, b) with Phi_np = a g + b h, g = Phi_p(x^n), h = Phi_n(x^p),
/// deg a < phi(n). Since h / Phi_np = Phi_n, a is the inverse of g / Phi_np
/// modulo Phi_n. The inverse is found modulo a 61-bit prime and accepted only
/// if the identity holds exactly over Z; otherwise it is redone over Q.
inline BezoutSplit bezout_split(u64 n, u64 p) {
  detail::require_prime_index(n, p);
  if (n < 2) fail(ErrorKind::InvalidArgument, "n must be at least 2");
  const IntPolynomial phin = phi(n);
  const IntPolynomial f = phi_uncached(n * p);
  const IntPolynomial g = IntPolynomial::geometric(n, p);
  const IntPolynomial h = substitute_power(phin, p);
  // g / f = Phi_p(x^n) Phi_n(x) / Phi_n(x^p)
  const IntPolynomial gq = poly_exact_div(poly_mul(g, phin), h);
  const IntPolynomial gr = poly_rem_monic(gq, phin);

  auto attempt = [&](const IntPolynomial& a) -> std::optional<BezoutSplit> {
    try {
      IntPolynomial b = poly_exact_div(poly_sub(f, poly_mul(a, g)), h);
      return BezoutSplit{n, p, a, std::move(b)};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RemainderNonzero) throw;
      return std::nullopt;
    }
  };

  using detail::ModP;
  if (auto inv = ModP::inverse(ModP::from(gr), ModP::from(phin))) {
    if (auto split = attempt(ModP::lift(*inv))) return *split;
  }
  const IntPolynomial a = detail::rational_inverse(gr, phin);
  if (auto split = attempt(a)) return *split;
  fail(ErrorKind::IntegralityFailure, "Bezout identity does not hold over Z");
}

/// G_j = residue slices of a(x) g(x), j in [0, p).
inline std::vector<IntPolynomial> gj_family(const BezoutSplit& s) {
  const IntPolynomial ag = poly_mul(s.a, IntPolynomial::geometric(s.n, s.p));
  std::vector<IntPolynomial> out;
  for (u64 j = 0; j < s.p; ++j) out.push_back(extract_residue(ag, s.p, static_cast<std::int64_t>(j)));
  return out;
}

/// Slices of the pseudocyclotomic polynomial for parts + {s} by exponent mod s
/// (index i*s + j).
inline std::vector<IntPolynomial> pseudo_fj_family(const std::vector<u64>& parts, u64 s) {
  std::vector<u64> all = parts;
  all.push_back(s);
  const IntPolynomial f = pseudo_phi(PseudoParts(all));
  std::vector<IntPolynomial> out;
  for (u64 j = 0; j < s; ++j) out.push_back(extract_residue(f, s, static_cast<std::int64_t>(j)));
  return out;
}

/// F_{n,p,0} for n = product of the given distinct primes and a prime p > n,
/// read off the pseudocyclotomic polynomial of (factors..., p mod n).
inline IntPolynomial f0_fast(const std::vector<u64>& factors, u64 p) {
  u64 n = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!is_prime(factors[i])) fail(ErrorKind::NotPrime, std::to_string(factors[i]) + " is not prime");
    for (std::size_t k = 0; k < i; ++k) {
      if (factors[k] == factors[i]) fail(ErrorKind::InvalidArgument, "factors must be distinct");
    }
    n *= factors[i];
  }
  if (n < 2) fail(ErrorKind::InvalidArgument, "n must be at least 2");
  detail::require_prime_index(n, p);
  if (p < n) fail(ErrorKind::RequiresLargeP, "p must exceed n");
  const u64 w = p % n;
  std::vector<u64> parts = factors;
  parts.push_back(w);
  return extract_residue(pseudo_phi(PseudoParts(parts)), w, 0);
}

/// F*_j = x^j F_0 reduced modulo Phi_n, for j in [0, n).
inline std::vector<IntPolynomial> fstar_family(u64 n, u64 p) {
  detail::require_prime_index(n, p);
  if (n < 2) fail(ErrorKind::InvalidArgument, "n must be at least 2");
  if (p < n) fail(ErrorKind::RequiresLargeP, "p must exceed n");
  const IntPolynomial f0 = is_squarefree(n)
                               ? f0_fast(prime_factors(n), p)
                               : extract_residue(phi_uncached(n * p), p, 0);
  std::vector<IntPolynomial> out;
  out.reserve(n);
  for (u64 j = 0; j < n; ++j) {
    out.push_back(mod_phi_reduce(LaurentPolynomial(f0).shifted(static_cast<std::int64_t>(j)), n));
  }
  return out;
}

/// F_j(0) = -[x^j] Psi_n for 0 <= j < n (any prime p > n).
inline std::vector<BigInt> fj_constant_terms(u64 n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "n must be at least 2");
  const IntPolynomial s = psi(n);
  std::vector<BigInt> out;
  for (u64 j = 0; j < n; ++j) out.push_back(-s.coeff(static_cast<std::int64_t>(j)));
  return out;
}

/// Index whose slice has the same coefficient set as F_j, from -phi(n) = y p + z.
inline std::int64_t reciprocity_partner(u64 n, u64 p, std::int64_t j) {
  if (n == 0 || p == 0) fail(ErrorKind::InvalidArgument, "n and p must be positive");
  if (std::gcd(n, p) != 1) fail(ErrorKind::NotCoprimeIndex, "p divides n");
  const auto pp = static_cast<std::int64_t>(p);
  if (j < 0 || j >= pp) fail(ErrorKind::IndexOutOfRange, "j must lie in [0, p)");
  const std::int64_t z = (pp - static_cast<std::int64_t>(totient(n) % p)) % pp;
  return j <= z ? z - j : pp + z - j;
}

enum class Relation { Equal, Negated, SubsetForward, NotComparable };

constexpr std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "Equal";
    case Relation::Negated: return "Negated";
    case Relation::SubsetForward: return "SubsetForward";
    case Relation::NotComparable: return "NotComparable";
  }
  return "?";
}

struct PeriodicityResult {
  Relation observed = Relation::NotComparable;
  std::optional<Relation> predicted;  // nullopt when no theorem applies
  int sign = 1;                       // +1 if s = t (mod n), else -1
  std::set<BigInt> v_ns, v_nt;

  /// Whether the observed relation is what the prediction allows.
  bool consistent() const {
    if (!predicted) return true;
    if (*predicted == Relation::SubsetForward) {
      return observed == Relation::SubsetForward ||
             observed == (sign > 0 ? Relation::Equal : Relation::Negated);
    }
    return observed == *predicted;
  }
};

inline std::set<BigInt> negate_set(const std::set<BigInt>& s) {
  std::set<BigInt> out;
  for (const auto& v : s) out.insert(-v);
  return out;
}

/// Compares V_ns with V_nt directly and reports the relation the periodicity
/// theorems predict from (n, s, t).
inline PeriodicityResult periodicity_compare(u64 n, u64 s, u64 t) {
  if (n == 0 || s == 0 || t == 0) fail(ErrorKind::InvalidArgument, "arguments must be positive");
  if (s == t) fail(ErrorKind::InvalidArgument, "s and t must differ");
  if (std::gcd(n, s) != 1 || std::gcd(n, t) != 1) {
    fail(ErrorKind::NotCoprimeIndex, "s and t must be coprime to n");
  }
  const bool plus = (s % n) == (t % n);
  const bool minus = (s + t) % n == 0;
  if (!plus && !minus) fail(ErrorKind::HypothesisViolated, "s is not congruent to +-t mod n");

  PeriodicityResult r;
  r.sign = plus ? 1 : -1;
  r.v_ns = coeff_set(phi_uncached(n * s));
  r.v_nt = coeff_set(phi_uncached(n * t));
  const auto neg_nt = negate_set(r.v_nt);
  const bool eq = r.v_ns == r.v_nt;
  const bool ng = r.v_ns == neg_nt;
  if (eq && ng) {
    r.observed = plus ? Relation::Equal : Relation::Negated;
  } else if (eq) {
    r.observed = Relation::Equal;
  } else if (ng) {
    r.observed = Relation::Negated;
  } else {
    const auto& target = plus ? r.v_nt : neg_nt;
    const bool sub = std::includes(target.begin(), target.end(), r.v_ns.begin(), r.v_ns.end());
    r.observed = sub ? Relation::SubsetForward : Relation::NotComparable;
  }

  const u64 threshold = n - totient(n);
  if (s > threshold && t > threshold) {
    r.predicted = plus ? Relation::Equal : Relation::Negated;
  } else if (t > threshold) {
    r.predicted = Relation::SubsetForward;
  }
  return r;
}

}  // namespace cycloforge

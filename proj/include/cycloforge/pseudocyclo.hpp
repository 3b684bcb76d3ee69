#pragma once

#include <algorithm>
#include <bit>
#include <numeric>
#include <span>
#include <vector>

#include "cycloforge/error.hpp"
#include "cycloforge/intpoly.hpp"
#include "cycloforge/number_theory.hpp"

namespace cycloforge {

/// Pairwise coprime positive parts p_1..p_k. Order never changes any output.
struct PseudoParts {
  std::vector<u64> parts;

  PseudoParts() = default;
  PseudoParts(std::vector<u64> ps) : parts(std::move(ps)) { validate(); }  // NOLINT
  PseudoParts(std::initializer_list<u64> ps) : PseudoParts(std::vector<u64>(ps)) {}

  void validate() const {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] == 0) fail(ErrorKind::InvalidArgument, "parts must be positive");
      for (std::size_t j = 0; j < i; ++j) {
        if (std::gcd(parts[i], parts[j]) != 1) {
          fail(ErrorKind::NotCoprime, "parts " + std::to_string(parts[j]) + " and " +
                                          std::to_string(parts[i]) + " are not coprime");
        }
      }
    }
  }

  std::vector<u64> sorted() const {
    auto s = parts;
    std::sort(s.begin(), s.end());
    return s;
  }

  u64 product() const {
    return std::accumulate(parts.begin(), parts.end(), u64(1), std::multiplies<>());
  }

  bool has_unit() const { return std::find(parts.begin(), parts.end(), 1) != parts.end(); }
};

/// Inclusion-exclusion product over subsets I of the parts of
/// (x^{prod_I p_i} - 1)^{(-1)^{k-|I|}}.
inline IntPolynomial pseudo_phi(const PseudoParts& pp) {
  pp.validate();
  if (pp.has_unit()) return IntPolynomial::constant(1);
  const auto ps = pp.sorted();
  const std::size_t k = ps.size();
  std::vector<u64> up, down;
  for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
    u64 d = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) d *= ps[i];
    }
    const bool positive = ((k - std::popcount(mask)) % 2) == 0;
    (positive ? up : down).push_back(d);
  }
  std::sort(down.begin(), down.end());
  IntPolynomial f = IntPolynomial::constant(1);
  for (u64 d : up) f = poly_mul(f, IntPolynomial::x_pow_minus_one(d));
  for (u64 d : down) f = poly_exact_div(f, IntPolynomial::x_pow_minus_one(d));
  return f;
}

/// (x^{p_1...p_k} - 1) / pseudo_phi
inline IntPolynomial pseudo_psi(const PseudoParts& pp) {
  return poly_exact_div(IntPolynomial::x_pow_minus_one(pp.product()), pseudo_phi(pp));
}

/// Multiset {m_1...m_k : m_i | p_i, m_i > 1}, ascending. The product of
/// Phi_m over it is pseudo_phi(parts).
inline std::vector<CycloIndex> pseudo_factorization(const PseudoParts& pp) {
  pp.validate();
  if (pp.has_unit()) fail(ErrorKind::InvalidArgument, "parts must exceed 1");
  std::vector<u64> acc{1};
  for (u64 p : pp.parts) {
    std::vector<u64> next;
    for (u64 d : divisors(p)) {
      if (d == 1) continue;
      for (u64 a : acc) next.push_back(a * d);
    }
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end());
  std::vector<CycloIndex> out;
  out.reserve(acc.size());
  for (u64 m : acc) out.push_back(make_cyclo_index(m));
  return out;
}

}  // namespace cycloforge

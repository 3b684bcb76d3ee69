#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cycloforge/cyclotomic.hpp"
#include "cycloforge/error.hpp"
#include "cycloforge/intpoly.hpp"
#include "cycloforge/number_theory.hpp"

namespace cycloforge {

/// p*mu = 1 (mod q), q*lambda = 1 (mod p), 1 <= mu < q, 1 <= lambda < p.
struct LCorner {
  std::int64_t p = 0, q = 0, mu = 0, lambda = 0;
  friend bool operator==(const LCorner&, const LCorner&) = default;
};

/// p*mu + q*lambda = p*q + l, 1 <= mu <= q, 1 <= lambda <= p.
struct StaircaseCorner {
  std::int64_t p = 0, q = 0, l = 0, mu = 0, lambda = 0;
  friend bool operator==(const StaircaseCorner&, const StaircaseCorner&) = default;
};

namespace detail {

inline void require_coprime_pair(std::int64_t p, std::int64_t q) {
  if (p < 2 || q < 2) fail(ErrorKind::InvalidArgument, "p and q must exceed 1");
  if (std::gcd(p, q) != 1) fail(ErrorKind::NotCoprime, "p and q are not coprime");
}

// geom(step, count) = 1 + x^step + ... + x^{step(count-1)}; zero when count <= 0
inline IntPolynomial geom(std::int64_t step, std::int64_t count) {
  if (count <= 0) return {};
  return IntPolynomial::geometric(static_cast<std::size_t>(step), static_cast<std::size_t>(count));
}

// A(x) B(x) - x^l C(x) D(x) with the four geometric factors of the L diagram.
inline IntPolynomial corner_formula(std::int64_t p, std::int64_t q, std::int64_t l,
                                    std::int64_t a, std::int64_t b, std::int64_t c,
                                    std::int64_t d) {
  return poly_sub(poly_mul(geom(p, a), geom(q, b)),
                  shift_up(poly_mul(geom(p, c), geom(q, d)), static_cast<std::size_t>(l)));
}

}  // namespace detail

inline LCorner crt_corner(std::int64_t p, std::int64_t q) {
  detail::require_coprime_pair(p, q);
  return {p, q, modinv(p, q), modinv(q, p)};
}

inline StaircaseCorner staircase_corner(std::int64_t p, std::int64_t q, std::int64_t l) {
  detail::require_coprime_pair(p, q);
  if (l < 1 || l > p + q - 1) fail(ErrorKind::LOutOfRange, "l must lie in [1, p+q-1]");
  std::int64_t mu = (l % q) * modinv(p, q) % q;
  if (mu == 0) mu = q;
  const std::int64_t lambda = (p * q + l - p * mu) / q;
  return {p, q, l, mu, lambda};
}

/// The two-quadrant product formula for the binary (pseudo)cyclotomic polynomial.
inline IntPolynomial binary_phi_explicit(std::int64_t p, std::int64_t q) {
  const LCorner c = crt_corner(p, q);
  return detail::corner_formula(p, q, 1, c.mu, c.lambda, q - c.mu, p - c.lambda);
}

/// (1 + x + ... + x^{l-1}) times the binary (pseudo)cyclotomic polynomial of (p, q),
/// built from the staircase corner rather than by multiplication.
inline IntPolynomial staircase_multiple(std::int64_t p, std::int64_t q, std::int64_t l) {
  const StaircaseCorner c = staircase_corner(p, q, l);
  return detail::corner_formula(p, q, l, c.mu, c.lambda, q - c.mu, p - c.lambda);
}

/// Specialization of staircase_multiple for q = k p + 1 and 1 <= l <= p.
inline IntPolynomial staircase_multiple_q1(std::int64_t p, std::int64_t q, std::int64_t l) {
  detail::require_coprime_pair(p, q);
  if ((q - 1) % p != 0) fail(ErrorKind::HypothesisViolated, "q must be 1 mod p");
  if (l < 1 || l > p) fail(ErrorKind::LOutOfRange, "l must lie in [1, p]");
  const std::int64_t k = (q - 1) / p;
  return detail::corner_formula(p, q, l, q - k * l, l, k * l, p - l);
}

struct LDiagram {
  std::int64_t rows = 0, cols = 0;  // p rows, q columns
  std::vector<std::vector<std::int64_t>> residues;  // residues[b][a] = (a p + b q) mod pq
  std::int64_t mu = 0, lambda = 0;
};

inline LDiagram ldiagram(std::int64_t p, std::int64_t q) {
  const LCorner c = crt_corner(p, q);
  LDiagram d{p, q, {}, c.mu, c.lambda};
  d.residues.assign(p, std::vector<std::int64_t>(q));
  for (std::int64_t b = 0; b < p; ++b) {
    for (std::int64_t a = 0; a < q; ++a) d.residues[b][a] = (a * p + b * q) % (p * q);
  }
  return d;
}

/// Fixed-width grid, top row b = p-1 first. A '|' column sits left of a = mu
/// and a '-' rule sits below b = lambda, crossing at '+'.
inline std::string ldiagram_render(std::int64_t p, std::int64_t q) {
  const LDiagram d = ldiagram(p, q);
  const std::size_t w = std::to_string(p * q - 1).size();
  auto cell = [w](std::int64_t v) {
    std::string s = std::to_string(v);
    return std::string(w - s.size(), ' ') + s;
  };
  const std::size_t left_len = d.mu * w + (d.mu - 1);
  const std::size_t right_len = (q - d.mu) * w + (q - d.mu - 1);
  std::string out;
  for (std::int64_t b = p - 1; b >= 0; --b) {
    std::string line;
    for (std::int64_t a = 0; a < q; ++a) {
      if (a == d.mu) {
        line += " | ";
      } else if (a > 0) {
        line += ' ';
      }
      line += cell(d.residues[b][a]);
    }
    out += line + '\n';
    if (b == d.lambda) {
      out += std::string(left_len + 1, '-') + '+' + std::string(right_len + 1, '-') + '\n';
    }
  }
  return out;
}

/// Terms of phi of degree <= b.
inline IntPolynomial prefix_truncation(const IntPolynomial& phi, std::size_t b) {
  return truncate(phi, b);
}

/// The representative of degree < phi(n) congruent to t modulo Phi_n.
inline IntPolynomial mod_phi_reduce(const LaurentPolynomial& t, u64 n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "n must be at least 2");
  return reduce_mod_cyclic(t, phi(n), n);
}

struct ForbiddenBinomial {
  bool is_forbidden = false;
  std::optional<std::int64_t> witness;
};

/// Whether (x^a + sign x^b) times the binary (pseudo)cyclotomic polynomial of
/// (p, q) has a coefficient of absolute value >= 2; witness is the least such exponent.
inline ForbiddenBinomial forbidden_binomial(std::int64_t p, std::int64_t q, std::int64_t a,
                                            std::int64_t b, int sign) {
  detail::require_coprime_pair(p, q);
  if (a < 0 || a >= b) fail(ErrorKind::BadExponents, "need 0 <= a < b");
  if (sign != 1 && sign != -1) fail(ErrorKind::InvalidArgument, "sign must be +1 or -1");
  const IntPolynomial binom = poly_add(IntPolynomial::monomial(a),
                                       IntPolynomial::monomial(b, sign));
  const IntPolynomial prod = poly_mul(binom, binary_phi_explicit(p, q));
  ForbiddenBinomial r;
  for (std::int64_t e = 0; e <= prod.degree(); ++e) {
    if (abs(prod.coeff(e)) >= 2) {
      r.is_forbidden = true;
      r.witness = e;
      break;
    }
  }
  return r;
}

}  // namespace cycloforge

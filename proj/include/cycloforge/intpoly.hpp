#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "cycloforge/error.hpp"
#include "cycloforge/integer.hpp"

namespace cycloforge {

/// Degree reported for the zero polynomial. Strictly below every real degree,
/// so bounds such as `deg F <= phi(n) - 1` hold for zero without special cases.
inline constexpr std::int64_t kZeroDegree = std::numeric_limits<std::int64_t>::min();

/// Dense polynomial with exact integer coefficients; index i holds [x^i].
///
/// Coefficients live in a 64-bit vector while they fit. Every operation runs a
/// checked 64-bit kernel first and transparently re-runs in BigInt when any
/// intermediate overflows. Results are normalized back to 64-bit storage when
/// they fit, so equality is plain vector comparison.
class IntPolynomial {
 public:
  using Small = std::int64_t;

  IntPolynomial() = default;

  explicit IntPolynomial(std::vector<Small> coeffs) : small_(std::move(coeffs)) {
    while (!small_.empty() && small_.back() == 0) small_.pop_back();
  }

  IntPolynomial(std::initializer_list<Small> coeffs)
      : IntPolynomial(std::vector<Small>(coeffs)) {}

  static IntPolynomial from_big(std::vector<BigInt> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    IntPolynomial p;
    bool fits = std::all_of(coeffs.begin(), coeffs.end(),
                            [](const BigInt& c) { return fits_int64(c); });
    if (fits) {
      p.small_.reserve(coeffs.size());
      for (const auto& c : coeffs) p.small_.push_back(static_cast<Small>(c));
    } else {
      p.big_ = std::move(coeffs);
      p.is_big_ = true;
    }
    return p;
  }

  static IntPolynomial constant(Small c) { return IntPolynomial(std::vector<Small>{c}); }

  static IntPolynomial monomial(std::size_t k, Small c = 1) {
    if (c == 0) return {};
    std::vector<Small> v(k + 1, 0);
    v[k] = c;
    return IntPolynomial(std::move(v));
  }

  /// x^n - 1
  static IntPolynomial x_pow_minus_one(std::size_t n) {
    if (n == 0) return {};
    std::vector<Small> v(n + 1, 0);
    v[0] = -1;
    v[n] = 1;
    return IntPolynomial(std::move(v));
  }

  /// 1 + x^step + x^{2 step} + ... with `count` terms.
  static IntPolynomial geometric(std::size_t step, std::size_t count) {
    if (count == 0) return {};
    if (step == 0) return constant(static_cast<Small>(count));
    std::vector<Small> v(step * (count - 1) + 1, 0);
    for (std::size_t i = 0; i < count; ++i) v[i * step] = 1;
    return IntPolynomial(std::move(v));
  }

  bool is_zero() const { return is_big_ ? big_.empty() : small_.empty(); }
  bool is_big() const { return is_big_; }
  std::size_t size() const { return is_big_ ? big_.size() : small_.size(); }

  std::int64_t degree() const {
    return is_zero() ? kZeroDegree : static_cast<std::int64_t>(size()) - 1;
  }

  std::span<const Small> small() const { return small_; }
  std::span<const BigInt> big() const { return big_; }

  std::vector<BigInt> to_big() const {
    if (is_big_) return big_;
    return std::vector<BigInt>(small_.begin(), small_.end());
  }

  BigInt coeff(std::int64_t k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= size()) return 0;
    return is_big_ ? big_[k] : BigInt(small_[k]);
  }

  BigInt leading() const { return is_zero() ? BigInt(0) : coeff(degree()); }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.is_big_ == b.is_big_ && a.small_ == b.small_ && a.big_ == b.big_;
  }

 private:
  std::vector<Small> small_;
  std::vector<BigInt> big_;
  bool is_big_ = false;
};

namespace detail {

template <class C>
void trim(std::vector<C>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// Runs `kernel` on 64-bit spans, falling back to BigInt spans on Overflow.
template <class Kernel>
IntPolynomial escalate(const IntPolynomial& a, const IntPolynomial& b, Kernel&& kernel) {
  if (!a.is_big() && !b.is_big()) {
    try {
      return IntPolynomial(kernel(a.small(), b.small()));
    } catch (const Overflow&) {
    }
  }
  const auto ab = a.to_big();
  const auto bb = b.to_big();
  return IntPolynomial::from_big(
      kernel(std::span<const BigInt>(ab), std::span<const BigInt>(bb)));
}

template <class Kernel>
IntPolynomial escalate(const IntPolynomial& a, Kernel&& kernel) {
  if (!a.is_big()) {
    try {
      return IntPolynomial(kernel(a.small()));
    } catch (const Overflow&) {
    }
  }
  const auto ab = a.to_big();
  return IntPolynomial::from_big(kernel(std::span<const BigInt>(ab)));
}

template <class C>
std::vector<C> add_kernel(std::span<const C> a, std::span<const C> b, bool subtract) {
  std::vector<C> r(std::max(a.size(), b.size()), C(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) {
    r[i] = subtract ? Arith<C>::sub(r[i], b[i]) : Arith<C>::add(r[i], b[i]);
  }
  trim(r);
  return r;
}

template <class C>
std::vector<std::pair<std::size_t, C>> nonzeros(std::span<const C> a) {
  std::vector<std::pair<std::size_t, C>> nz;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) nz.emplace_back(i, a[i]);
  }
  return nz;
}

template <class C>
std::vector<C> mul_kernel(std::span<const C> a, std::span<const C> b) {
  if (a.empty() || b.empty()) return {};
  auto nza = nonzeros(a);
  auto nzb = nonzeros(b);
  if (nzb.size() < nza.size()) {
    std::swap(a, b);
    std::swap(nza, nzb);
  }
  // outer loop over the sparser operand
  std::vector<C> r(a.size() + b.size() - 1, C(0));
  for (const auto& [i, ai] : nza) {
    for (const auto& [j, bj] : nzb) {
      r[i + j] = Arith<C>::add(r[i + j], Arith<C>::mul(ai, bj));
    }
  }
  trim(r);
  return r;
}

// Long division a = q*b + r. When `exact` is set, any nonzero remainder (or a
// non-divisible leading coefficient) raises RemainderNonzero. Otherwise b must
// have leading coefficient +-1 and the remainder is returned through `rem`.
template <class C>
std::vector<C> divide_kernel(std::span<const C> a, std::span<const C> b, bool exact,
                             std::vector<C>* rem) {
  const std::size_t db = b.size() - 1;
  const C& lc = b.back();
  std::vector<C> r(a.begin(), a.end());
  if (a.size() < b.size()) {
    if (exact && !a.empty()) fail(ErrorKind::RemainderNonzero, "divisor does not divide dividend");
    if (rem) *rem = std::move(r);
    return {};
  }
  std::vector<std::pair<std::size_t, C>> nzb;
  for (std::size_t i = 0; i < db; ++i) {
    if (b[i] != 0) nzb.emplace_back(i, b[i]);
  }
  std::vector<C> q(a.size() - db, C(0));
  for (std::size_t step = q.size(); step-- > 0;) {
    const C top = r[step + db];
    if (top == 0) continue;
    if (top % lc != 0) {
      fail(ErrorKind::RemainderNonzero, "leading coefficient does not divide");
    }
    const C qi = top / lc;
    q[step] = qi;
    r[step + db] = C(0);
    for (const auto& [i, bi] : nzb) {
      r[step + i] = Arith<C>::sub(r[step + i], Arith<C>::mul(qi, bi));
    }
  }
  r.resize(db);
  trim(r);
  if (exact && !r.empty()) fail(ErrorKind::RemainderNonzero, "divisor does not divide dividend");
  if (rem) *rem = std::move(r);
  trim(q);
  return q;
}

}  // namespace detail

inline IntPolynomial poly_add(const IntPolynomial& a, const IntPolynomial& b) {
  return detail::escalate(a, b, [](auto x, auto y) { return detail::add_kernel(x, y, false); });
}

inline IntPolynomial poly_sub(const IntPolynomial& a, const IntPolynomial& b) {
  return detail::escalate(a, b, [](auto x, auto y) { return detail::add_kernel(x, y, true); });
}

inline IntPolynomial poly_neg(const IntPolynomial& a) {
  return detail::escalate(a, [](auto x) {
    using C = typename decltype(x)::value_type;
    std::vector<std::remove_const_t<C>> r;
    r.reserve(x.size());
    for (const auto& c : x) r.push_back(detail::Arith<std::remove_const_t<C>>::neg(c));
    return r;
  });
}

inline IntPolynomial poly_scale(const IntPolynomial& a, std::int64_t s) {
  const IntPolynomial sp = IntPolynomial::constant(s);
  return detail::escalate(a, sp, [](auto x, auto y) { return detail::mul_kernel(x, y); });
}

inline IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b) {
  return detail::escalate(a, b, [](auto x, auto y) { return detail::mul_kernel(x, y); });
}

/// Exact quotient a / b. Throws RemainderNonzero unless b divides a in Z[x].
inline IntPolynomial poly_exact_div(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by the zero polynomial");
  return detail::escalate(a, b, [](auto x, auto y) {
    return detail::divide_kernel(x, y, true, static_cast<std::vector<
        std::remove_const_t<typename decltype(x)::value_type>>*>(nullptr));
  });
}

/// Remainder of a modulo a divisor with leading coefficient +-1.
inline IntPolynomial poly_rem_monic(const IntPolynomial& a, const IntPolynomial& m) {
  if (m.is_zero()) fail(ErrorKind::DivisionByZero, "division by the zero polynomial");
  const BigInt lc = m.leading();
  if (lc != 1 && lc != -1) fail(ErrorKind::InvalidArgument, "modulus must be monic");
  return detail::escalate(a, m, [](auto x, auto y) {
    using C = std::remove_const_t<typename decltype(x)::value_type>;
    std::vector<C> rem;
    detail::divide_kernel(x, y, false, &rem);
    return rem;
  });
}

inline BigInt poly_height(const IntPolynomial& a) {
  if (!a.is_big()) {
    std::uint64_t best = 0;
    for (auto c : a.small()) {
      const std::uint64_t mag =
          c < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
      best = std::max(best, mag);
    }
    return BigInt(best);
  }
  BigInt best = 0;
  for (const auto& c : a.big()) best = std::max(best, BigInt(abs(c)));
  return best;
}

/// {[x^k]a : k in Z}; always contains 0.
inline std::set<BigInt> coeff_set(const IntPolynomial& a) {
  std::set<BigInt> out{0};
  if (!a.is_big()) {
    std::set<std::int64_t> small{0};
    for (auto c : a.small()) small.insert(c);
    for (auto c : small) out.insert(BigInt(c));
  } else {
    for (const auto& c : a.big()) out.insert(c);
  }
  return out;
}

inline bool is_reciprocal(const IntPolynomial& a) {
  if (!a.is_big()) {
    auto s = a.small();
    return std::equal(s.begin(), s.end(), s.rbegin());
  }
  auto s = a.big();
  return std::equal(s.begin(), s.end(), s.rbegin());
}

/// a(x^k)
inline IntPolynomial substitute_power(const IntPolynomial& a, std::size_t k) {
  if (k == 0) fail(ErrorKind::InvalidArgument, "substitution power must be positive");
  if (k == 1 || a.is_zero()) return a;
  return detail::escalate(a, [k](auto x) {
    using C = std::remove_const_t<typename decltype(x)::value_type>;
    std::vector<C> r((x.size() - 1) * k + 1, C(0));
    for (std::size_t i = 0; i < x.size(); ++i) r[i * k] = x[i];
    return r;
  });
}

/// a(-x)
inline IntPolynomial substitute_neg(const IntPolynomial& a) {
  return detail::escalate(a, [](auto x) {
    using C = std::remove_const_t<typename decltype(x)::value_type>;
    std::vector<C> r(x.begin(), x.end());
    for (std::size_t i = 1; i < r.size(); i += 2) r[i] = detail::Arith<C>::neg(r[i]);
    return r;
  });
}

/// sum_{i>=0} x^i [x^{i m + j}] a
inline IntPolynomial extract_residue(const IntPolynomial& a, std::size_t m, std::int64_t j) {
  if (m == 0) fail(ErrorKind::InvalidArgument, "residue modulus must be positive");
  if (j < 0 || static_cast<std::size_t>(j) >= m) {
    fail(ErrorKind::IndexOutOfRange, "residue index out of range");
  }
  return detail::escalate(a, [m, j](auto x) {
    using C = std::remove_const_t<typename decltype(x)::value_type>;
    std::vector<C> r;
    for (std::size_t e = static_cast<std::size_t>(j); e < x.size(); e += m) r.push_back(x[e]);
    return r;
  });
}

/// Terms of degree <= b.
inline IntPolynomial truncate(const IntPolynomial& a, std::size_t b) {
  return detail::escalate(a, [b](auto x) {
    using C = std::remove_const_t<typename decltype(x)::value_type>;
    return std::vector<C>(x.begin(), x.begin() + std::min(x.size(), b + 1));
  });
}

/// x^k a
inline IntPolynomial shift_up(const IntPolynomial& a, std::size_t k) {
  if (k == 0 || a.is_zero()) return a;
  return detail::escalate(a, [k](auto x) {
    using C = std::remove_const_t<typename decltype(x)::value_type>;
    std::vector<C> r(k, C(0));
    r.insert(r.end(), x.begin(), x.end());
    return r;
  });
}

/// Number of trailing zero coefficients at the low end (0 for the zero polynomial).
inline std::size_t valuation(const IntPolynomial& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.coeff(static_cast<std::int64_t>(i)) != 0) return i;
  }
  return 0;
}

/// a / x^k; the low k coefficients must vanish.
inline IntPolynomial shift_down(const IntPolynomial& a, std::size_t k) {
  if (k == 0 || a.is_zero()) return a;
  if (valuation(a) < k) fail(ErrorKind::RemainderNonzero, "x^k does not divide polynomial");
  return detail::escalate(a, [k](auto x) {
    using C = std::remove_const_t<typename decltype(x)::value_type>;
    return std::vector<C>(x.begin() + k, x.end());
  });
}

/// Reduces exponents modulo n: the residue of a modulo x^n - 1, degree < n.
inline IntPolynomial fold_mod_xn_minus_one(const IntPolynomial& a, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "fold period must be positive");
  return detail::escalate(a, [n](auto x) {
    using C = std::remove_const_t<typename decltype(x)::value_type>;
    std::vector<C> r(std::min(x.size(), n), C(0));
    for (std::size_t i = 0; i < x.size(); ++i) r[i % n] = detail::Arith<C>::add(r[i % n], x[i]);
    detail::trim(r);
    return r;
  });
}

inline BigInt evaluate(const IntPolynomial& a, const BigInt& x) {
  BigInt acc = 0;
  for (std::int64_t i = a.degree(); i >= 0; --i) acc = acc * x + a.coeff(i);
  return acc;
}

inline BigInt content(const IntPolynomial& a) {
  BigInt g = 0;
  for (std::int64_t i = 0; i <= a.degree(); ++i) {
    g = boost::multiprecision::gcd(g, a.coeff(i));
    if (g == 1) break;
  }
  return g;
}

/// a divided by its content, with positive leading coefficient.
inline IntPolynomial primitive_part(const IntPolynomial& a) {
  if (a.is_zero()) return a;
  BigInt c = content(a);
  if (a.leading() < 0) c = -c;
  if (c == 1) return a;
  auto v = a.to_big();
  for (auto& x : v) x /= c;
  return IntPolynomial::from_big(std::move(v));
}

namespace detail {

// Pseudo-remainder prem(a, b) = lc(b)^{k} a mod b, taking the cheap path
// whenever lc(b) = +-1.
template <class C>
std::vector<C> prem_kernel(std::span<const C> a, std::span<const C> b) {
  std::vector<C> r(a.begin(), a.end());
  const std::size_t db = b.size() - 1;
  const C lc = b.back();
  const bool unit = (lc == 1 || lc == -1);
  std::vector<std::pair<std::size_t, C>> nzb;
  for (std::size_t i = 0; i < db; ++i) {
    if (b[i] != 0) nzb.emplace_back(i, b[i]);
  }
  while (r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const C top = r.back();
    if (unit) {
      const C factor = lc == 1 ? top : Arith<C>::neg(top);
      for (const auto& [i, bi] : nzb) {
        r[shift + i] = Arith<C>::sub(r[shift + i], Arith<C>::mul(factor, bi));
      }
    } else {
      for (auto& c : r) c = Arith<C>::mul(c, lc);
      for (const auto& [i, bi] : nzb) {
        r[shift + i] = Arith<C>::sub(r[shift + i], Arith<C>::mul(top, bi));
      }
    }
    r.back() = C(0);
    trim(r);
  }
  return r;
}

}  // namespace detail

/// Greatest common divisor in Z[x] by the primitive remainder sequence,
/// normalized to content 1 and positive leading coefficient.
inline IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPolynomial r = detail::escalate(
        a, b, [](auto x, auto y) { return detail::prem_kernel(x, y); });
    a = std::move(b);
    b = primitive_part(r);
  }
  return a.degree() == 0 ? IntPolynomial::constant(1) : a;
}

/// Polynomial with integer exponents: x^offset * body, body(0) != 0 unless zero.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;

  LaurentPolynomial(IntPolynomial body, std::int64_t offset = 0) {  // NOLINT(google-explicit-constructor)
    if (body.is_zero()) return;
    const std::size_t v = valuation(body);
    body_ = shift_down(body, v);
    offset_ = offset + static_cast<std::int64_t>(v);
  }

  static LaurentPolynomial monomial(std::int64_t e, std::int64_t c = 1) {
    return LaurentPolynomial(IntPolynomial::constant(c), e);
  }

  bool is_zero() const { return body_.is_zero(); }
  std::int64_t offset() const { return offset_; }
  const IntPolynomial& body() const { return body_; }

  std::int64_t max_exponent() const {
    return is_zero() ? kZeroDegree : offset_ + body_.degree();
  }

  BigInt coeff(std::int64_t e) const { return body_.coeff(e - offset_); }

  bool is_polynomial() const { return is_zero() || offset_ >= 0; }

  IntPolynomial to_polynomial() const {
    if (!is_polynomial()) fail(ErrorKind::InvalidArgument, "negative exponent present");
    return shift_up(body_, static_cast<std::size_t>(is_zero() ? 0 : offset_));
  }

  LaurentPolynomial shifted(std::int64_t k) const {
    LaurentPolynomial r = *this;
    if (!r.is_zero()) r.offset_ += k;
    return r;
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.body_ == b.body_ && a.offset_ == b.offset_;
  }

  friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::int64_t lo = std::min(a.offset_, b.offset_);
    return LaurentPolynomial(
        poly_add(shift_up(a.body_, static_cast<std::size_t>(a.offset_ - lo)),
                 shift_up(b.body_, static_cast<std::size_t>(b.offset_ - lo))),
        lo);
  }

  friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a + LaurentPolynomial(poly_neg(b.body_), b.offset_);
  }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return LaurentPolynomial(poly_mul(a.body_, b.body_), a.offset_ + b.offset_);
  }

 private:
  IntPolynomial body_;
  std::int64_t offset_ = 0;
};

/// Residue of t modulo x^n - 1 as an ordinary polynomial of degree < n.
inline IntPolynomial fold_mod_xn_minus_one(const LaurentPolynomial& t, std::size_t n) {
  if (t.is_zero()) return {};
  const std::int64_t nn = static_cast<std::int64_t>(n);
  const std::int64_t lift = ((t.offset() % nn) + nn) % nn;
  return fold_mod_xn_minus_one(shift_up(t.body(), static_cast<std::size_t>(lift)), n);
}

/// Unique representative of degree < deg(modulus) congruent to t, where the
/// monic modulus divides x^period - 1 (so negative exponents lift by period).
inline IntPolynomial reduce_mod_cyclic(const LaurentPolynomial& t, const IntPolynomial& modulus,
                                       std::size_t period) {
  return poly_rem_monic(fold_mod_xn_minus_one(t, period), modulus);
}

}  // namespace cycloforge

#pragma once

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "cycloforge/error.hpp"
#include "cycloforge/integer.hpp"
#include "cycloforge/intpoly.hpp"

namespace cycloforge {

using Json = nlohmann::json;

/// Exact integer as a JSON number when it fits 64 bits, else a decimal string.
inline Json big_to_json(const BigInt& v) {
  if (auto s = to_int64(v)) return *s;
  return v.str();
}

inline BigInt parse_bigint(std::string_view s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) fail(ErrorKind::ParseError, "not an integer: '" + std::string(s) + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
      fail(ErrorKind::ParseError, "not an integer: '" + std::string(s) + "'");
    }
  }
  BigInt v(std::string(s.substr(i)));
  return s[0] == '-' ? BigInt(-v) : v;
}

inline BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  fail(ErrorKind::ParseError, "expected an integer");
}

/// Space-separated coefficients from degree 0 upward; "0" for the zero polynomial.
inline std::string format_coeffs(const IntPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  if (!f.is_big()) {
    for (auto c : f.small()) {
      if (!out.empty()) out += ' ';
      out += std::to_string(c);
    }
    return out;
  }
  for (const auto& c : f.big()) {
    if (!out.empty()) out += ' ';
    out += c.str();
  }
  return out;
}

inline IntPolynomial parse_coeffs(std::string_view text) {
  std::vector<BigInt> cs;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) cs.push_back(parse_bigint(tok));
  return IntPolynomial::from_big(std::move(cs));
}

inline Json poly_to_json(const IntPolynomial& f) {
  Json arr = Json::array();
  for (std::int64_t i = 0; i <= f.degree(); ++i) arr.push_back(big_to_json(f.coeff(i)));
  return arr;
}

inline IntPolynomial poly_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::ParseError, "polynomial must be a JSON array");
  std::vector<BigInt> cs;
  for (const auto& c : j) cs.push_back(big_from_json(c));
  return IntPolynomial::from_big(std::move(cs));
}

inline Json laurent_to_json(const LaurentPolynomial& t) {
  return Json{{"offset", t.is_zero() ? 0 : t.offset()}, {"coeffs", poly_to_json(t.body())}};
}

namespace detail {

inline std::string superscript(std::int64_t e) {
  static const char* const kDigits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s;
  for (char c : std::to_string(e)) s += kDigits[c - '0'];
  return s;
}

template <class Power>
std::string format_descending(const IntPolynomial& f, Power power) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::int64_t e = f.degree(); e >= 0; --e) {
    const BigInt c = f.coeff(e);
    if (c == 0) continue;
    const BigInt mag = c < 0 ? BigInt(-c) : c;
    if (c < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    if (e == 0 || mag != 1) out += mag.str();
    if (e >= 1) out += 'x';
    if (e >= 2) out += power(e);
  }
  return out;
}

}  // namespace detail

/// Descending terms with unicode superscript exponents, e.g. "x²-x+1".
inline std::string format_pretty(const IntPolynomial& f) {
  return detail::format_descending(f, detail::superscript);
}

/// Descending terms in TeX, braces only for multi-digit exponents: "x^{10}-x^8+1".
inline std::string format_tex(const IntPolynomial& f) {
  return detail::format_descending(f, [](std::int64_t e) {
    const std::string d = std::to_string(e);
    return d.size() == 1 ? "^" + d : "^{" + d + "}";
  });
}

}  // namespace cycloforge

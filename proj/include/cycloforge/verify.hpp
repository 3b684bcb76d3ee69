#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cycloforge/binary_structure.hpp"
#include "cycloforge/cyclotomic.hpp"
#include "cycloforge/error.hpp"
#include "cycloforge/fjdecomp.hpp"
#include "cycloforge/flatness.hpp"
#include "cycloforge/number_theory.hpp"
#include "cycloforge/pseudocyclo.hpp"
#include "cycloforge/scan.hpp"

namespace cycloforge {

struct PropertyResult {
  std::string name;
  u64 checked = 0;
  u64 failures = 0;
  std::vector<std::string> examples;  // first few failures

  bool passed() const { return failures == 0; }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++checked;
    if (ok) return;
    ++failures;
    if (examples.size() < 5) examples.push_back(describe());
  }
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> properties;

  bool passed() const {
    return std::all_of(properties.begin(), properties.end(),
                       [](const PropertyResult& p) { return p.passed(); });
  }
};

struct SuiteOptions {
  std::optional<u64> max;
  std::vector<u64> n;
  std::optional<u64> smax;
  unsigned workers = 1;
};

inline std::string format_suite(const SuiteReport& rep) {
  std::string out;
  for (const auto& p : rep.properties) {
    out += std::string(p.passed() ? "[PASS] " : "[FAIL] ") + rep.suite + "/" + p.name +
           " checked=" + std::to_string(p.checked) + " failures=" + std::to_string(p.failures) + "\n";
    for (const auto& e : p.examples) out += "    counterexample: " + e + "\n";
  }
  out += "suite " + rep.suite + ": " + (rep.passed() ? "PASS" : "FAIL") + "\n";
  return out;
}

namespace detail {

inline void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max(1u, workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex m;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!error) error = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline bool alternating_signs(const IntPolynomial& f) {
  int last = 0;
  for (std::int64_t i = 0; i <= f.degree(); ++i) {
    const BigInt c = f.coeff(i);
    if (c == 0) continue;
    const int s = c > 0 ? 1 : -1;
    if (s == last) return false;
    last = s;
  }
  return true;
}

/// Ascending pairwise coprime tuples of parts > 1 with product <= bound.
inline std::vector<std::vector<u64>> coprime_tuples(u64 bound) {
  std::vector<std::vector<u64>> out;
  std::vector<u64> cur;
  std::function<void(u64, u64)> rec = [&](u64 from, u64 prod) {
    for (u64 v = from; prod * v <= bound; ++v) {
      bool ok = true;
      for (u64 c : cur) ok = ok && std::gcd(c, v) == 1;
      if (!ok) continue;
      cur.push_back(v);
      out.push_back(cur);
      rec(v + 1, prod * v);
      cur.pop_back();
    }
  };
  rec(2, 1);
  return out;
}

inline std::string tuple_str(const std::vector<u64>& v) { return join(v, ","); }

}  // namespace detail

inline SuiteReport verify_cyclotomic(const SuiteOptions& o) {
  const u64 max = o.max.value_or(5000);
  SuiteReport rep{"cyclotomic", {}};
  PropertyResult three{"algorithms-agree", {}, {}, {}};
  PropertyResult with_gcd{"gcd-agrees", {}, {}, {}};
  PropertyResult product{"divisor-product", {}, {}, {}};
  PropertyResult values{"values-at-0-and-1", {}, {}, {}};
  PropertyResult doubling{"doubling", {}, {}, {}};
  for (u64 n = 1; n <= max; ++n) {
    if (!is_squarefree(n)) continue;
    const IntPolynomial a = phi(n, PhiAlgorithm::MobiusProduct);
    three.check(phi(n, PhiAlgorithm::RecursiveQuotient) == a && phi(n, PhiAlgorithm::SparseSeries) == a,
                [&] { return "n=" + std::to_string(n); });
    if (n <= std::min<u64>(max, 1000)) {
      with_gcd.check(phi(n, PhiAlgorithm::GcdOfSparse) == a, [&] { return "n=" + std::to_string(n); });
    }
  }
  for (u64 n = 1; n <= std::min<u64>(max, 2000); ++n) {
    IntPolynomial prod = IntPolynomial::constant(1);
    for (u64 d : divisors(n)) prod = poly_mul(prod, phi(d));
    product.check(prod == IntPolynomial::x_pow_minus_one(n), [&] { return "n=" + std::to_string(n); });

    const IntPolynomial f = phi(n);
    const auto fac = factorize(n);
    BigInt at1 = n == 1 ? 0 : (fac.size() == 1 ? BigInt(fac[0].first) : BigInt(1));
    const bool ok = f.degree() == static_cast<std::int64_t>(totient(n)) && f.leading() == 1 &&
                    evaluate(f, 0) == (n == 1 ? -1 : 1) && evaluate(f, 1) == at1 &&
                    (n == 1 || is_reciprocal(f));
    values.check(ok, [&] { return "n=" + std::to_string(n); });
    if (n % 2 == 1 && n > 1) {
      doubling.check(phi(2 * n) == substitute_neg(f), [&] { return "n=" + std::to_string(n); });
    }
  }
  rep.properties = {three, with_gcd, product, values, doubling};
  return rep;
}

inline SuiteReport verify_binary(const SuiteOptions& o) {
  const u64 max = o.max.value_or(5000);
  SuiteReport rep{"binary", {}};
  PropertyResult flat{"flat-and-alternating", {}, {}, {}};
  PropertyResult expl{"explicit-formula", {}, {}, {}};
  PropertyResult stair{"staircase", {}, {}, {}};
  PropertyResult q1{"staircase-q1", {}, {}, {}};
  PropertyResult reduce{"monomial-reduction-flat", {}, {}, {}};
  const auto primes = primes_up_to(max / 3);
  for (std::size_t i = 1; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size() && primes[i] * primes[j] <= max; ++j) {
      const IntPolynomial f = phi(primes[i] * primes[j]);
      flat.check(poly_height(f) == 1 && detail::alternating_signs(f),
                 [&] { return std::to_string(primes[i]) + "*" + std::to_string(primes[j]); });
    }
  }
  for (std::int64_t p = 2; p * (p + 1) <= static_cast<std::int64_t>(max); ++p) {
    for (std::int64_t q = p + 1; p * q <= static_cast<std::int64_t>(max); ++q) {
      if (std::gcd(p, q) != 1) continue;
      const IntPolynomial f = pseudo_phi(PseudoParts{u64(p), u64(q)});
      const auto pair = [&] { return std::to_string(p) + "," + std::to_string(q); };
      const IntPolynomial e = binary_phi_explicit(p, q);
      expl.check(e == f && poly_height(e) <= 1 && detail::alternating_signs(e), pair);
      if (p * q <= std::min<std::int64_t>(static_cast<std::int64_t>(max), 500)) {
        for (std::int64_t l = 1; l <= p + q - 1; ++l) {
          const IntPolynomial s = staircase_multiple(p, q, l);
          stair.check(s == poly_mul(IntPolynomial::geometric(1, l), f) && poly_height(s) == 1,
                      [&] { return pair() + " l=" + std::to_string(l); });
          if ((q - 1) % p == 0 && l <= p) {
            q1.check(staircase_multiple_q1(p, q, l) == s, [&] { return pair() + " l=" + std::to_string(l); });
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size() && primes[i] * primes[j] <= std::min<u64>(max, 1000); ++j) {
      const u64 n = primes[i] * primes[j];
      const IntPolynomial f = phi(n);
      IntPolynomial r = IntPolynomial::constant(1);
      bool ok = true;
      for (u64 k = 0; k < n && ok; ++k) {
        // x^k mod Phi_n, stepping by one multiplication by x
        ok = poly_height(r) <= 1 && r.degree() < f.degree();
        r = poly_rem_monic(shift_up(r, 1), f);
      }
      reduce.check(ok, [&] { return "n=" + std::to_string(n); });
    }
  }
  rep.properties = {flat, expl, stair, q1, reduce};
  return rep;
}

inline SuiteReport verify_fj(const SuiteOptions& o) {
  const u64 max = o.max.value_or(200);
  const u64 pmax = o.smax.value_or(100);
  SuiteReport rep{"fj", {}};
  PropertyResult reassembly{"reassembly", {}, {}, {}};
  PropertyResult degree{"degree-bound", {}, {}, {}};
  PropertyResult f00{"F0(0)=1", {}, {}, {}};
  PropertyResult bez{"bezout-identity", {}, {}, {}};
  PropertyResult fg{"F=G-mod-Phi_n", {}, {}, {}};
  PropertyResult ff{"F_j=F_{n+j}", {}, {}, {}};
  PropertyResult fast{"f0-fast", {}, {}, {}};
  PropertyResult star{"fstar-recursion", {}, {}, {}};
  const auto primes = primes_up_to(pmax);
  for (u64 n = 2; n <= max; ++n) {
    if (!is_squarefree(n)) continue;
    const IntPolynomial phin = phi(n);
    const std::int64_t ph = static_cast<std::int64_t>(totient(n));
    for (u64 p : primes) {
      if (n % p == 0) continue;
      const auto tag = [&] { return "n=" + std::to_string(n) + " p=" + std::to_string(p); };
      const FjFamily fam = fj_family(n, p);
      IntPolynomial sum;
      bool deg_ok = true;
      for (u64 j = 0; j < p; ++j) {
        sum = poly_add(sum, shift_up(substitute_power(fam.members[j], p), j));
        // deg F_j <= phi(n) - ceil((phi(n) + j) / p)
        const std::int64_t bound = ph - (ph + static_cast<std::int64_t>(j) + static_cast<std::int64_t>(p) - 1) /
                                            static_cast<std::int64_t>(p);
        deg_ok = deg_ok && fam.members[j].degree() <= bound;
      }
      reassembly.check(sum == phi(n * p), tag);
      degree.check(deg_ok, tag);
      f00.check(fam.members[0].coeff(0) == 1, tag);

      const BezoutSplit s = bezout_split(n, p);
      const IntPolynomial lhs = poly_add(poly_mul(s.a, IntPolynomial::geometric(n, p)),
                                         poly_mul(s.b, substitute_power(phin, p)));
      bez.check(lhs == phi(n * p) && s.a.degree() < ph &&
                    s.b.degree() < static_cast<std::int64_t>((n - totient(n)) * (p - 1)),
                tag);
      const auto gs = gj_family(s);
      bool fg_ok = true;
      for (u64 j = 0; j < p; ++j) {
        fg_ok = fg_ok && poly_rem_monic(poly_sub(fam.members[j], gs[j]), phin).is_zero();
      }
      fg.check(fg_ok, tag);

      if (p > n) {
        bool eq = true;
        for (u64 j = 0; j + n < p; ++j) eq = eq && fam.members[j] == fam.members[j + n];
        ff.check(eq, tag);
        fast.check(f0_fast(prime_factors(n), p) == fam.members[0], tag);
        const auto fs = fstar_family(n, p);
        bool rec = true;
        for (u64 j = 1; j < n; ++j) {
          const IntPolynomial expect = poly_add(shift_up(fs[j - 1], 1), poly_mul(phin, IntPolynomial::from_big({fs[j].coeff(0)})));
          rec = rec && expect == fs[j];
        }
        // as sets, F*_0..F*_{n-1} are F_0..F_{n-1}
        auto key = [](const IntPolynomial& f) { return format_coeffs(f); };
        std::vector<std::string> a, b;
        for (u64 j = 0; j < n; ++j) {
          a.push_back(key(fs[j]));
          b.push_back(key(fam.members[j]));
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        star.check(rec && a == b, tag);
      }
    }
  }
  rep.properties = {reassembly, degree, f00, bez, fg, ff, fast, star};
  return rep;
}

inline SuiteReport verify_periodicity(const SuiteOptions& o) {
  const std::vector<u64> ns = o.n.empty() ? std::vector<u64>{15, 21, 33, 35} : o.n;
  const u64 smax = o.smax.value_or(300);
  SuiteReport rep{"periodicity", {}};
  PropertyResult thm{"theorem-relation", {}, {}, {}};
  PropertyResult cor{"subset-corollary", {}, {}, {}};
  PropertyResult non{"known-strict-subset", {}, {}, {}};
  const auto primes = primes_up_to(smax);
  for (u64 n : ns) {
    const u64 threshold = n - totient(n);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      for (std::size_t j = i + 1; j < primes.size(); ++j) {
        const u64 s = primes[i], t = primes[j];
        if (n % s == 0 || n % t == 0) continue;
        if (s % n != t % n && (s + t) % n != 0) continue;
        const auto tag = [&] {
          return "n=" + std::to_string(n) + " s=" + std::to_string(s) + " t=" + std::to_string(t);
        };
        const PeriodicityResult r = periodicity_compare(n, s, t);
        if (s > threshold) {
          thm.check(r.predicted && r.consistent() &&
                        (r.observed == Relation::Equal || r.observed == Relation::Negated),
                    tag);
        } else {
          // t > threshold always holds here; A(ns) <= A(nt) follows from the inclusion
          BigInt hs = 0, ht = 0;
          for (const auto& v : r.v_ns) hs = std::max(hs, BigInt(abs(v)));
          for (const auto& v : r.v_nt) ht = std::max(ht, BigInt(abs(v)));
          cor.check(t <= threshold || (r.consistent() && hs <= ht), tag);
        }
      }
    }
  }
  const PeriodicityResult r = periodicity_compare(15, 2, 17);
  non.check(r.observed == Relation::SubsetForward &&
                r.v_ns == std::set<BigInt>{-1, 0, 1} && r.v_nt == std::set<BigInt>{-1, 0, 1, 2},
            [] { return "n=15 s=2 t=17"; });
  rep.properties = {thm, cor, non};
  return rep;
}

inline SuiteReport verify_pseudo(const SuiteOptions& o) {
  const u64 max = o.max.value_or(1000);
  const u64 tri = std::max<u64>(max, 20000);
  SuiteReport rep{"pseudo", {}};
  PropertyResult prime_parts{"prime-parts-match-phi", {}, {}, {}};
  PropertyResult factor{"factorization-product", {}, {}, {}};
  PropertyResult gcd{"gcd-identity", {}, {}, {}};
  PropertyResult basic{"degree-and-values", {}, {}, {}};
  PropertyResult r1{"r=±1-flat", {}, {}, {}};
  PropertyResult r2{"r=±2-biconditional", {}, {}, {}};
  for (const auto& t : detail::coprime_tuples(max)) {
    const auto tag = [&] { return detail::tuple_str(t); };
    const IntPolynomial f = pseudo_phi(PseudoParts(t));
    IntPolynomial prod = IntPolynomial::constant(1);
    for (const auto& c : pseudo_factorization(PseudoParts(t))) prod = poly_mul(prod, phi(c.n));
    factor.check(prod == f, tag);
    const u64 n = detail::product(t);
    IntPolynomial g;
    for (u64 pi : t) {
      const IntPolynomial h = IntPolynomial::geometric(n / pi, pi);
      g = g.is_zero() ? h : poly_gcd(g, h);
    }
    gcd.check(g == f, tag);
    u64 deg = 1;
    for (u64 pi : t) deg *= pi - 1;
    const BigInt at1 = t.size() == 1 ? BigInt(t[0]) : BigInt(1);
    basic.check(f.degree() == static_cast<std::int64_t>(deg) && evaluate(f, 0) == 1 && evaluate(f, 1) == at1,
                tag);
    if (std::all_of(t.begin(), t.end(), [](u64 v) { return is_prime(v); })) {
      prime_parts.check(f == phi(n), tag);
    }
  }
  for (u64 n = 2; n <= std::max<u64>(max, 3000); ++n) {
    if (!is_squarefree(n) || n <= max) continue;
    const auto ps = prime_factors(n);
    prime_parts.check(pseudo_phi(PseudoParts(ps)) == phi(n), [&] { return detail::tuple_str(ps); });
  }
  for (const auto& t : detail::coprime_triples(tri)) {
    const u64 p = t[0], q = t[1], r = t[2];
    const auto tag = [&] { return detail::tuple_str(t); };
    if (detail::pm(r, 1, p * q)) r1.check(pseudo_height(t) == 1, tag);
    if (detail::pm(r, 2, p * q) && p * q > 4) {
      const bool flat = pseudo_height(t) == 1;
      r2.check(flat == (q % p == 1), tag);
    }
  }
  rep.properties = {prime_parts, factor, gcd, basic, r1, r2};
  return rep;
}

inline SuiteReport verify_classifier(const SuiteOptions& o) {
  const u64 max = o.max.value_or(30000);
  SuiteReport rep{"classifier-soundness", {}};
  PropertyResult definite{"definite-verdicts", {}, {}, {}};
  PropertyResult two{"r=±2-height-2", {}, {}, {}};
  PropertyResult wbound{"height<=|w|", {}, {}, {}};
  PropertyResult forb{"forbidden-binomial-never-flat", {}, {}, {}};
  const auto items = detail::odd_squarefree(1, max, 3, 3);
  std::vector<Height> heights(items.size());
  detail::parallel_for(items.size(), o.workers,
                       [&](std::size_t i) { heights[i] = height(detail::product(items[i])); });
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& f = items[i];
    const Height& h = heights[i];
    const Verdict v = classify(f);
    const auto tag = [&] { return detail::tuple_str(f) + " A=" + h.str() + " verdict=" + format_verdict(v); };
    if (v.status != VerdictStatus::BoundOnly && v.status != VerdictStatus::TheoremSilent) {
      definite.check(v.consistent_with(h), tag);
    }
    const u64 pq = f[0] * f[1];
    if (detail::pm(f[2], 2, pq) && f[1] % f[0] != 1) two.check(h == 2, tag);
    wbound.check(h <= detail::least_w(f[2], pq), tag);
    if (v.citation == "forbidden-binomial") forb.check(h > 1, tag);
  }
  rep.properties = {definite, two, wbound, forb};
  return rep;
}

/// Every n < 20000 with A(3n) < A(n), as (n, A(n), A(3n)).
struct TableRow {
  u64 n;
  int a_n;
  int a_3n;
};

inline const std::vector<TableRow>& height_drop_table() {
  static const std::vector<TableRow> rows = {
      {4745, 3, 2},  {7469, 4, 3},  {10439, 6, 4}, {14231, 4, 3}, {14443, 5, 4}, {14707, 4, 3},
      {16027, 5, 4}, {16523, 6, 4}, {18791, 5, 4}, {19129, 6, 5}, {19499, 8, 7},
  };
  return rows;
}

inline SuiteReport verify_drop_table(const SuiteOptions& o) {
  SuiteReport rep{"drop-table", {}};
  PropertyResult rows{"height-drop-rows", {}, {}, {}};
  PropertyResult count{"row-count", {}, {}, {}};
  ScanOptions opt;
  opt.bound = o.max.value_or(20000);
  opt.workers = o.workers;
  const ScanReport r = scan(parse_conjecture("height_drop_p3"), opt);
  std::vector<TableRow> expect;
  for (const auto& t : height_drop_table()) {
    if (t.n <= opt.bound) expect.push_back(t);
  }
  count.check(r.counterexamples.size() == expect.size(), [&] {
    return "found " + std::to_string(r.counterexamples.size()) + " rows, expected " + std::to_string(expect.size());
  });
  for (std::size_t i = 0; i < expect.size(); ++i) {
    const auto& t = expect[i];
    const bool ok = i < r.counterexamples.size() && r.counterexamples[i].n_or_tuple == std::to_string(t.n) &&
                    r.counterexamples[i].heights == std::vector<Height>{t.a_n, t.a_3n};
    rows.check(ok, [&] { return "n=" + std::to_string(t.n); });
  }
  rep.properties = {rows, count};
  return rep;
}

inline std::vector<std::string> suite_names() {
  return {"cyclotomic", "binary", "fj", "periodicity", "pseudo", "classifier-soundness", "drop-table"};
}

inline SuiteReport verify_suite(const std::string& name, const SuiteOptions& o) {
  if (name == "cyclotomic") return verify_cyclotomic(o);
  if (name == "binary") return verify_binary(o);
  if (name == "fj") return verify_fj(o);
  if (name == "periodicity") return verify_periodicity(o);
  if (name == "pseudo") return verify_pseudo(o);
  if (name == "classifier-soundness") return verify_classifier(o);
  if (name == "drop-table") return verify_drop_table(o);
  fail(ErrorKind::UnknownSuite, "unknown suite '" + name + "'");
}

}  // namespace cycloforge

#include <gtest/gtest.h>

#include "cycloforge/binary_structure.hpp"
#include "cycloforge/cyclotomic.hpp"
#include "cycloforge/fjdecomp.hpp"
#include "cycloforge/io.hpp"
#include "cycloforge/pseudocyclo.hpp"
#include "oracles.hpp"

using namespace cycloforge;

namespace {

IntPolynomial P(std::initializer_list<std::int64_t> c) { return IntPolynomial(c); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

// Monomial x^k reduced modulo Phi_n by plain long division.
IntPolynomial naive_monomial_mod(std::int64_t k, u64 n) {
  const std::int64_t nn = static_cast<std::int64_t>(n);
  const std::int64_t e = ((k % nn) + nn) % nn;
  return oracle::from_vec(oracle::rem_monic(oracle::to_vec(IntPolynomial::monomial(e)), oracle::phi(n)));
}

std::vector<std::pair<u64, u64>> small_pairs(u64 nmax, u64 pmax) {
  std::vector<std::pair<u64, u64>> out;
  for (u64 n = 2; n <= nmax; ++n) {
    if (!is_squarefree(n)) continue;
    for (u64 p : primes_up_to(pmax))
      if (n % p) out.emplace_back(n, p);
  }
  return out;
}

}  // namespace

TEST(Fj, FamilyExamples) {
  const FjFamily f = fj_family(15, 2);
  ASSERT_EQ(f.members.size(), 2u);
  EXPECT_EQ(f.members[0], P({1, 0, -1, 0, 1}));
  EXPECT_EQ(f.members[1], P({1, -1, -1, 1}));
  EXPECT_EQ(poly_add(substitute_power(f.members[0], 2), poly_mul(P({0, 1}), substitute_power(f.members[1], 2))),
            phi(30));

  const FjFamily g = fj_family(15, 31);
  EXPECT_EQ(g.members[0], P({1}));

  const FjFamily h = fj_family(15, 29);
  for (u64 j = 0; j < 29; ++j) {
    EXPECT_EQ(mod_phi_reduce(h.members[j], 15), poly_neg(naive_monomial_mod(static_cast<std::int64_t>(j) + 8, 15))) << j;
  }
  EXPECT_EQ(kind_of([] { fj_family(15, 5); }), ErrorKind::NotCoprimeIndex);
  EXPECT_EQ(kind_of([] { fj_family(15, 4); }), ErrorKind::NotPrime);
}

TEST(Fj, ExtendedIndices) {
  const FjFamily f = fj_family(15, 2);
  EXPECT_EQ(fj_extended(f, 0), LaurentPolynomial(f.members[0]));
  EXPECT_EQ(fj_extended(f, -2).to_polynomial(), P({0, 1, 0, -1, 0, 1}));
  const FjFamily g = fj_family(21, 5);
  for (std::int64_t j = -17; j <= 17; ++j) {
    const LaurentPolynomial a = fj_extended(g, j);
    const LaurentPolynomial b = fj_extended(g, j + 5);
    // x^j F_j(x^p) is invariant under j -> j + p
    auto spread = [](const LaurentPolynomial& t, std::int64_t shift) {
      return LaurentPolynomial(substitute_power(t.body(), 5), t.offset() * 5 + shift);
    };
    EXPECT_EQ(spread(a, j), spread(b, j + 5)) << j;
    EXPECT_EQ(a, LaurentPolynomial::monomial(1) * b) << j;
  }
}

TEST(Fj, BezoutExamples) {
  const BezoutSplit s = bezout_split(3, 2);
  EXPECT_EQ(s.a, P({0, -1}));
  EXPECT_EQ(s.b, P({1}));
  const BezoutSplit t = bezout_split(5, 2);
  EXPECT_LT(t.a.degree(), 4);
  EXPECT_EQ(poly_add(poly_mul(t.a, IntPolynomial::geometric(5, 2)), poly_mul(t.b, substitute_power(phi(5), 2))), phi(10));
  EXPECT_EQ(kind_of([] { bezout_split(4, 2); }), ErrorKind::NotCoprimeIndex);
}

TEST(Fj, GjExamples) {
  const auto g = gj_family(bezout_split(3, 2));
  EXPECT_EQ(g[0], P({0, 0, -1}));
  EXPECT_EQ(g[1], P({-1}));
  const FjFamily f = fj_family(3, 2);
  for (int j = 0; j < 2; ++j) EXPECT_TRUE(poly_rem_monic(poly_sub(f.members[j], g[j]), phi(3)).is_zero());
  const auto g7 = gj_family(bezout_split(3, 7));
  for (int j = 0; j < 7 - 3; ++j) EXPECT_EQ(g7[j], g7[j + 3]) << j;
}

TEST(Fj, FastF0Examples) {
  EXPECT_EQ(f0_fast({3, 5}, 31), P({1}));
  EXPECT_EQ(f0_fast({3, 5}, 17), P({1, 0, -1, 0, 1}));
  EXPECT_EQ(f0_fast({3, 5}, 19), extract_residue(phi(285), 19, 0));
  EXPECT_EQ(f0_fast({3, 5}, 17), fj_family(15, 17).members[0]);
  EXPECT_EQ(kind_of([] { f0_fast({3, 5}, 13); }), ErrorKind::RequiresLargeP);
}

TEST(Fj, FstarExamples) {
  const auto fs = fstar_family(15, 31);
  ASSERT_EQ(fs.size(), 15u);
  for (std::int64_t j = 0; j < 15; ++j) EXPECT_EQ(fs[j], naive_monomial_mod(j, 15)) << j;
  EXPECT_EQ(kind_of([] { fstar_family(15, 13); }), ErrorKind::RequiresLargeP);
}

TEST(Fj, ConstantTerms) {
  const auto c15 = fj_constant_terms(15);
  const std::vector<BigInt> e15{1, 1, 1, 0, 0, -1, -1, -1, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_EQ(c15, e15);
  const std::vector<BigInt> e7{1, -1, 0, 0, 0, 0, 0};
  EXPECT_EQ(fj_constant_terms(7), e7);
  for (u64 n : {15u, 21u, 35u, 105u}) {
    const auto c = fj_constant_terms(n);
    for (u64 p : {107u, 113u, 211u}) {
      const FjFamily f = fj_family(n, p);
      for (u64 j = 0; j < n; ++j) EXPECT_EQ(f.members[j].coeff(0), c[j]) << n << " " << p << " " << j;
    }
  }
}

TEST(Fj, ReciprocityPartner) {
  EXPECT_EQ(reciprocity_partner(15, 17, 0), 9);
  EXPECT_EQ(reciprocity_partner(15, 17, 10), 16);
  EXPECT_EQ(kind_of([] { reciprocity_partner(15, 17, 17); }), ErrorKind::IndexOutOfRange);
  for (auto [n, p] : small_pairs(40, 60)) {
    const FjFamily f = fj_family(n, p);
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(p); ++j) {
      const std::int64_t k = reciprocity_partner(n, p, j);
      ASSERT_GE(k, 0);
      ASSERT_LT(k, static_cast<std::int64_t>(p));
      EXPECT_EQ(reciprocity_partner(n, p, k), j);
      EXPECT_EQ(coeff_set(f.members[j]), coeff_set(f.members[k])) << n << " " << p << " " << j;
    }
  }
}

TEST(Fj, PeriodicityExamples) {
  const auto a = periodicity_compare(15, 17, 47);
  EXPECT_EQ(a.observed, Relation::Equal);
  EXPECT_EQ(a.predicted, Relation::Equal);
  const auto b = periodicity_compare(15, 13, 17);
  EXPECT_EQ(b.observed, Relation::Negated);
  EXPECT_EQ(b.predicted, Relation::Negated);
  const auto c = periodicity_compare(15, 2, 17);
  EXPECT_EQ(c.observed, Relation::SubsetForward);
  EXPECT_EQ(c.v_ns, (std::set<BigInt>{-1, 0, 1}));
  EXPECT_EQ(c.v_nt, (std::set<BigInt>{-1, 0, 1, 2}));
  EXPECT_TRUE(c.consistent());
  EXPECT_EQ(kind_of([] { periodicity_compare(15, 17, 19); }), ErrorKind::HypothesisViolated);
  EXPECT_EQ(kind_of([] { periodicity_compare(15, 5, 17); }), ErrorKind::NotCoprimeIndex);
}

TEST(FjProperty, FamilyInvariants) {
  for (auto [n, p] : small_pairs(80, 60)) {
    const FjFamily fam = fj_family(n, p);
    const auto ph = static_cast<std::int64_t>(totient(n));
    const auto pp = static_cast<std::int64_t>(p);
    IntPolynomial sum;
    for (std::int64_t j = 0; j < pp; ++j) {
      sum = poly_add(sum, shift_up(substitute_power(fam.members[j], p), static_cast<std::size_t>(j)));
      EXPECT_LE(fam.members[j].degree(), ph - (ph + j + pp - 1) / pp) << n << " " << p << " " << j;
    }
    EXPECT_EQ(sum, phi(n * p));
    EXPECT_EQ(fam.members[0].coeff(0), 1);
  }
}

TEST(FjProperty, BezoutInvariantsAndCongruence) {
  for (auto [n, p] : small_pairs(80, 60)) {
    const BezoutSplit s = bezout_split(n, p);
    const IntPolynomial phin = phi(n);
    EXPECT_EQ(poly_add(poly_mul(s.a, IntPolynomial::geometric(n, p)), poly_mul(s.b, substitute_power(phin, p))), phi(n * p));
    EXPECT_LT(s.a.degree(), static_cast<std::int64_t>(totient(n)));
    EXPECT_LT(s.b.degree(), static_cast<std::int64_t>((n - totient(n)) * (p - 1)));
    const FjFamily f = fj_family(n, p);
    const auto g = gj_family(s);
    for (u64 j = 0; j < p; ++j) EXPECT_TRUE(poly_rem_monic(poly_sub(f.members[j], g[j]), phin).is_zero());
  }
}

TEST(FjProperty, ShiftByNWhenPExceedsN) {
  for (auto [n, p] : small_pairs(60, 150)) {
    if (p <= n) continue;
    const FjFamily f = fj_family(n, p);
    const auto g = gj_family(bezout_split(n, p));
    const IntPolynomial phin = phi(n);
    for (u64 j = 0; j + n < p; ++j) {
      EXPECT_EQ(f.members[j], f.members[j + n]);
      EXPECT_EQ(g[j], g[j + n]);
    }
    // Negative indices through the extension, modulo Phi_n.
    for (std::int64_t j = -static_cast<std::int64_t>(n); j < 0; ++j) {
      const auto a = fj_extended(f, j), b = fj_extended(f, j + static_cast<std::int64_t>(n));
      EXPECT_EQ(mod_phi_reduce(a, n), mod_phi_reduce(b, n)) << n << " " << p << " " << j;
    }
    std::set<BigInt> first, last;
    for (u64 j = 0; j < n; ++j) {
      const auto a = coeff_set(f.members[j]);
      const auto b = coeff_set(f.members[p - n + j]);
      first.insert(a.begin(), a.end());
      last.insert(b.begin(), b.end());
    }
    const auto v = coeff_set(phi(n * p));
    EXPECT_EQ(first, v);
    EXPECT_EQ(last, v);
  }
}

TEST(FjProperty, FastF0AndFstarRecursion) {
  for (auto [n, p] : small_pairs(60, 150)) {
    if (p <= n) continue;
    const FjFamily f = fj_family(n, p);
    EXPECT_EQ(f0_fast(prime_factors(n), p), f.members[0]);
    const auto fs = fstar_family(n, p);
    const IntPolynomial phin = phi(n);
    for (u64 j = 0; j < n; ++j) {
      EXPECT_EQ(fs[j], mod_phi_reduce(LaurentPolynomial(f.members[0]).shifted(static_cast<std::int64_t>(j)), n));
      const IntPolynomial& prev = fs[(j + n - 1) % n];
      EXPECT_EQ(fs[j], poly_add(shift_up(prev, 1), poly_mul(phin, IntPolynomial::from_big({fs[j].coeff(0)}))));
    }
    // coefficient k of F*_{j} from constant terms of the k + 1 preceding members
    for (u64 j = 0; j < n; ++j) {
      for (std::int64_t k = 0; k <= fs[j].degree(); ++k) {
        BigInt sum = 0;
        for (std::int64_t i = 0; i <= k; ++i) {
          const auto nn = static_cast<std::int64_t>(n);
          const auto idx = static_cast<std::size_t>(((static_cast<std::int64_t>(j) - i) % nn + nn) % nn);
          sum += fs[idx].coeff(0) * phin.coeff(k - i);
        }
        EXPECT_EQ(fs[j].coeff(k), sum) << n << " " << p << " " << j << " " << k;
      }
    }
    auto keys = [](const std::vector<IntPolynomial>& v, std::size_t count) {
      std::set<std::string> s;
      for (std::size_t i = 0; i < count; ++i) s.insert(format_coeffs(v[i]));
      return s;
    };
    EXPECT_EQ(keys(fs, n), keys(f.members, n));
  }
}

TEST(FjProperty, SlicesAgreeForCongruentPrimes) {
  for (u64 n : {15u, 21u, 35u}) {
    const auto primes = primes_up_to(250);
    for (std::size_t a = 0; a < primes.size(); ++a) {
      for (std::size_t b = a + 1; b < primes.size(); ++b) {
        const u64 s = primes[a], t = primes[b];
        if (s <= n || n % s == 0 || n % t == 0) continue;
        const FjFamily fs = fj_family(n, s), ft = fj_family(n, t);
        if (s % n == t % n) {
          for (u64 j = 0; j < s; ++j) EXPECT_EQ(fs.members[j], ft.members[j]) << n << " " << s << " " << t;
        } else if ((s + t) % n == 0) {
          const auto ph = static_cast<std::int64_t>(totient(n));
          const auto si = static_cast<std::int64_t>(s), ti = static_cast<std::int64_t>(t);
          const auto ni = static_cast<std::int64_t>(n);
          for (std::int64_t j = s - n; j < si; ++j) {
            const std::int64_t k = j >= si - ph + 1 ? ti + si - ph - j : ti - ni + si - ph - j;
            EXPECT_EQ(fs.members[j], poly_neg(ft.members[k])) << n << " " << s << " " << t << " " << j;
          }
        }
      }
    }
  }
}

TEST(FjProperty, PseudoSlicesForCongruentLastPart) {
  // With n the product of the parts, a last part w = +-1 mod n gives slices
  // congruent to x^-j, or to -x^(j + deg), modulo the pseudocyclotomic polynomial of the parts.
  for (const auto& parts : std::vector<std::vector<u64>>{{3, 5}, {4, 9}, {2, 5, 9}}) {
    u64 n = 1, deg = 1;
    for (u64 x : parts) n *= x, deg *= x - 1;
    const oracle::Vec mod = oracle::to_vec(pseudo_phi(PseudoParts(parts)));
    auto reduce = [&](std::int64_t k) {
      const std::int64_t nn = static_cast<std::int64_t>(n);
      return oracle::rem_monic(oracle::to_vec(IntPolynomial::monomial(((k % nn) + nn) % nn)), mod);
    };
    for (u64 w : {n + 1, 2 * n + 1, n - 1, 2 * n - 1}) {
      if (std::gcd(w, n) != 1 || w < 2) continue;
      const bool plus = w % n == 1;
      const auto f = pseudo_fj_family(parts, w);
      ASSERT_EQ(f.size(), w);
      if (plus) {
        EXPECT_EQ(f[0], P({1}));
      }
      for (u64 j = 0; j < w; ++j) {
        const oracle::Vec got = oracle::rem_monic(oracle::to_vec(f[j]), mod);
        const auto jj = static_cast<std::int64_t>(j);
        oracle::Vec want = plus ? reduce(-jj) : reduce(jj + static_cast<std::int64_t>(deg));
        if (!plus)
          for (auto& c : want) c = -c;
        EXPECT_EQ(got, want) << n << " w=" << w << " j=" << j;
      }
    }
  }
}

TEST(FjProperty, PeriodicityTheoremRelations) {
  for (u64 n : {15u, 21u}) {
    const u64 threshold = n - totient(n);
    const auto primes = primes_up_to(200);
    for (std::size_t a = 0; a < primes.size(); ++a) {
      for (std::size_t b = a + 1; b < primes.size(); ++b) {
        const u64 s = primes[a], t = primes[b];
        if (n % s == 0 || n % t == 0) continue;
        if (s % n != t % n && (s + t) % n != 0) continue;
        const auto r = periodicity_compare(n, s, t);
        EXPECT_TRUE(r.consistent()) << n << " " << s << " " << t;
        if (s > threshold) {
          EXPECT_TRUE(r.observed == Relation::Equal || r.observed == Relation::Negated);
        }
      }
    }
  }
}

#include <gtest/gtest.h>

#include <random>

#include "cycloforge/io.hpp"
#include "cycloforge/intpoly.hpp"
#include "oracles.hpp"

using namespace cycloforge;
using oracle::Vec;

namespace {

IntPolynomial P(std::initializer_list<std::int64_t> c) { return IntPolynomial(c); }

const IntPolynomial kPhi15 = P({1, -1, 0, 1, -1, 1, 0, -1, 1});

IntPolynomial random_poly(std::mt19937_64& rng, int max_deg, std::int64_t span) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<std::int64_t> c(-span, span);
  std::vector<std::int64_t> v(deg(rng) + 1);
  for (auto& x : v) x = c(rng);
  return IntPolynomial(v);
}

BigInt big_pow(std::int64_t b, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

TEST(IntPoly, ZeroPolynomialHasSentinelDegree) {
  const IntPolynomial z;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.degree(), kZeroDegree);
  EXPECT_LT(z.degree(), std::int64_t{-1});
  EXPECT_EQ(poly_height(z), 0);
  EXPECT_EQ(P({0, 0, 0}), z);
}

TEST(IntPoly, AddExamples) {
  EXPECT_EQ(poly_add(P({1, 1}), P({1, -1})), P({2}));
  EXPECT_EQ(poly_add(IntPolynomial{}, kPhi15), kPhi15);
  EXPECT_EQ(poly_add(IntPolynomial::x_pow_minus_one(3), P({1})), IntPolynomial::monomial(3));
  EXPECT_TRUE(poly_add(P({1, 2, 3}), P({-1, -2, -3})).is_zero());
}

TEST(IntPoly, MulExamples) {
  EXPECT_EQ(poly_mul(P({-1, 1}), P({1, 1, 1})), IntPolynomial::x_pow_minus_one(3));
  EXPECT_EQ(poly_mul(P({1, 1}), P({1, -1})), P({1, 0, -1}));
  const IntPolynomial psi15 = P({-1, -1, -1, 0, 0, 1, 1, 1});
  EXPECT_EQ(poly_mul(kPhi15, psi15), IntPolynomial::x_pow_minus_one(15));
  EXPECT_TRUE(poly_mul(kPhi15, IntPolynomial{}).is_zero());
}

TEST(IntPoly, ExactDivisionExamples) {
  EXPECT_EQ(poly_exact_div(IntPolynomial::x_pow_minus_one(6), IntPolynomial::x_pow_minus_one(2)),
            P({1, 0, 1, 0, 1}));
  const IntPolynomial num = poly_mul(IntPolynomial::x_pow_minus_one(15), IntPolynomial::x_pow_minus_one(1));
  const IntPolynomial den = poly_mul(IntPolynomial::x_pow_minus_one(3), IntPolynomial::x_pow_minus_one(5));
  EXPECT_EQ(poly_exact_div(num, den), kPhi15);
  try {
    poly_exact_div(P({1, 0, 1}), P({1, 1}));
    FAIL() << "expected RemainderNonzero";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RemainderNonzero);
  }
  try {
    poly_exact_div(P({1}), IntPolynomial{});
    FAIL() << "expected DivisionByZero";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
  }
}

TEST(IntPoly, ExactDivisionByNonMonicDivisor) {
  const IntPolynomial b = P({3, 2});
  const IntPolynomial a = P({1, -4, 7});
  EXPECT_EQ(poly_exact_div(poly_mul(a, b), b), a);
  EXPECT_THROW(poly_exact_div(P({1, 1}), P({0, 2})), Error);
}

TEST(IntPoly, HeightAndCoefficientSet) {
  EXPECT_EQ(poly_height(kPhi15), 1);
  EXPECT_EQ(coeff_set(P({1, 1})), (std::set<BigInt>{0, 1}));
  EXPECT_EQ(coeff_set(kPhi15), (std::set<BigInt>{-1, 0, 1}));
  EXPECT_EQ(coeff_set(P({3})), (std::set<BigInt>{0, 3}));
  EXPECT_EQ(coeff_set(IntPolynomial{}), (std::set<BigInt>{0}));
  EXPECT_EQ(poly_height(P({2, -7, 5})), 7);
}

TEST(IntPoly, Reciprocal) {
  EXPECT_TRUE(is_reciprocal(kPhi15));
  EXPECT_FALSE(is_reciprocal(P({-1, 1})));
  EXPECT_TRUE(is_reciprocal(P({1, 1})));
}

TEST(IntPoly, Substitutions) {
  EXPECT_EQ(substitute_power(P({1, 1, 1}), 2), P({1, 0, 1, 0, 1}));
  EXPECT_EQ(substitute_power(kPhi15, 1), kPhi15);
  EXPECT_EQ(substitute_power(P({1, -1, 1}), 2), P({1, 0, -1, 0, 1}));
  EXPECT_EQ(substitute_neg(P({1, 1})), P({1, -1}));
  EXPECT_EQ(substitute_neg(kPhi15), P({1, 1, 0, -1, -1, -1, 0, 1, 1}));
  EXPECT_EQ(substitute_neg(P({1, 0, 1})), P({1, 0, 1}));
}

TEST(IntPoly, ExtractResidueExamples) {
  EXPECT_EQ(extract_residue(P({1, 1, 1, 1}), 2, 0), P({1, 1}));
  EXPECT_EQ(extract_residue(kPhi15, 2, 0), P({1, 0, -1, 0, 1}));
  EXPECT_EQ(extract_residue(kPhi15, 2, 1), P({-1, 1, 1, -1}));
  for (std::int64_t bad : {-1, 2, 5}) {
    try {
      extract_residue(kPhi15, 2, bad);
      FAIL() << "expected IndexOutOfRange for j=" << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::IndexOutOfRange);
    }
  }
}

TEST(IntPoly, TruncateShiftAndValuation) {
  EXPECT_EQ(truncate(kPhi15, 0), P({1}));
  EXPECT_EQ(truncate(kPhi15, 5), P({1, -1, 0, 1, -1, 1}));
  EXPECT_EQ(shift_up(P({1, 2}), 3), P({0, 0, 0, 1, 2}));
  EXPECT_EQ(valuation(P({0, 0, 4})), 2u);
  EXPECT_EQ(shift_down(P({0, 0, 4, 5}), 2), P({4, 5}));
  EXPECT_EQ(evaluate(kPhi15, 1), 1);
  EXPECT_EQ(evaluate(P({1, 1, 1}), 2), 7);
}

TEST(IntPoly, GcdAndContent) {
  const IntPolynomial a = poly_mul(P({1, 1}), P({2, 0, 1}));
  const IntPolynomial b = poly_mul(P({1, 1}), P({-3, 1}));
  EXPECT_EQ(poly_gcd(a, b), P({1, 1}));
  EXPECT_EQ(content(P({4, -6, 10})), 2);
  EXPECT_EQ(primitive_part(P({4, -6, 10})), P({2, -3, 5}));
  EXPECT_EQ(poly_gcd(IntPolynomial::x_pow_minus_one(6), IntPolynomial::x_pow_minus_one(4)),
            IntPolynomial::x_pow_minus_one(2));
}

TEST(IntPoly, OverflowEscalatesToBigIntegers) {
  const std::int64_t big = std::int64_t{1} << 40;
  const IntPolynomial a = P({1, big});
  IntPolynomial cube = poly_mul(poly_mul(a, a), a);
  EXPECT_TRUE(cube.is_big());
  EXPECT_EQ(cube.coeff(3), big_pow(big, 3));
  EXPECT_EQ(cube.coeff(2), 3 * big_pow(big, 2));
  EXPECT_EQ(poly_exact_div(cube, a), poly_mul(a, a));
  EXPECT_EQ(poly_exact_div(cube, poly_mul(a, a)), a);
  EXPECT_FALSE(poly_exact_div(cube, poly_mul(a, a)).is_big());

  const IntPolynomial m = P({std::numeric_limits<std::int64_t>::max()});
  const IntPolynomial s = poly_add(m, m);
  EXPECT_EQ(s.coeff(0), BigInt(std::numeric_limits<std::int64_t>::max()) * 2);
  EXPECT_EQ(poly_sub(s, m), m);
  EXPECT_FALSE(poly_sub(s, m).is_big());
  EXPECT_EQ(poly_neg(P({std::numeric_limits<std::int64_t>::min()})).coeff(0),
            -BigInt(std::numeric_limits<std::int64_t>::min()));
}

TEST(IntPoly, MulMatchesNaiveConvolution) {
  std::mt19937_64 rng(12345);
  for (int t = 0; t < 300; ++t) {
    const IntPolynomial a = random_poly(rng, 25, 50), b = random_poly(rng, 25, 50);
    EXPECT_EQ(oracle::to_vec(poly_mul(a, b)), oracle::mul(oracle::to_vec(a), oracle::to_vec(b)));
    EXPECT_EQ(oracle::to_vec(poly_add(a, b)), oracle::add(oracle::to_vec(a), oracle::to_vec(b)));
  }
}

TEST(IntPolyProperty, ExactDivisionInvertsMultiplication) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 300; ++t) {
    const IntPolynomial a = random_poly(rng, 20, 9);
    const IntPolynomial b = random_poly(rng, 12, 9);
    if (b.is_zero()) continue;
    EXPECT_EQ(poly_exact_div(poly_mul(a, b), b), a);
  }
}

TEST(IntPolyProperty, ResiduesReassemble) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const IntPolynomial a = random_poly(rng, 40, 5);
    for (std::size_t m = 1; m <= 7; ++m) {
      IntPolynomial sum;
      for (std::size_t j = 0; j < m; ++j) {
        sum = poly_add(sum, shift_up(substitute_power(extract_residue(a, m, static_cast<std::int64_t>(j)), m), j));
      }
      EXPECT_EQ(sum, a);
    }
  }
}

TEST(IntPolyProperty, SubstitutionLaws) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const IntPolynomial a = random_poly(rng, 15, 20);
    EXPECT_EQ(substitute_neg(substitute_neg(a)), a);
    for (std::size_t k1 = 1; k1 <= 4; ++k1)
      for (std::size_t k2 = 1; k2 <= 4; ++k2)
        EXPECT_EQ(substitute_power(substitute_power(a, k2), k1), substitute_power(a, k1 * k2));
  }
}

TEST(IntPolyProperty, HeightIsMaxOverSignedCoefficientSet) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const IntPolynomial a = random_poly(rng, 15, 30);
    const auto s = coeff_set(a);
    EXPECT_TRUE(s.count(0));
    BigInt h = 0;
    for (const auto& c : s) h = std::max(h, BigInt(c < 0 ? BigInt(-c) : c));
    EXPECT_EQ(poly_height(a), h);
  }
}

TEST(Laurent, CanonicalOffsetAndArithmetic) {
  const LaurentPolynomial t(P({0, 0, 1, 2}), -3);
  EXPECT_EQ(t.offset(), -1);
  EXPECT_EQ(t.body(), P({1, 2}));
  EXPECT_EQ(t.coeff(-1), 1);
  EXPECT_EQ(t.coeff(0), 2);
  EXPECT_FALSE(t.is_polynomial());
  EXPECT_EQ(t.shifted(1).to_polynomial(), P({1, 2}));
  const LaurentPolynomial u = LaurentPolynomial::monomial(-1);
  EXPECT_EQ((u * LaurentPolynomial(P({0, 1}), 0)).to_polynomial(), P({1}));
  EXPECT_TRUE((t - t).is_zero());
  EXPECT_EQ(fold_mod_xn_minus_one(LaurentPolynomial::monomial(-1), 15), IntPolynomial::monomial(14));
}

TEST(Format, CoefficientTextRoundTrip) {
  EXPECT_EQ(format_coeffs(P({1, -1, 1})), "1 -1 1");
  EXPECT_EQ(format_coeffs(IntPolynomial{}), "0");
  EXPECT_EQ(parse_coeffs("1 -1 1"), P({1, -1, 1}));
  const IntPolynomial big = IntPolynomial::from_big({BigInt("123456789012345678901234567890"), 1});
  EXPECT_EQ(parse_coeffs(format_coeffs(big)), big);
  EXPECT_EQ(poly_from_json(poly_to_json(big)), big);
  EXPECT_EQ(poly_to_json(big)[0], "123456789012345678901234567890");
  EXPECT_THROW(parse_coeffs("1 x 2"), Error);
}

TEST(Format, PrettyAndTex) {
  EXPECT_EQ(format_pretty(P({1, -1, 1})), "x²-x+1");
  EXPECT_EQ(format_tex(poly_add(IntPolynomial::monomial(10), P({1, 0, 0, 0, 0, 0, 0, 0, -2}))), "x^{10}-2x^8+1");
  EXPECT_EQ(format_pretty(P({-1})), "-1");
  EXPECT_EQ(format_pretty(IntPolynomial{}), "0");
}

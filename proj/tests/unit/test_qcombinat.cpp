#include <gtest/gtest.h>

#include "oracle.hpp"
#include "stablecentres/errors.hpp"
#include "stablecentres/qcombinat.hpp"

using namespace stc;

namespace {

// Product formula over the integers, independent of the library's rational path.
BigInt qbinom_product(long n, long k, long q) {
  if (k < 0 || k > n) return 0;
  BigInt num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    BigInt a = 1, b = 1;
    for (long j = 0; j < n - i; ++j) a *= q;
    for (long j = 0; j < i + 1; ++j) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

}  // namespace

TEST(QInt, Examples) {
  EXPECT_EQ(q_int(3, QValue(2)), BigRational(7));
  EXPECT_EQ(q_int(0, QValue(5)), BigRational(0));
  EXPECT_EQ(q_int(2, QValue(-2)), BigRational(-1));
  EXPECT_EQ(q_int_z(4, QValue(3)), BigInt(40));
}

TEST(QInt, NegativeArgumentIsExactRational) {
  EXPECT_EQ(q_int(-1, QValue(2)), BigRational(-1, 2));
  EXPECT_EQ(q_int(-2, QValue(3)), BigRational(-4, 9));
}

TEST(QBinomial, Examples) {
  EXPECT_EQ(q_binomial(4, 2, QValue(2)), BigInt(35));
  EXPECT_EQ(q_binomial(4, 2, QValue(2)), BigInt(oracle::count_subspaces(2, 4, 2)));
  EXPECT_EQ(q_binomial(3, 1, QValue(3)), BigInt(oracle::count_subspaces(3, 3, 1)));
  EXPECT_EQ(q_binomial(2, 1, QValue(-2)), BigInt(-1));
  EXPECT_EQ(q_binomial(3, 5, QValue(2)), BigInt(0));
  for (long n = 0; n < 6; ++n) EXPECT_EQ(q_binomial(n, 0, QValue(7)), BigInt(1));
}

TEST(QBinomial, MatchesProductFormula) {
  for (long q : {2, 3, 4, 5, -2, -3, 9})
    for (long n = 0; n <= 9; ++n)
      for (long k = 0; k <= n; ++k) EXPECT_EQ(q_binomial(n, k, QValue(q)), qbinom_product(n, k, q)) << q << " " << n << " " << k;
}

TEST(QBinomial, Symmetry) {
  for (long q : {2, 3, 4, 5, -2, -3, 9})
    for (long n = 0; n <= 10; ++n)
      for (long k = 0; k <= n; ++k) EXPECT_EQ(q_binomial(n, k, QValue(q)), q_binomial(n, n - k, QValue(q)));
}

TEST(QBinomial, PascalRecurrence) {
  for (long q : {2, 3, 4, 5, -2, -3, 9})
    for (long n = 1; n <= 12; ++n)
      for (long k = 1; k <= n; ++k) {
        BigInt qk = 1;
        for (long i = 0; i < k; ++i) qk *= q;
        EXPECT_EQ(q_binomial(n, k, QValue(q)), q_binomial(n - 1, k - 1, QValue(q)) + qk * q_binomial(n - 1, k, QValue(q)));
      }
}

TEST(GaussPoly, Examples) {
  EXPECT_EQ(gauss_poly(2, 1), RationalPoly({1, 1}));
  EXPECT_EQ(gauss_poly(5, 0), RationalPoly::constant(1));
  EXPECT_EQ(gauss_poly(4, 2), RationalPoly({1, 1, 2, 1, 1}));
}

TEST(GaussPoly, NonnegativeAndOrdinaryAtOne) {
  for (long n = 0; n <= 9; ++n) {
    BigInt binom = 1;
    for (long k = 0; k <= n; ++k) {
      const RationalPoly p = gauss_poly(n, k);
      for (const auto& c : p.coeffs()) {
        EXPECT_TRUE(is_integral(c));
        EXPECT_GE(c, 0);
      }
      EXPECT_EQ(p.eval(1), BigRational(binom));
      for (long q : {2, 3, -2}) EXPECT_EQ(p.eval(q), BigRational(qbinom_product(n, k, q)));
      binom = binom * (n - k) / (k + 1);
    }
  }
}

TEST(RqBasis, Examples) {
  EXPECT_EQ(rq_basis_eval(2, 7, QValue(2)), BigRational(7));
  EXPECT_EQ(rq_basis_eval(0, BigRational(11, 3), QValue(5)), BigRational(1));
  EXPECT_EQ(rq_basis_eval(1, BigRational(5, 3), QValue(2)), BigRational(5, 3));
}

TEST(RqBasis, EvaluationIdentity) {
  for (long q : {2, 3, 4, 5, -2, -3, 9})
    for (long n = 0; n <= 10; ++n)
      for (long k = 0; k <= n; ++k)
        EXPECT_EQ(rq_basis_eval(k, q_int(n, QValue(q)), QValue(q)), BigRational(q_binomial(n, k, QValue(q))));
}

TEST(ShiftedQBinom, Examples) {
  EXPECT_TRUE(shifted_qbinom_check(1, 2, 2, QValue(2)));
  EXPECT_TRUE(shifted_qbinom_check(0, 0, 0, QValue(3)));
  EXPECT_TRUE(shifted_qbinom_check(2, 1, 1, QValue(2)));
}

TEST(ShiftedQBinom, ExhaustiveRange) {
  for (long q : {2, 3, 4, 5, -2, -3, 9})
    for (long d = -4; d <= 4; ++d)
      for (long h = 0; h <= 4; ++h)
        for (long m = 0; m <= 8; ++m)
          if (m + d >= 0) EXPECT_TRUE(shifted_qbinom_check(d, h, m, QValue(q))) << q << " " << d << " " << h << " " << m;
}

TEST(QValue, RejectsSmallBases) {
  EXPECT_THROW(QValue(1), Error);
  EXPECT_THROW(QValue(0), Error);
  EXPECT_THROW(QValue(-1), Error);
}

#include <gtest/gtest.h>

#include <set>

#include "stablecentres/errors.hpp"
#include "stablecentres/gf.hpp"

using namespace stc;

TEST(FieldMake, Moduli) {
  EXPECT_EQ(field_make(2, 1).size(), 2u);
  EXPECT_EQ(field_make(2, 2).modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(field_make(3, 2).modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
  EXPECT_EQ(field_of_order(25).p(), 5u);
  EXPECT_EQ(field_of_order(25).k(), 2u);
}

TEST(FieldMake, ModulusIsLexLeastIrreducible) {
  // For each small field, no lexicographically smaller monic polynomial of the same degree is root-free
  // and irreducible; for degree 2 and 3 root-freeness is irreducibility.
  for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
    const auto& mod = field_make(p, k).modulus();
    auto root_free = [&](const std::vector<std::uint32_t>& c) {
      for (unsigned x = 0; x < p; ++x) {
        unsigned long v = 0, pw = 1;
        for (auto a : c) {
          v = (v + a * pw) % p;
          pw = pw * x % p;
        }
        if (v == 0) return false;
      }
      return true;
    };
    EXPECT_TRUE(root_free(mod));
    // Enumerate monic candidates in lexicographic order from the constant term up.
    std::vector<std::uint32_t> c(k + 1, 0);
    c[k] = 1;
    for (;;) {
      if (c == mod) break;
      EXPECT_FALSE(root_free(c)) << p << "^" << k;
      // Compare from the constant term: constant term varies slowest.
      int i = k - 1;
      while (i >= 0 && ++c[i] == p) c[i--] = 0;
      if (i < 0) break;
    }
  }
}

TEST(FieldMake, Errors) {
  try {
    field_make(4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrime);
  }
  try {
    field_make(2, 17);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LimitExceeded);
  }
}

TEST(Arithmetic, Examples) {
  const Field& f4 = field_make(2, 2);
  const Scalar g = f4.from_digits({0, 1});
  EXPECT_EQ(f4.mul(g, g), f4.add(g, 1));
  const Field& f3 = field_make(3, 1);
  EXPECT_EQ(f3.inv(2), 2u);
  for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u, 25u, 27u}) {
    const Field& f = field_of_order(q);
    for (Scalar x = 0; x < q; ++x) EXPECT_EQ(f.add(x, f.neg(x)), 0u);
  }
  try {
    f4.inv(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(Arithmetic, FieldAxiomsExhaustive) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u}) {
    const Field& f = field_of_order(q);
    for (Scalar a = 0; a < q; ++a) {
      EXPECT_EQ(f.pow(a, q), a);
      if (a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      for (Scalar b = 0; b < q; ++b) {
        EXPECT_EQ(f.add(a, b), f.add(b, a));
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        for (Scalar c = 0; c < q; ++c) {
          EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
          EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
          EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST(Arithmetic, LargerFieldsSampled) {
  for (unsigned q : {125u, 243u, 256u, 343u, 512u, 625u, 729u, 1024u}) {
    const Field& f = field_of_order(q);
    for (Scalar a = 0; a < q; ++a) EXPECT_EQ(f.pow(a, q), a) << q;
    for (Scalar a = 1; a < q; a += 7)
      for (Scalar b = 0; b < q; b += 11) EXPECT_EQ(f.mul(f.mul(a, b), f.inv(a)), b);
  }
}

TEST(Frobenius, Examples) {
  const Field& f4 = field_make(2, 2);
  const Scalar g = f4.from_digits({0, 1});
  EXPECT_EQ(f4.frobenius_q(g), f4.add(g, 1));
  EXPECT_EQ(f4.frobenius_q(0), 0u);
  EXPECT_EQ(f4.frobenius_q(1), 1u);
  const Field& f9 = field_make(3, 2);
  for (Scalar x = 0; x < 9; ++x) {
    EXPECT_EQ(f9.frobenius_q(x), f9.pow(x, 3));
    EXPECT_EQ(f9.frobenius_q(f9.frobenius_q(x)), x);
  }
  try {
    field_make(2, 3).frobenius_q(1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongField);
  }
}

TEST(Frobenius, AutomorphismWithFixedSubfield) {
  for (unsigned q2 : {4u, 9u, 25u, 16u, 49u}) {
    const Field& f = field_of_order(q2);
    std::set<Scalar> fixed, traces;
    for (Scalar a = 0; a < q2; ++a) {
      if (f.frobenius_q(a) == a) fixed.insert(a);
      traces.insert(f.add(a, f.frobenius_q(a)));
      for (Scalar b = 0; b < q2; ++b) {
        EXPECT_EQ(f.frobenius_q(f.add(a, b)), f.add(f.frobenius_q(a), f.frobenius_q(b)));
        EXPECT_EQ(f.frobenius_q(f.mul(a, b)), f.mul(f.frobenius_q(a), f.frobenius_q(b)));
      }
    }
    EXPECT_EQ(fixed.size(), f.sub_order());
    EXPECT_EQ(traces, fixed);
  }
}

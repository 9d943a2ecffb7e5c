#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "stablecentres/errors.hpp"
#include "stablecentres/forms.hpp"

using namespace stc;

namespace {

BigInt order_formula(Family f, unsigned q, int n) {
  const BigInt Q = q;
  BigInt r = 1;
  switch (f) {
    case Family::U:
      r = ipow(Q, n * (n - 1) / 2);
      for (int i = 1; i <= n; ++i) r *= ipow(Q, i) - (i % 2 ? -1 : 1);
      break;
    case Family::Sp:
    case Family::OOdd:
      r = ipow(Q, n * n) * (f == Family::OOdd ? 2 : 1);
      for (int i = 1; i <= n; ++i) r *= ipow(Q, 2 * i) - 1;
      break;
    case Family::OPlus:
    case Family::OMinus:
      if (n == 0) return 1;
      r = 2 * ipow(Q, n * (n - 1)) * (ipow(Q, n) - (f == Family::OPlus ? 1 : -1));
      for (int i = 1; i < n; ++i) r *= ipow(Q, 2 * i) - 1;
      break;
    case Family::GL: break;
  }
  return r;
}

std::vector<Scalar> random_vector(const Field& f, int n, std::mt19937_64& rng) {
  std::vector<Scalar> v(n);
  for (auto& x : v) x = static_cast<Scalar>(rng() % f.size());
  return v;
}

Subspace random_subspace(const Field& f, int n, std::mt19937_64& rng) {
  const int k = static_cast<int>(rng() % (n + 1));
  Mat m(f, k, n);
  for (auto& x : m.data()) x = static_cast<Scalar>(rng() % f.size());
  return Subspace::span(m);
}

}  // namespace

TEST(StandardGram, Examples) {
  const Field& f2 = field_of_order(2);
  EXPECT_EQ(standard_gram(Family::Sp, 1, 2).gram, Mat(f2, 2, 2, {0, 1, 1, 0}));
  EXPECT_EQ(standard_gram(Family::U, 2, 2).gram, Mat::identity(field_of_order(4), 2));
  const FormSpec o = standard_gram(Family::OOdd, 1, 3);
  EXPECT_EQ(o.N, 3);
  EXPECT_EQ(o.gram, Mat(field_of_order(3), 3, 3, {1, 0, 0, 0, 0, 1, 0, 1, 0}));
  EXPECT_EQ(least_nonsquare(field_of_order(3)), 2u);
  EXPECT_EQ(least_nonsquare(field_of_order(7)), 3u);
  for (auto [f, q] : std::vector<std::pair<Family, unsigned>>{{Family::OPlus, 2}, {Family::OOdd, 4}, {Family::GL, 3}}) {
    try {
      standard_gram(f, 1, q);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::IncompatibleFamily);
    }
  }
}

TEST(StandardGram, LevelsNest) {
  for (auto [f, q] : std::vector<std::pair<Family, unsigned>>{
           {Family::U, 2}, {Family::U, 3}, {Family::Sp, 2}, {Family::Sp, 3}, {Family::OPlus, 3}, {Family::OMinus, 5},
           {Family::OOdd, 3}}) {
    for (int n = f == Family::OMinus ? 1 : 0; n < 4; ++n) {
      const FormSpec a = standard_gram(f, n, q), b = standard_gram(f, n + 1, q);
      EXPECT_EQ(b.N - a.N, level_step(f));
      EXPECT_EQ(block_restrict(b.gram, a.N), a.gram);
      for (int i = 0; i < a.N; ++i)
        for (int j = a.N; j < b.N; ++j) EXPECT_EQ(b.gram(i, j), 0u);
    }
  }
}

TEST(Isometry, Examples) {
  const Field& f3 = field_of_order(3);
  const FormSpec sp3 = standard_gram(Family::Sp, 1, 3);
  EXPECT_TRUE(is_isometry(Mat::identity(f3, 2), sp3));
  EXPECT_TRUE(is_isometry(mat_scale(Mat::identity(f3, 2), f3.neg(1)), sp3));
  // Over F_2 every invertible 2 x 2 matrix preserves the alternating form.
  const Field& f2 = field_of_order(2);
  const FormSpec sp2 = standard_gram(Family::Sp, 1, 2);
  EXPECT_TRUE(is_isometry(Mat(f2, 2, 2, {1, 1, 0, 1}), sp2));
  EXPECT_FALSE(is_isometry(Mat(f3, 2, 2, {1, 0, 0, 2}), sp3));
}

TEST(Enumerate, OrdersMatchFormula) {
  const std::vector<std::tuple<Family, unsigned, int>> cases = {
      {Family::U, 2, 1}, {Family::U, 2, 2}, {Family::U, 2, 3}, {Family::U, 3, 2}, {Family::Sp, 2, 1},
      {Family::Sp, 2, 2}, {Family::Sp, 3, 1}, {Family::OOdd, 3, 0}, {Family::OOdd, 3, 1},
      {Family::OPlus, 3, 1}, {Family::OMinus, 3, 1}, {Family::OPlus, 3, 2}, {Family::OMinus, 3, 2}};
  for (const auto& [f, q, n] : cases) {
    const GroupTable g = enumerate_isometry_group(standard_gram(f, n, q));
    EXPECT_EQ(BigInt(g.size()), order_formula(f, q, n)) << family_name(f) << q << " " << n;
    EXPECT_EQ(group_order(f, q, n), order_formula(f, q, n));
  }
  EXPECT_EQ(order_formula(Family::Sp, 2, 1), 6);
  EXPECT_EQ(order_formula(Family::U, 2, 2), 18);
  EXPECT_EQ(order_formula(Family::OOdd, 3, 1), 48);
}

TEST(Enumerate, MatchesBruteForceScan) {
  // O_3(F_3) and Sp_2(F_3) by filtering all of GL_N(F_p).
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::OOdd, 1}, {Family::Sp, 1}, {Family::OPlus, 1}}) {
    const FormSpec form = standard_gram(f, n, 3);
    const GroupTable g = enumerate_isometry_group(form);
    std::size_t hits = 0;
    for (const auto& rows : oracle::gl_mod(3, form.N)) {
      Mat m(*form.F, form.N, form.N);
      for (int i = 0; i < form.N; ++i)
        for (int j = 0; j < form.N; ++j) m.at(i, j) = rows[i][j];
      if (!is_isometry(m, form)) continue;
      ++hits;
      EXPECT_TRUE(g.find(m).has_value());
    }
    EXPECT_EQ(hits, g.size());
  }
}

TEST(Enumerate, ClosedUnderProductAndInverse) {
  std::mt19937_64 rng(11);
  for (auto [f, q, n] : std::vector<std::tuple<Family, unsigned, int>>{
           {Family::U, 2, 3}, {Family::Sp, 2, 2}, {Family::OOdd, 3, 1}, {Family::OMinus, 3, 2}}) {
    const FormSpec form = standard_gram(f, n, q);
    const GroupTable g = enumerate_isometry_group(form);
    for (int it = 0; it < 2000; ++it) {
      const Mat a = g.element(rng() % g.size()), b = g.element(rng() % g.size());
      EXPECT_TRUE(g.find(mat_mul(a, b)).has_value());
      EXPECT_TRUE(g.find(mat_inv(a)).has_value());
    }
  }
}

TEST(Enumerate, LimitExceeded) {
  EnumerateOptions o;
  o.limit = 100;
  try {
    enumerate_isometry_group(standard_gram(Family::Sp, 2, 2), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LimitExceeded);
  }
}

TEST(Hyperbolic, Completion) {
  const FormSpec sp = standard_gram(Family::Sp, 1, 2);
  EXPECT_EQ(hyperbolic_complete({1, 0}, sp), (std::vector<Scalar>{0, 1}));

  std::mt19937_64 rng(12);
  for (auto [f, q, n] : std::vector<std::tuple<Family, unsigned, int>>{
           {Family::U, 2, 2}, {Family::U, 3, 3}, {Family::Sp, 3, 2}, {Family::OOdd, 3, 1}, {Family::OPlus, 5, 2},
           {Family::OMinus, 3, 2}}) {
    const FormSpec form = standard_gram(f, n, q);
    int tried = 0;
    for (int it = 0; it < 3000 && tried < 50; ++it) {
      const auto u = random_vector(*form.F, form.N, rng);
      if (std::all_of(u.begin(), u.end(), [](Scalar x) { return x == 0; }) || form.eval(u, u) != 0) continue;
      ++tried;
      const auto w = hyperbolic_complete(u, form);
      EXPECT_EQ(form.eval(u, w), 1u);
      EXPECT_EQ(form.eval(w, w), 0u);
    }
    EXPECT_GT(tried, 0);
  }

  const FormSpec o = standard_gram(Family::OOdd, 1, 3);
  try {
    hyperbolic_complete({1, 0, 0}, o);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotIsotropic);
  }
  try {
    hyperbolic_complete({0, 0, 0}, o);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroVector);
  }
}

TEST(Witt, Examples) {
  const FormSpec sp = standard_gram(Family::Sp, 2, 3);
  EXPECT_EQ(witt_decompose(sp, Subspace::full(*sp.F, 4)), (WittDecomposition{0, 2, 0, WittClass::Zero}));
  const Field& f3 = field_of_order(3);
  const FormSpec d1 = form_from_gram(FormKind::Symmetric, Mat(f3, 1, 1, {1}), 3);
  EXPECT_EQ(witt_decompose(d1, Subspace::full(f3, 1)), (WittDecomposition{0, 0, 1, WittClass::One}));
  // diag(1, -m) with m = 2 the least non-square: x^2 + y^2 has no nonzero zero over F_3.
  const FormSpec d2 = form_from_gram(FormKind::Symmetric, Mat(f3, 2, 2, {1, 0, 0, f3.neg(2)}), 3);
  int zeros = 0;
  oracle::each_vector(3, 2, [&](const oracle::Vec& v) { zeros += (v[0] * v[0] + v[1] * v[1]) % 3 == 0; });
  EXPECT_EQ(zeros, 1);
  EXPECT_EQ(witt_decompose(d2, Subspace::full(f3, 2)), (WittDecomposition{0, 0, 2, WittClass::Omega}));
  const Subspace line = Subspace::span(Mat(f3, 1, 3, {0, 1, 0}));
  EXPECT_EQ(witt_decompose(standard_gram(Family::OOdd, 1, 3), line), (WittDecomposition{1, 0, 0, WittClass::Zero}));
}

TEST(Witt, InvariantUnderIsometriesAndDiscriminantRoute) {
  std::mt19937_64 rng(13);
  for (auto [f, q, n] : std::vector<std::tuple<Family, unsigned, int>>{
           {Family::U, 2, 3}, {Family::Sp, 2, 2}, {Family::Sp, 3, 2}, {Family::OOdd, 3, 2}, {Family::OPlus, 3, 2},
           {Family::OMinus, 3, 2}}) {
    const FormSpec form = standard_gram(f, n, q);
    const GroupTable g = enumerate_isometry_group(form);
    for (int it = 0; it < 40; ++it) {
      const Subspace s = random_subspace(*form.F, form.N, rng);
      const WittDecomposition w = witt_decompose(form, s);
      EXPECT_EQ(w.radical_dim + 2 * w.polar_rank + w.germ_dim, s.dim());
      EXPECT_LE(w.germ_dim, form.kind == FormKind::Symmetric ? 2 : form.hermitian() ? 1 : 0);
      EXPECT_EQ(witt_invariants_by_discriminant(form, s), w);
      EXPECT_EQ(orthogonal(form, s).dim(), form.N - s.dim());
      for (int k = 0; k < 100; ++k)
        EXPECT_EQ(witt_decompose(form, subspace_image(g.element(rng() % g.size()), s)), w);
    }
  }
}

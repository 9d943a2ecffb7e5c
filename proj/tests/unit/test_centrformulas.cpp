#include <gtest/gtest.h>

#include <random>

#include "stablecentres/centrformulas.hpp"
#include "stablecentres/errors.hpp"
#include "stablecentres/forms.hpp"
#include "stablecentres/groups.hpp"

using namespace stc;

namespace {

Multipartition mp(std::initializer_list<std::pair<std::string, std::vector<int>>> e) {
  Multipartition m;
  for (const auto& [k, p] : e) m.set(k, Partition(p));
  return m;
}

// Brute-force centralizer ratios |C_{G_{n+1}}(embed g)| / |C_{G_n}(g)| per class of G_n.
struct RatioCase {
  Multipartition type;
  BigRational ratio;
  Mat rep;
};
std::vector<RatioCase> brute_ratios(Family f, unsigned q, int n) {
  const ClassTable a = load_or_build(f, q, n), b = load_or_build(f, q, n + 1);
  std::vector<RatioCase> out;
  for (const auto& [x, y] : stable_match(a, b))
    out.push_back({a.classes[x].type, BigRational(b.classes[y].centralizer, a.classes[x].centralizer), a.rep(x)});
  return out;
}

}  // namespace

TEST(GL, Examples) {
  EXPECT_EQ(gl_centralizer_size(mp({{"t+1", {1, 1}}}), 2), 6);
  EXPECT_EQ(gl_centralizer_size(mp({{"t+1", {2}}}), 2), 2);
  EXPECT_EQ(gl_centralizer_size(mp({{"t^2+t+1", {1}}}), 2), 3);
  EXPECT_EQ(gl_centralizer_size(Multipartition{}, 5), 1);
  EXPECT_EQ(gl_centralizer_ratio(mp({{"t+1", {2}}}), 0, 2), 1);
  EXPECT_EQ(gl_centralizer_ratio(mp({{"t+1", {2}}}), 1, 2), 4);
  EXPECT_EQ(gl_centralizer_size(mp({{"t+1", {2, 1}}}), 2), 8);
  for (unsigned q : {2u, 3u, 4u})
    for (int n = 1; n <= 4; ++n) {
      const std::string k = t_minus_1_key(field_of_order(q).p());
      EXPECT_EQ(gl_centralizer_ratio(from_modified({}, n, k).value(), 1, q),
                BigRational(group_order(Family::GL, q, n + 1), group_order(Family::GL, q, n)));
    }
}

TEST(GL, MatchesBruteForce) {
  for (auto [q, n] : std::vector<std::pair<unsigned, int>>{{2, 2}, {3, 2}, {2, 3}, {4, 2}}) {
    auto g = std::make_shared<const GroupTable>(build_group(Family::GL, q, n));
    const ClassTable t = conjugacy_classes(g);
    for (std::size_t c = 0; c < t.count(); ++c)
      EXPECT_EQ(gl_centralizer_size(t.classes[c].type, q), BigInt(centralizer_size(*g, t.rep(c))));
  }
}

TEST(GL, RatioSelfConsistency) {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 100; ++it) {
    const unsigned q = 2 + rng() % 3;
    const Field& f = field_of_order(q);
    const int n = 1 + rng() % 4;
    Mat g(f, n, n);
    do {
      for (auto& x : g.data()) x = static_cast<Scalar>(rng() % q);
    } while (det(g) == 0);
    const Multipartition mu = type_of(g);
    const int d = rng() % 4;
    EXPECT_EQ(gl_centralizer_ratio(mu, d, q) * gl_centralizer_size(mu, q),
              BigRational(gl_centralizer_size(union_t_minus_1(mu, d, t_minus_1_key(f.p())), q)));
  }
  for (const auto& c : brute_ratios(Family::GL, 2, 2)) EXPECT_EQ(gl_centralizer_ratio(c.type, 1, 2), c.ratio);
}

TEST(Unitary, Examples) {
  EXPECT_EQ(unitary_centralizer_size(mp({{"t+1", {1, 1}}}), 2), 18);
  EXPECT_EQ(unitary_centralizer_size(mp({{"t+1", {1}}}), 2), 3);
  EXPECT_EQ(unitary_ratio(mp({{"t+1", {1}}}), 0, 2), 1);
  // Every linear polynomial over GF(4) is self-star; over GF(9) the roots of order 8 are not.
  for (Scalar a = 1; a < 4; ++a) EXPECT_EQ(star(PolyFq::linear(field_of_order(4), a), true), PolyFq::linear(field_of_order(4), a));
  const Field& f9 = field_of_order(9);
  int asymmetric = 0;
  for (Scalar a = 1; a < 9; ++a) {
    const PolyFq r = PolyFq::linear(f9, a);
    if (star(r, true) == r) continue;
    ++asymmetric;
    try {
      unitary_centralizer_size(mp({{r.to_string(), {1}}}), 3);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::StarAsymmetric);
    }
  }
  EXPECT_EQ(asymmetric, 4);
}

TEST(Unitary, MatchesBruteForce) {
  for (auto [q, n] : std::vector<std::pair<unsigned, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 2}}) {
    auto g = std::make_shared<const GroupTable>(build_group(Family::U, q, n));
    const ClassTable t = conjugacy_classes(g);
    bool saw_pair = false;
    for (std::size_t c = 0; c < t.count(); ++c) {
      EXPECT_EQ(unitary_centralizer_size(t.classes[c].type, q), BigInt(centralizer_size(*g, t.rep(c))));
      for (const auto& [r, p] : t.classes[c].type.entries())
        saw_pair |= star(poly_parse(*g->F, r), true).to_string() != r;
    }
    if (q == 3) EXPECT_TRUE(saw_pair);
  }
}

TEST(Ratios, Examples) {
  for (unsigned q : {2u, 3u}) {
    const std::string k = t_minus_1_key(q);
    EXPECT_EQ(unitary_ratio(mp({{t_minus_1_key(field_of_order(q * q).p()), {1}}}), 0, q), 1);
    EXPECT_EQ(sp_ratio(mp({{k, {1, 1}}}), 0, q), 1);
  }
  EXPECT_EQ(sp_ratio(mp({{"t+1", {1, 1}}}), 2, 2), 120);
  EXPECT_EQ(BigRational(group_order(Family::Sp, 2, 2), group_order(Family::Sp, 2, 1)), 120);
  try {
    sp_ratio(mp({{"t+1", {1, 1}}}), 1, 2);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadParity);
  }
  const auto o = orth_ratio(mp({{"t+2", {1, 1, 1}}}), 2, 3, WittClass::Zero);
  const BigRational want(BigInt(103680), BigInt(48));
  EXPECT_EQ(BigRational(group_order(Family::OOdd, 3, 2), group_order(Family::OOdd, 3, 1)), want);
  // Odd-dimensional orthogonal orders do not see the germ, so both odd eps1 agree here.
  ASSERT_EQ(o.size(), 2u);
  for (const auto& [e1, v] : o) EXPECT_EQ(v, want);
  for (const auto& [e1, v] : orth_ratio(mp({{"t+2", {1}}}), 0, 3, WittClass::Zero)) EXPECT_EQ(v, 1);
}

TEST(Ratios, OrthogonalOrdersAgreeWithForms) {
  for (unsigned q : {3u, 5u})
    for (auto f : {Family::OOdd, Family::OPlus, Family::OMinus})
      for (int n = f == Family::OMinus ? 1 : 0; n <= 3; ++n) {
        const FormSpec form = standard_gram(f, n, q);
        const WittClass germ = witt_decompose(form, Subspace::full(*form.F, form.N)).germ;
        EXPECT_EQ(orthogonal_order(form.N, germ, q), group_order(f, q, n)) << family_name(f) << n;
      }
  EXPECT_EQ(orthogonal_order(0, WittClass::Zero, 3), 1);
}

TEST(Ratios, MatchBruteForce) {
  for (auto [q, n] : std::vector<std::pair<unsigned, int>>{{2, 1}, {2, 2}, {3, 1}})
    for (const auto& c : brute_ratios(Family::U, q, n)) EXPECT_EQ(unitary_ratio(c.type, 1, q), c.ratio);
  for (auto [q, n] : std::vector<std::pair<unsigned, int>>{{2, 1}, {3, 1}})
    for (const auto& c : brute_ratios(Family::Sp, q, n)) EXPECT_EQ(sp_ratio(c.type, 2, q), c.ratio);
  for (auto [f, n] : std::vector<std::pair<Family, int>>{
           {Family::OOdd, 0}, {Family::OOdd, 1}, {Family::OPlus, 1}, {Family::OMinus, 1}}) {
    const FormSpec form = standard_gram(f, n, 3);
    for (const auto& c : brute_ratios(f, 3, n)) {
      // eps1 is the germ of the form on ker(g - 1), whose radical is ker(g - 1) meet im(g - 1).
      const WittClass e1 = form.N ? witt_decompose(form, kernel(mat_sub(c.rep, Mat::identity(*form.F, form.N)))).germ
                                  : WittClass::Zero;
      const auto r = orth_ratio(c.type, 2, 3, WittClass::Zero);
      ASSERT_TRUE(r.count(e1)) << family_name(f) << " " << c.type.to_string();
      EXPECT_EQ(r.at(e1), c.ratio) << family_name(f) << " " << c.type.to_string();
    }
  }
}

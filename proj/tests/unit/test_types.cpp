#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracle.hpp"
#include "stablecentres/errors.hpp"
#include "stablecentres/groups.hpp"
#include "stablecentres/matfq.hpp"
#include "stablecentres/types.hpp"

using namespace stc;

namespace {

Multipartition mp(std::initializer_list<std::pair<std::string, std::vector<int>>> e) {
  Multipartition m;
  for (const auto& [k, p] : e) m.set(k, Partition(p));
  return m;
}

// Number of x in F_p^k with sum a_i x_i^2 = c, for every c.
std::vector<long> value_profile(const std::vector<int>& diag, int p) {
  std::vector<long> out(p, 0);
  oracle::each_vector(p, static_cast<int>(diag.size()), [&](const oracle::Vec& x) {
    long s = 0;
    for (std::size_t i = 0; i < diag.size(); ++i) s += long(diag[i]) * x[i] * x[i];
    ++out[oracle::mod(s, p)];
  });
  return out;
}

bool isotropic(const std::vector<int>& diag, int p) { return value_profile(diag, p)[0] > 1; }

// Diagonal representative of each Witt class over F_p, found by search.
std::vector<int> representative(WittClass w, int p) {
  int nonsq = 0;
  for (int a = 2; a < p && !nonsq; ++a) {
    bool sq = false;
    for (int x = 1; x < p; ++x) sq |= (x * x) % p == a;
    if (!sq) nonsq = a;
  }
  switch (w) {
    case WittClass::Zero: return {};
    case WittClass::One: return {1};
    case WittClass::Delta: return {nonsq};
    case WittClass::Omega:
      for (int b = 1; b < p; ++b)
        if (!isotropic({1, b}, p)) return {1, b};
  }
  return {};
}

// Classify a diagonal form by comparing value counts with representatives padded by hyperbolic planes.
WittClass classify(const std::vector<int>& diag, int p) {
  const auto target = value_profile(diag, p);
  for (WittClass w : {WittClass::Zero, WittClass::One, WittClass::Delta, WittClass::Omega}) {
    auto r = representative(w, p);
    if ((r.size() - diag.size()) % 2) continue;
    while (r.size() < diag.size()) {
      r.push_back(1);
      r.push_back(p - 1);
    }
    if (r.size() == diag.size() && value_profile(r, p) == target) return w;
  }
  ADD_FAILURE() << "unclassified form";
  return WittClass::Zero;
}

}  // namespace

TEST(Partition, Stats) {
  const Partition a({3, 1, 1});
  EXPECT_EQ(a.size(), 5);
  EXPECT_EQ(a.length(), 3);
  EXPECT_EQ(a.n_stat(), 3);
  EXPECT_EQ(a.mult(1), 2);
  const Partition e;
  EXPECT_EQ(e.size(), 0);
  EXPECT_EQ(e.length(), 0);
  EXPECT_EQ(e.n_stat(), 0);
  const Partition b({2, 2});
  EXPECT_EQ(b.mult(2), 2);
  EXPECT_EQ(b.n_stat(), 2);
  EXPECT_EQ(Partition({1, 3, 0}).parts, (std::vector<int>{3, 1}));
  EXPECT_EQ(Partition({3, 1}).conjugate(), Partition({2, 1, 1}));
}

TEST(Partition, NStatIsSumOfConjugateBinomials) {
  // n(lambda) = sum over columns of C(lambda'_j, 2).
  std::mt19937_64 rng(1);
  for (int it = 0; it < 500; ++it) {
    std::vector<int> v(1 + rng() % 6);
    for (auto& x : v) x = 1 + static_cast<int>(rng() % 5);
    const Partition p(v);
    long s = 0;
    for (int c : p.conjugate().parts) s += long(c) * (c - 1) / 2;
    EXPECT_EQ(p.n_stat(), s);
    EXPECT_EQ(p.conjugate().conjugate(), p);
  }
}

TEST(Modified, Examples) {
  const std::string t3 = t_minus_1_key(3);
  EXPECT_EQ(t3, "t+2");
  EXPECT_EQ(t_minus_1_key(2), "t+1");
  EXPECT_TRUE(to_modified(mp({{t3, {1, 1, 1, 1}}}), t3).empty());
  EXPECT_EQ(to_modified(mp({{t3, {3, 1, 1}}, {"t^2+1", {2, 1}}}), t3), mp({{t3, {2}}, {"t^2+1", {2, 1}}}));
  EXPECT_EQ(to_modified(mp({{t3, {2}}}), t3), mp({{t3, {1}}}));

  EXPECT_EQ(from_modified(Multipartition{}, 3, t3), mp({{t3, {1, 1, 1}}}));
  EXPECT_FALSE(from_modified(mp({{t3, {1}}}), 1, t3).has_value());
  EXPECT_EQ(from_modified(mp({{t3, {1}}}), 2, t3), mp({{t3, {2}}}));
  EXPECT_EQ(from_modified(Multipartition{}, 0, t3), Multipartition{});
}

TEST(Modified, UnionExamples) {
  const std::string k = t_minus_1_key(2);
  EXPECT_EQ(union_t_minus_1(Multipartition{}, 0, k), Multipartition{});
  EXPECT_EQ(union_t_minus_1(Multipartition{}, 2, k), mp({{k, {1, 1}}}));
  EXPECT_EQ(union_t_minus_1(mp({{k, {2}}, {"t^2+t+1", {1}}}), 1, k), mp({{k, {2, 1}}, {"t^2+t+1", {1}}}));
}

TEST(Modified, RoundTripOnMatrixTypes) {
  std::mt19937_64 rng(2);
  for (unsigned q : {2u, 3u})
    for (int n = 1; n <= 4; ++n) {
      const Field& f = field_of_order(q);
      const std::string k = t_minus_1_key(q);
      for (int it = 0; it < 400; ++it) {
        Mat g(f, n, n);
        do {
          for (auto& x : g.data()) x = static_cast<Scalar>(rng() % q);
        } while (det(g) == 0);
        const Multipartition mu = type_of(g);
        const Multipartition nu = to_modified(mu, k);
        EXPECT_EQ(from_modified(nu, n, k), mu);
        for (int d = 0; d <= 3; ++d) {
          EXPECT_EQ(to_modified(union_t_minus_1(mu, d, k), k), nu);
          EXPECT_EQ(type_of(block_embed(g, d)), union_t_minus_1(mu, d, k));
        }
      }
    }
}

TEST(Witt, Examples) {
  for (unsigned q : {3u, 5u, 7u, 9u}) {
    EXPECT_EQ(witt_add(WittClass::Omega, WittClass::Omega, q), WittClass::Zero);
    for (WittClass x : {WittClass::Zero, WittClass::One, WittClass::Delta, WittClass::Omega})
      EXPECT_EQ(witt_add(WittClass::Zero, x, q), x);
  }
  EXPECT_EQ(witt_add(WittClass::One, WittClass::One, 3), WittClass::Omega);
  EXPECT_EQ(witt_add(WittClass::One, WittClass::One, 5), WittClass::Zero);
}

TEST(Witt, TableMatchesDiagonalForms) {
  const std::vector<WittClass> all = {WittClass::Zero, WittClass::One, WittClass::Delta, WittClass::Omega};
  for (int p : {3, 5, 7, 11, 13}) {
    for (WittClass a : all) EXPECT_EQ(classify(representative(a, p), p), a);
    for (WittClass a : all)
      for (WittClass b : all) {
        auto form = representative(a, p);
        const auto rb = representative(b, p);
        form.insert(form.end(), rb.begin(), rb.end());
        EXPECT_EQ(witt_add(a, b, p), classify(form, p)) << p << " " << witt_name(a) << " " << witt_name(b);
      }
  }
}

TEST(Witt, GroupStructure) {
  const std::vector<WittClass> all = {WittClass::Zero, WittClass::One, WittClass::Delta, WittClass::Omega};
  for (unsigned q : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u}) {
    int max_order = 1;
    for (WittClass a : all) {
      bool has_inverse = false;
      for (WittClass b : all) {
        EXPECT_EQ(witt_add(a, b, q), witt_add(b, a, q));
        has_inverse |= witt_add(a, b, q) == WittClass::Zero;
        for (WittClass c : all) EXPECT_EQ(witt_add(witt_add(a, b, q), c, q), witt_add(a, witt_add(b, c, q), q));
      }
      EXPECT_TRUE(has_inverse);
      int order = 1;
      for (WittClass x = a; x != WittClass::Zero; x = witt_add(x, a, q)) ++order;
      max_order = std::max(max_order, order);
    }
    EXPECT_EQ(max_order, q % 4 == 1 ? 2 : 4) << q;
  }
}

TEST(Label, Examples) {
  StableLabel id{Family::GL, 2, {}, 0};
  EXPECT_EQ(label_print(id), "gl,q=2;");
  EXPECT_EQ(label_parse("gl,q=2;"), id);

  const std::string k2 = t_minus_1_key(2);
  StableLabel tv{Family::GL, 2, to_modified(mp({{k2, {2}}}), k2), 0};
  EXPECT_EQ(label_print(tv), "gl,q=2;t+1:(1)");

  const StableLabel s = label_parse("sp,q=3;t+2:(1,1)#1");
  EXPECT_EQ(s.family, Family::Sp);
  EXPECT_EQ(s.q, 3u);
  EXPECT_EQ(s.index, 1);
  EXPECT_EQ(s.nu, mp({{"t+2", {1, 1}}}));
  EXPECT_EQ(label_print(s), "sp,q=3;t+2:(1,1)#1");

  const StableLabel two = label_parse("u,q=2;t+1:(2,1);t^2+t+1:(1)");
  EXPECT_EQ(label_print(two), "u,q=2;t+1:(2,1);t^2+t+1:(1)");

  for (const char* bad : {"", "gl", "gl,q=2", "xx,q=2;", "gl,q=2;t+1:(1", "gl,q=2;t+1:(0)", "gl,q=2;#x"}) {
    try {
      label_parse(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}

TEST(Label, RoundTripOnGroupClasses) {
  const std::vector<std::tuple<Family, unsigned, int>> groups = {
      {Family::GL, 2, 3}, {Family::GL, 3, 2}, {Family::U, 2, 2}, {Family::Sp, 2, 2}, {Family::Sp, 3, 1},
      {Family::OPlus, 3, 1}, {Family::OPlus, 3, 2}, {Family::OMinus, 3, 1}, {Family::OOdd, 3, 1}};
  for (const auto& [f, q, n] : groups) {
    const ClassTable t = load_or_build(f, q, n);
    for (const auto& c : t.classes) {
      EXPECT_EQ(label_parse(label_print(c.label)), c.label);
      EXPECT_EQ(c.label.family, f);
      if (f == Family::GL) EXPECT_EQ(c.label.index, 0);
    }
  }
}

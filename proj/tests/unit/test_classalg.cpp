#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "stablecentres/classalg.hpp"
#include "stablecentres/errors.hpp"

using namespace stc;

namespace {

std::shared_ptr<CentreContext> ctx(Family f, unsigned q, int n) {
  return table_context(std::make_shared<const ClassTable>(load_or_build(f, q, n)));
}

StableLabel gl_label(unsigned q, std::initializer_list<std::pair<std::string, std::vector<int>>> e) {
  StableLabel l{Family::GL, q, {}, 0};
  for (const auto& [k, p] : e) l.nu.set(k, Partition(p));
  return l;
}

// Pairs (x, y) in alpha x beta with x y = z, by scanning members.
BigInt brute_coefficient(const CentreContext& c, std::size_t alpha, std::size_t beta, const Mat& z) {
  const auto a = c.members(alpha), b = c.members(beta);
  long n = 0;
  for (const auto& x : a)
    for (const auto& y : b) n += mat_mul(x, y) == z;
  return n;
}

const std::vector<std::tuple<Family, unsigned, int>> kGroups = {
    {Family::GL, 2, 2}, {Family::GL, 3, 2}, {Family::Sp, 3, 1}, {Family::U, 2, 2}, {Family::GL, 2, 3},
    {Family::OOdd, 3, 1}};

}  // namespace

TEST(ClassSum, Examples) {
  for (int n = 0; n <= 3; ++n) {
    auto c = ctx(Family::GL, 2, n);
    const CentreVector id = class_sum(*c, gl_label(2, {}));
    ASSERT_EQ(id.coeffs.size(), 1u);
    EXPECT_EQ(c->class_size(id.coeffs.begin()->first), 1);
    EXPECT_EQ(id.coeffs.begin()->second, 1);
  }
  const StableLabel tv = label_parse("gl,q=2;t+1:(1)");
  EXPECT_TRUE(class_sum(*ctx(Family::GL, 2, 1), tv).is_zero());
  auto c2 = ctx(Family::GL, 2, 2);
  const CentreVector t = class_sum(*c2, tv);
  ASSERT_EQ(t.coeffs.size(), 1u);
  EXPECT_EQ(c2->class_size(t.coeffs.begin()->first), 3);
  try {
    class_sum(*c2, label_parse("sp,q=2;"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownLabel);
  }
}

TEST(ClassSum, RejectsNonCanonicalKeys) {
  auto c = ctx(Family::GL, 2, 2);
  for (const char* key : {"t+5", "t^2+1", "t", "t^2+t"}) {
    try {
      class_sum(*c, label_parse(std::string("gl,q=2;") + key + ":(1)"));
      ADD_FAILURE() << key;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnknownLabel) << key;
    }
  }
  for (Family f : {Family::GL, Family::U, Family::Sp}) {
    auto d = ctx(f, 2, 2);
    for (const auto& cl : d->classes()) EXPECT_NO_THROW(validate_label(*d, cl.label)) << label_print(cl.label);
  }
}

TEST(Product, TransvectionSquaredInGL22) {
  auto c = ctx(Family::GL, 2, 2);
  const StableLabel tv = label_parse("gl,q=2;t+1:(1)"), id = gl_label(2, {}),
                    w = gl_label(2, {{"t^2+t+1", {1}}});
  const auto a = *c->find_label(tv);
  const CentreVector p = centre_product(*c, a, a);
  EXPECT_EQ(p.at(*c->find_label(id)), 3);
  EXPECT_EQ(p.at(*c->find_label(w)), 3);
  EXPECT_EQ(p.at(a), 0);
  EXPECT_EQ(structure_constant(*c, tv, tv, id), 3);
  EXPECT_EQ(structure_constant(*ctx(Family::GL, 2, 3), tv, tv, id), 21);

  // Independent count of transvections in GL_3(F_2): matrices g != I with rank(g - I) = 1.
  int count = 0;
  for (const auto& g : oracle::gl_mod(2, 3)) {
    oracle::Matrix d = g;
    for (int i = 0; i < 3; ++i) d[i][i] = oracle::mod(d[i][i] - 1, 2);
    count += oracle::rank_mod(d, 2) == 1;
  }
  EXPECT_EQ(count, 21);
}

TEST(Product, UnitAndIdentityLabel) {
  for (const auto& [f, q, n] : kGroups) {
    auto c = ctx(f, q, n);
    const std::size_t e = *c->find_label(StableLabel{f, q, {}, 0});
    for (std::size_t b = 0; b < c->count(); ++b) {
      const CentreVector p = centre_product(*c, e, b);
      ASSERT_EQ(p.coeffs.size(), 1u);
      EXPECT_EQ(p.at(b), 1);
      EXPECT_EQ(structure_constant(*c, StableLabel{f, q, {}, 0}, c->classes()[b].label, c->classes()[b].label), 1);
    }
  }
}

TEST(Product, MatchesBruteForceAndMass) {
  for (const auto& [f, q, n] : kGroups) {
    auto c = ctx(f, q, n);
    for (std::size_t a = 0; a < c->count(); ++a)
      for (std::size_t b = 0; b < c->count(); ++b) {
        const CentreVector p = centre_product(*c, a, b);
        BigInt mass = 0;
        for (const auto& [g, v] : p.coeffs) mass += v * c->class_size(g);
        EXPECT_EQ(mass, c->class_size(a) * c->class_size(b));
        EXPECT_EQ(p, centre_product(*c, b, a));
        if (c->order() <= 48)
          for (std::size_t g = 0; g < c->count(); ++g)
            EXPECT_EQ(p.at(g), brute_coefficient(*c, a, b, c->classes()[g].rep));
      }
  }
}

TEST(Product, RepresentativeIndependence) {
  std::mt19937_64 rng(21);
  for (const auto& [f, q, n] : kGroups) {
    auto c = ctx(f, q, n);
    for (int it = 0; it < 10; ++it) {
      const std::size_t a = rng() % c->count(), b = rng() % c->count(), g = rng() % c->count();
      const auto mem = c->members(g);
      const BigInt want = centre_product(*c, a, b).at(g);
      for (int k = 0; k < 3; ++k) EXPECT_EQ(product_coefficient(*c, a, b, mem[rng() % mem.size()]), want);
    }
  }
}

TEST(Product, Associativity) {
  std::mt19937_64 rng(22);
  for (const auto& [f, q, n] : kGroups) {
    auto c = ctx(f, q, n);
    auto one = [&](std::size_t x) {
      CentreVector v{c.get(), {}};
      v.add(x, 1);
      return v;
    };
    for (int it = 0; it < 50; ++it) {
      const auto x = one(rng() % c->count()), y = one(rng() % c->count()), z = one(rng() % c->count());
      EXPECT_EQ(centre_product(centre_product(x, y), z), centre_product(x, centre_product(y, z)));
    }
  }
}

TEST(Central, Examples) {
  auto c = ctx(Family::GL, 2, 2);
  for (std::size_t a = 0; a < c->count(); ++a) {
    CentreVector v{c.get(), {}};
    v.add(a, 1);
    EXPECT_TRUE(verify_central(*c, expand(v), 20, 1));
  }
  const Field& f2 = field_of_order(2);
  ElementVector single;
  single[pack(Mat(f2, 2, 2, {1, 1, 0, 1}))] = 1;
  EXPECT_FALSE(verify_central(*c, single, 20, 1));
  auto c3 = ctx(Family::Sp, 3, 1);
  const auto a = centre_product(*c3, 1 % c3->count(), 2 % c3->count());
  EXPECT_TRUE(verify_central(*c3, expand(a), 20, 2));
}

TEST(TypeContext, AgreesWithTables) {
  for (auto [q, n] : std::vector<std::pair<unsigned, int>>{{2, 2}, {2, 3}, {3, 2}, {4, 2}}) {
    auto t = ctx(Family::GL, q, n);
    auto g = gl_type_context(q, n);
    ASSERT_EQ(g->count(), t->count());
    EXPECT_EQ(g->order(), t->order());
    EXPECT_EQ(all_types(field_of_order(q), n).size(), t->count());
    for (std::size_t a = 0; a < t->count(); ++a) {
      const auto ga = *g->find_label(t->classes()[a].label);
      EXPECT_EQ(g->class_size(ga), t->class_size(a));
      EXPECT_EQ(commutant_units(t->classes()[a].rep), t->centralizer(a));
      EXPECT_EQ(type_of(type_representative(field_of_order(q), t->classes()[a].type, n)), t->classes()[a].type);
      for (std::size_t b = 0; b < t->count(); ++b) {
        const auto gb = *g->find_label(t->classes()[b].label);
        const CentreVector pt = centre_product(*t, a, b), pg = centre_product(*g, ga, gb);
        ASSERT_EQ(pt.coeffs.size(), pg.coeffs.size());
        for (const auto& [k, v] : pt.coeffs) EXPECT_EQ(pg.at(*g->find_label(t->classes()[k].label)), v);
      }
    }
  }
}

TEST(TypeContext, ThreadedProductMatches) {
  auto g = gl_type_context(3, 3);
  const auto a = *g->find_label(label_parse("gl,q=3;t+2:(1)"));
  EXPECT_EQ(centre_product(*g, a, a, 1), centre_product(*g, a, a, 3));
}

TEST(Json, ProductFormat) {
  auto c = ctx(Family::GL, 2, 2);
  const StableLabel tv = label_parse("gl,q=2;t+1:(1)");
  const auto a = *c->find_label(tv);
  const std::string j = product_json(*c, tv, tv, centre_product(*c, a, a));
  EXPECT_NE(j.find("\"mu\":\"gl,q=2;t+1:(1)\""), std::string::npos) << j;
  EXPECT_NE(j.find("\"coeff\":\"3\""), std::string::npos) << j;
  EXPECT_NE(j.find("\"n\":2"), std::string::npos) << j;
}

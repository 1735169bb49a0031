#include <gtest/gtest.h>

#include <dblcat/sweeps.hpp>

using namespace dblcat;

namespace {

Profunctor with_identities(Profunctor m) {
  for (int u = 0; u < m.size(); ++u) {
    m.left[static_cast<std::size_t>(m.src.ident(m.x[u]) * m.size() + u)] = u;
    m.right[static_cast<std::size_t>(u * m.tgt.morphism_count() + m.tgt.ident(m.xp[u]))] = u;
  }
  return m;
}

int arrow_alpha(const FinCat& c) {
  for (int a = 0; a < c.morphism_count(); ++a) {
    if (!c.is_identity(a)) return a;
  }
  return -1;
}

// 1 -|-> (0 -a-> 1): m(*,0) = {u}, m(*,1) = {u'} with u.a = u'
Profunctor arrow_m() {
  auto arrow = arrow_cat();
  auto m = with_identities(blank_profunctor(terminal_cat(), arrow, {"u", "u'"}, {0, 0}, {0, 1}));
  m.right[static_cast<std::size_t>(0 * arrow.morphism_count() + arrow_alpha(arrow))] = 1;
  validate_profunctor(m);
  return m;
}

// (0 -a-> 1) -|-> 1: n(0,*) = {v}, n(1,*) = {v'} with a.v' = v
Profunctor arrow_n() {
  auto arrow = arrow_cat();
  auto n = with_identities(blank_profunctor(arrow, terminal_cat(), {"v", "v'"}, {0, 1}, {0, 0}));
  n.left[static_cast<std::size_t>(arrow_alpha(arrow) * n.size() + 1)] = 0;
  validate_profunctor(n);
  return n;
}

}  // namespace

TEST(ProfCompose, DiscreteMiddleIsProduct) {
  auto one = terminal_cat();
  auto m = with_identities(blank_profunctor(one, one, {"u1", "u2"}, {0, 0}, {0, 0}));
  auto n = with_identities(blank_profunctor(one, one, {"v"}, {0}, {0}));
  EXPECT_EQ(prof_compose(m, n).first.size(), 2);
}

TEST(ProfCompose, ArrowMiddleIdentifies) {
  auto [c, table] = prof_compose(arrow_m(), arrow_n());
  EXPECT_EQ(c.size(), 1);
  ASSERT_EQ(table.pairs.size(), 2u);
  EXPECT_EQ(table.class_of_pair[0], table.class_of_pair[1]);
}

TEST(ProfCompose, CoYoneda) {
  for (const auto& c : cat_classes(2, 4)) {
    for (const auto& m : all_profunctors(c, c, 2)) {
      auto rho = canonical_rho(m);
      EXPECT_FALSE(canonical_iso_failure(rho));
      auto lam = canonical_lambda(m);
      EXPECT_FALSE(canonical_iso_failure(lam));
      EXPECT_TRUE(find_prof_iso(vcompose(identity_prof(c), m), m).has_value());
    }
  }
}

TEST(ProfCompose, LambdaOnDiscreteIsIdentity) {
  auto d = discrete_cat(2);
  auto m = with_identities(blank_profunctor(d, d, {"p", "q"}, {0, 1}, {1, 0}));
  auto lam = canonical_lambda(m);
  EXPECT_FALSE(canonical_iso_failure(lam));
  for (int u = 0; u < m.size(); ++u) EXPECT_EQ(lam.forward[u], u);
}

TEST(ProfCompose, AssociatorRoundTrips) {
  long audited = 0;
  for (const auto& c : cat_classes(2, 3)) {
    const auto ps = all_profunctors(c, c, 2);
    for (const auto& m : ps) {
      for (const auto& n : ps) {
        for (const auto& p : ps) {
          auto a = canonical_assoc(m, n, p);
          ASSERT_FALSE(canonical_iso_failure(a));
          for (int u = 0; u < a.source.size(); ++u) EXPECT_EQ(a.backward[a.forward[u]], u);
          ++audited;
        }
      }
    }
  }
  EXPECT_GT(audited, 0);
}

TEST(ProfCompose, RhoOnCompanion) {
  auto arrow = arrow_cat();
  auto f = make_functor(terminal_cat(), arrow, {0}, {arrow.ident(0)});
  auto fs = companion(f);
  auto rho = canonical_rho(fs);
  EXPECT_FALSE(canonical_iso_failure(rho));
  EXPECT_EQ(rho.source.size(), fs.size());
  // f_*(*, y) = Y(f*, y): one element at 0, one at 1
  EXPECT_EQ(fs.at(0, 0).size(), 1u);
  EXPECT_EQ(fs.at(0, 1).size(), 1u);
}

TEST(CatCells, IdentityFamilyIsNatural) {
  auto m = arrow_m();
  auto id = identity_functor(m.src);
  auto id2 = identity_functor(m.tgt);
  EXPECT_FALSE(cat_cell_failure(id, m, m, id2, {0, 1}));
}

TEST(CatCells, BrokenActionSquareIsNotNatural) {
  auto arrow = arrow_cat();
  // m has u.a = u' ; the family swapping positions is rejected, and a family
  // into a profunctor with a different action breaks naturality
  auto m = arrow_m();
  auto n = with_identities(blank_profunctor(terminal_cat(), arrow, {"w", "w'", "w''"}, {0, 0, 0}, {0, 1, 1}));
  n.right[static_cast<std::size_t>(0 * arrow.morphism_count() + arrow_alpha(arrow))] = 2;
  validate_profunctor(n);
  auto id = identity_functor(terminal_cat());
  auto ida = identity_functor(arrow);
  EXPECT_FALSE(cat_cell_failure(id, m, n, ida, {0, 2}));
  auto bad = cat_cell_failure(id, m, n, ida, {0, 1});
  ASSERT_TRUE(bad);
  EXPECT_NE(bad->find("natural"), std::string::npos);
  EXPECT_THROW(make_cell<CatD>(id, m, n, ida, {0, 1}), NotNatural);
}

TEST(CatCells, CompanionUnitIsNatural) {
  for (const auto& x : cat_classes(2, 3)) {
    for (const auto& y : cat_classes(2, 3)) {
      for (const auto& [obj, mor] : functors(x, y)) {
        auto f = make_functor(x, y, obj, mor);
        auto c = companion_data<CatD>(f);
        EXPECT_FALSE(cell_failure(c.eta));
        EXPECT_FALSE(cell_failure(c.eps));
        auto r = check_companion(c);
        EXPECT_TRUE(r.ok()) << r.failures.front();
      }
    }
  }
}

TEST(CatCells, EpsAfterEtaMatchesCompanionData) {
  auto arrow = arrow_cat();
  auto f = make_functor(terminal_cat(), arrow, {1}, {arrow.ident(1)});
  auto c = companion_data<CatD>(f);
  auto v = vcompose(c.eps, c.eta);
  EXPECT_FALSE(cell_failure(v));
  EXPECT_EQ(hcompose(lambda_cell<CatD>(c.fstar), v), rho_cell<CatD>(c.fstar));
}

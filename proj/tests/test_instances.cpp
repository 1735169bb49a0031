#include <gtest/gtest.h>

#include <dblcat/sweeps.hpp>

using namespace dblcat;

namespace {

FinPoset one(const std::string& name) { return make_poset({name}, {}); }

OrderIdeal single_pair(const FinPoset& a, const FinPoset& b) {
  BitMatrix rel(1, 1);
  rel.set(0, 0);
  return make_ideal(a, b, rel);
}

// f_* = {(x,y) | f x <= y} and f^* = {(y,x) | y <= f x}, read off directly.
BitMatrix companion_oracle(const MonotoneMap& f) {
  BitMatrix rel(f.src.size(), f.tgt.size());
  for (int x = 0; x < f.src.size(); ++x) {
    for (int y = 0; y < f.tgt.size(); ++y) rel.set(x, y, f.tgt.le(f(x), y));
  }
  return rel;
}

BitMatrix conjoint_oracle(const MonotoneMap& f) {
  BitMatrix rel(f.tgt.size(), f.src.size());
  for (int y = 0; y < f.tgt.size(); ++y) {
    for (int x = 0; x < f.src.size(); ++x) rel.set(y, x, f.tgt.le(y, f(x)));
  }
  return rel;
}

// right adjoint by join enumeration: f_*(x) = join { y | f^*(y) <= x }
int join_oracle(const LocaleMap& f, int x) {
  int out = f.tgt.bottom;
  for (int y = 0; y < f.tgt.size(); ++y) {
    if (f.src.le(f.inverse[y], x)) out = f.tgt.join(out, y);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// vertical composition

TEST(VerticalCompose, SinglePairsCompose) {
  auto x = one("x"), y = one("y"), z = one("z");
  auto nm = compose(single_pair(y, z), single_pair(x, y));
  EXPECT_TRUE(nm.contains(0, 0));
  EXPECT_EQ(nm.rel.count(), 1);
  EXPECT_EQ(nm.src.names[0], "x");
  EXPECT_EQ(nm.tgt.names[0], "z");
}

TEST(VerticalCompose, PosIdentityLaw) {
  for (int n = 0; n <= 3; ++n) {
    for (const auto& a : poset_classes(n)) {
      for (int k = 0; k <= 2; ++k) {
        for (const auto& b : poset_classes(k)) {
          for (const auto& m : PosD::vmors(a, b)) {
            EXPECT_EQ(compose(m, identity_ideal(a)), m);
            EXPECT_EQ(compose(identity_ideal(b), m), m);
          }
        }
      }
    }
  }
}

TEST(VerticalCompose, LocTwoChainIdentity) {
  auto c2 = chain_frame(2);
  auto ms = meet_maps(c2, c2);
  std::vector<int> id{0, 1};
  ASSERT_NE(std::find(ms.begin(), ms.end(), id), ms.end());
  auto m = make_meet_map(c2, c2, id);
  EXPECT_EQ(compose(m, m), identity_meet_map(c2));
}

// ---------------------------------------------------------------------------
// cells

TEST(Cells, PosReflexive) {
  auto x = one("x"), y = one("y");
  auto m = single_pair(x, y);
  EXPECT_FALSE(pos_cell_failure(identity_map(x), m, m, identity_map(y)));
}

TEST(Cells, PosEmptyCodomainFails) {
  auto x = one("x"), y = one("y");
  auto m = single_pair(x, y);
  auto n = make_ideal(x, y, BitMatrix(1, 1));
  EXPECT_TRUE(pos_cell_failure(identity_map(x), m, n, identity_map(y)));
  EXPECT_THROW(make_cell<PosD>(identity_map(x), m, n, identity_map(y)), ConditionFails);
}

TEST(Cells, LocPointwiseOrder) {
  auto c2 = chain_frame(2);
  auto id = identity_locale_map(c2);
  auto m = identity_meet_map(c2);
  auto n = make_meet_map(c2, c2, {1, 1});
  // n(bottom) = top is not below m(bottom) = bottom
  EXPECT_TRUE(loc_cell_failure(id, m, n, id));
  EXPECT_FALSE(loc_cell_failure(id, n, m, id));
  EXPECT_FALSE(loc_cell_failure(id, m, m, id));
}

TEST(Cells, HorizontalCompositeOfIdentities) {
  auto x = chain_poset(2);
  auto c = id_cell<PosD>(identity_ideal(x));
  EXPECT_EQ(hcompose(c, c), c);
  auto s = sierpinski();
  auto t = id_cell<TopD>(identity_open_map(s));
  EXPECT_EQ(hcompose(t, t), t);
}

TEST(Cells, TopSierpinskiSquare) {
  // p = id on Sierpinski: the square with m(U0) = (U0 u X1)° n X1 from X0 = {0} to X1 = {1}
  auto s = sierpinski();
  auto p = identity_continuous(s);
  EXPECT_FALSE(top_cell_failure(p, identity_open_map(s), identity_open_map(s), p));
  EXPECT_FALSE(top_cell_failure_via_locale(p, identity_open_map(s), identity_open_map(s), p));
}

TEST(Cells, TopDirectAgreesWithLocale) {
  for (int n = 0; n <= 2; ++n) {
    for (const auto& x : all_spaces(n)) {
      for (const auto& y : all_spaces(n)) {
        for (const auto& f : TopD::hmors(x, x)) {
          for (const auto& g : TopD::hmors(y, y)) {
            for (const auto& m : TopD::vmors(x, y)) {
              for (const auto& k : TopD::vmors(x, y)) {
                EXPECT_EQ(top_cell_failure(f, m, k, g).has_value(),
                          top_cell_failure_via_locale(f, m, k, g).has_value());
              }
            }
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// companions and conjoints

TEST(Companions, PosExample) {
  auto a = one("a");
  auto c = chain_poset(2);
  auto f = make_monotone(a, c, {0});
  auto fs = companion(f);
  EXPECT_TRUE(fs.contains(0, 0));
  EXPECT_TRUE(fs.contains(0, 1));
  EXPECT_EQ(fs.rel.count(), 2);
  auto fu = conjoint(f);
  EXPECT_TRUE(fu.contains(0, 0));
  EXPECT_EQ(fu.rel.count(), 1);
}

TEST(Companions, IdentityIsVerticalIdentity) {
  for (int n = 0; n <= 3; ++n) {
    for (const auto& x : poset_classes(n)) {
      EXPECT_EQ(companion(identity_map(x)), identity_ideal(x));
      EXPECT_EQ(conjoint(identity_map(x)), identity_ideal(x));
    }
  }
}

TEST(Companions, PosMatchesFormula) {
  for (int n = 0; n <= 3; ++n) {
    for (int k = 0; k <= 3 - n; ++k) {
      for (const auto& x : poset_classes(n)) {
        for (const auto& y : poset_classes(k)) {
          for (const auto& f : PosD::hmors(x, y)) {
            EXPECT_EQ(companion(f).rel, companion_oracle(f));
            EXPECT_EQ(conjoint(f).rel, conjoint_oracle(f));
          }
        }
      }
    }
  }
}

TEST(Companions, LocRightAdjoint) {
  // f^*: 3-chain -> 2-chain with f^*(mid) = bottom
  auto f = make_locale_map(chain_frame(2), chain_frame(3), {0, 0, 1});
  EXPECT_EQ(f.direct[0], 1);
  EXPECT_EQ(f.direct[1], 2);
  auto id = identity_locale_map(chain_frame(3));
  EXPECT_EQ(id.direct, id.inverse);
}

TEST(Companions, LocGaloisExhaustive) {
  const auto frames = frame_classes(4);
  int maps = 0;
  for (const auto& a : frames) {
    for (const auto& b : frames) {
      for (const auto& h : frame_homs(b, a)) {
        auto f = make_locale_map(a, b, h);
        ++maps;
        for (int x = 0; x < a.size(); ++x) {
          EXPECT_EQ(f.direct[x], join_oracle(f, x));
          for (int y = 0; y < b.size(); ++y) EXPECT_EQ(a.le(f.inverse[y], x), b.le(y, f.direct[x]));
        }
      }
    }
  }
  EXPECT_GT(maps, 20);
}

TEST(Companions, CatConjointOfSourcePoint) {
  auto arrow = arrow_cat();
  auto f = make_functor(terminal_cat(), arrow, {0}, {arrow.ident(0)});
  auto fu = conjoint(f);
  EXPECT_EQ(fu.at(0, 0).size(), 1u);
  EXPECT_EQ(fu.at(1, 0).size(), 0u);
}

TEST(Companions, LawsOnAllSmallMaps) {
  for (int n = 0; n <= 3; ++n) {
    for (int k = 0; k <= 3; ++k) {
      for (const auto& x : poset_classes(n)) {
        for (const auto& y : poset_classes(k)) {
          auto r = validate_framed<PosD>(PosD::hmors(x, y));
          EXPECT_TRUE(r.ok()) << r.failures.front();
        }
      }
    }
  }
  for (auto d : {0, 1, 2}) {
    auto x = chain_frame(d + 1);
    auto r = validate_framed<LocD>({identity_locale_map(x)});
    EXPECT_TRUE(r.ok());
  }
  auto c = arrow_cat();
  auto r = validate_framed<CatD>({identity_functor(c)});
  EXPECT_TRUE(r.ok());
}

TEST(Companions, DroppedPairBreaksCompanionData) {
  auto c = chain_poset(2);
  auto f = identity_map(c);
  auto data = companion_data<PosD>(f);
  BitMatrix rel = data.fstar.rel;
  rel.set(0, 1, false);
  data.fstar.rel = rel;
  data.eta.right = data.fstar;
  data.eps.left = data.fstar;
  EXPECT_FALSE(check_companion(data).ok());
}

// ---------------------------------------------------------------------------
// zero objects and validators

TEST(Zero, Objects) {
  EXPECT_EQ(PosD::zero().size(), 0);
  EXPECT_EQ(PosD::vmors(PosD::zero(), chain_poset(2)).size(), 1u);
  EXPECT_EQ(PosD::vmors(PosD::zero(), chain_poset(2)).front().rel.count(), 0);
  auto z = LocD::zero();
  EXPECT_EQ(z.size(), 1);
  auto ms = LocD::vmors(z, chain_frame(3));
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms.front().map[0], chain_frame(3).top);
  auto e = TopD::zero();
  EXPECT_EQ(e.size(), 0);
  EXPECT_EQ(e.opens.size(), 1u);
}

TEST(Validators, IdealMissingUpwardClosure) {
  auto c = chain_poset(2);
  BitMatrix good(2, 2);
  good.set(0, 1);
  EXPECT_NO_THROW(make_ideal(c, c, good));
  BitMatrix bad(2, 2);
  bad.set(1, 0);  // (top, bottom) without its closure
  EXPECT_THROW(make_ideal(c, c, bad), LawViolation);
}

TEST(Validators, OpensMissingEmpty) { EXPECT_THROW(make_space({"0", "1"}, {1, 3}), LawViolation); }

TEST(Validators, MonotoneMapsPass) {
  for (int n = 0; n <= 3; ++n) {
    for (int k = 0; k <= 3; ++k) {
      for (const auto& x : poset_classes(n)) {
        for (const auto& y : poset_classes(k)) {
          for (const auto& m : monotone_maps(x, y)) EXPECT_FALSE(monotone_failure(x, y, m));
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// open lattices

TEST(OpenLattice, Sierpinski) {
  auto fr = open_lattice(sierpinski());
  EXPECT_TRUE(find_frame_iso(fr, chain_frame(3)).has_value());
}

TEST(OpenLattice, DiscreteAndEmpty) {
  auto d = open_lattice(discrete_space(2));
  EXPECT_EQ(d.size(), 4);
  EXPECT_TRUE(find_frame_iso(d, downset_frame(discrete_poset(2))).has_value());
  EXPECT_EQ(open_lattice(empty_space()).size(), 1);
}

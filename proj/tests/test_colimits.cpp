#include <gtest/gtest.h>

#include <dblcat/sweeps.hpp>

using namespace dblcat;

namespace {

FinPoset one(const std::string& name) { return make_poset({name}, {}); }

OrderIdeal full_ideal(const FinPoset& a, const FinPoset& b) {
  BitMatrix rel(a.size(), b.size());
  for (int x = 0; x < a.size(); ++x) rel.set_row(x, b.all());
  return make_ideal(a, b, rel);
}

OrderIdeal empty_ideal(const FinPoset& a, const FinPoset& b) { return make_ideal(a, b, BitMatrix(a.size(), b.size())); }

std::vector<LaxFunctor<PosD>> small_two_functors(int max_total) {
  std::vector<LaxFunctor<PosD>> out;
  for (int na = 0; na <= max_total; ++na) {
    for (int nb = 0; na + nb <= max_total; ++nb) {
      for (const auto& a : poset_classes(na)) {
        for (const auto& b : poset_classes(nb)) {
          for (auto& l : PosD::vmors(a, b)) out.push_back(two_functor<PosD>(l));
        }
      }
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// lax functors and transformations

TEST(LaxFunctors, TerminalIsValid) {
  for (int n = 0; n <= 3; ++n) {
    for (const auto& b : poset_classes(n)) {
      auto base = poset_cat(b);
      EXPECT_TRUE(validate_lax_functor(terminal_lax<PosD>(base)).ok());
      EXPECT_TRUE(validate_lax_functor(terminal_lax<TopD>(base)).ok());
      EXPECT_TRUE(validate_lax_functor(terminal_lax<LocD>(base)).ok());
      EXPECT_TRUE(validate_lax_functor(terminal_lax<CatD>(base)).ok());
    }
  }
}

TEST(LaxFunctors, CompositeNotContained) {
  auto p = one("p"), q = one("q"), r = one("r");
  auto F = lax_from_poset<PosD>(chain_poset(3), {p, q, r},
                                {{{0, 1}, full_ideal(p, q)}, {{1, 2}, full_ideal(q, r)}, {{0, 2}, empty_ideal(p, r)}});
  auto rep = validate_lax_functor(F);
  ASSERT_FALSE(rep.ok());
  const auto& w = rep.failures.front();
  EXPECT_NE(w.find("(0,1,2)"), std::string::npos) << w;
  EXPECT_THROW(require_lax_functor(F), LawViolation);
}

TEST(LaxFunctors, SingleObjectBase) {
  for (const auto& x : poset_classes(3)) {
    EXPECT_TRUE(validate_lax_functor(lax_from_poset<PosD>(chain_poset(1), {x}, {})).ok());
  }
}

TEST(LaxFunctors, IdentityTransformation) {
  for (const auto& F : small_two_functors(3)) EXPECT_TRUE(validate_transformation(identity_transformation(F)).ok());
}

TEST(LaxFunctors, SquareFailureNamesArrow) {
  auto p = one("p"), q = one("q");
  auto F = two_functor<PosD>(full_ideal(p, q));
  auto G = two_functor<PosD>(empty_ideal(p, q));
  auto t = transformation(F, G, {identity_map(p), identity_map(q)});
  auto rep = validate_transformation(t);
  ASSERT_FALSE(rep.ok());
  EXPECT_NE(rep.failures.front().find("0<1"), std::string::npos) << rep.failures.front();
}

TEST(LaxFunctors, IdentityModification) {
  for (const auto& F : small_two_functors(2)) {
    auto t = identity_transformation(F);
    Modification<PosD> m{t, t, std::vector<PosD::Witness>(F.carrier.size())};
    EXPECT_TRUE(validate_modification(m).ok());
  }
}

TEST(Slices, HomCounts) {
  auto c2 = chain_poset(2);
  auto id = identity_slice<PosD>(c2);
  EXPECT_EQ(slice_maps(id, id).size(), 1u);
  SliceObject<PosD> empty{empty_poset(), make_monotone(empty_poset(), c2, {})};
  EXPECT_EQ(slice_maps(empty, id).size(), 1u);
}

// ---------------------------------------------------------------------------
// collages

TEST(Collage, TerminalIsBase) {
  for (int n = 0; n <= 4; ++n) {
    for (const auto& b : poset_classes(n)) {
      auto c = collage(terminal_lax<PosD>(poset_cat(b)));
      EXPECT_TRUE(find_poset_iso(c.total, b).has_value());
      EXPECT_TRUE(validate_collage(c).ok());
    }
  }
}

TEST(Collage, LocTerminalOverTwoChain) {
  auto c = collage(terminal_lax<LocD>(poset_cat(chain_poset(2))));
  EXPECT_EQ(c.total.size(), 3);
  EXPECT_TRUE(find_frame_iso(c.total, chain_frame(3)).has_value());
  // descending pairs (x0, x1) with x1 <= x0
  for (const auto& fam : c.family) EXPECT_LE(fam[1], fam[0]);
}

TEST(Collage, TopTwoPointExamples) {
  auto a = make_space({"a"}, {0, 1});
  auto b = make_space({"b"}, {0, 1});
  auto sier = collage(two_functor<TopD>(make_open_map(a, b, {0, 1})));
  EXPECT_TRUE(find_homeomorphism(sier.total, sierpinski()).has_value());
  const int pa = sier.element(0, 0);
  EXPECT_EQ(sier.total.opens, (std::vector<Mask>{0, bit(pa), 3}));
  auto disc = collage(two_functor<TopD>(make_open_map(a, b, {1, 1})));
  EXPECT_TRUE(find_homeomorphism(disc.total, discrete_space(2)).has_value());
}

TEST(Collage, CatParallelArrows) {
  auto t = terminal_cat();
  auto m = blank_profunctor(t, t, {"s", "t"}, {0, 0}, {0, 0});
  for (int u = 0; u < 2; ++u) {
    m.left[static_cast<std::size_t>(u)] = u;
    m.right[static_cast<std::size_t>(u)] = u;
  }
  auto c = collage(two_functor<CatD>(m));
  EXPECT_EQ(c.total.object_count(), 2);
  EXPECT_EQ(c.total.morphism_count(), 4);
  int parallel = 0;
  for (int f = 0; f < c.total.morphism_count(); ++f) parallel += c.total.dom[f] != c.total.cod[f];
  EXPECT_EQ(parallel, 2);
}

// ---------------------------------------------------------------------------
// mediating morphisms

TEST(Mediate, OwnInjectionsGiveIdentity) {
  for (const auto& F : small_two_functors(3)) {
    auto c = collage(F);
    EXPECT_EQ(mediate(c, injection_cocone(c)), identity_map(c.total));
  }
  auto ct = collage(terminal_lax<TopD>(poset_cat(chain_poset(3))));
  EXPECT_EQ(mediate(ct, injection_cocone(ct)), identity_continuous(ct.total));
  auto cc = collage(terminal_lax<CatD>(poset_cat(chain_poset(2))));
  EXPECT_EQ(mediate(cc, injection_cocone(cc)), identity_functor(cc.total));
}

TEST(Mediate, TerminalLegsIntoBase) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& b : poset_classes(n)) {
      auto c = collage(terminal_lax<PosD>(poset_cat(b)));
      Cocone<PosD> k{b, {}, {}};
      for (int x = 0; x < n; ++x) k.legs.push_back(make_monotone(c.F.carrier[x], b, {x}));
      k.leg_cells.assign(static_cast<std::size_t>(c.F.base.morphism_count()), {});
      auto h = mediate_checked(c, k);
      EXPECT_TRUE(is_order_iso(h));
    }
  }
}

TEST(Mediate, ExhaustiveUniqueness) {
  long cocones = 0;
  for (const auto& F : small_two_functors(2)) {
    auto c = collage(F);
    const int arrow = poset_arrow(F.base, 0, 1);
    for (int ny = 0; ny <= 3; ++ny) {
      for (const auto& y : poset_classes(ny)) {
        for (const auto& f0 : PosD::hmors(F.carrier[0], y)) {
          for (const auto& f1 : PosD::hmors(F.carrier[1], y)) {
            Cocone<PosD> k{y, {f0, f1}, std::vector<PosD::Witness>(3)};
            if (cell_failure(k.leg_cell(F, arrow))) continue;
            ++cocones;
            EXPECT_EQ(count_mediators(c, k), 1);
          }
        }
      }
    }
  }
  EXPECT_GT(cocones, 50);
}

TEST(Mediate, ModificationFromComponents) {
  for (const auto& F : small_two_functors(2)) {
    auto c = collage(F);
    auto id = identity_map(c.total);
    EXPECT_NO_THROW(mediate_modification(c, id, id, std::vector<PosD::Witness>(2)));
  }
  auto cc = collage(terminal_lax<CatD>(poset_cat(chain_poset(2))));
  auto id = identity_functor(cc.total);
  std::vector<CatD::Witness> theta;
  for (int b = 0; b < 2; ++b) theta.push_back(vid_cell<CatD>(compose(id, cc.inj[b])).witness);
  EXPECT_EQ(mediate_modification(cc, id, id, theta), vid_cell<CatD>(id).witness);
}

// ---------------------------------------------------------------------------
// fibers

TEST(Fibers, IdentityRecoversCarriers) {
  for (const auto& F : small_two_functors(3)) {
    auto c = collage(F);
    for (int b = 0; b < 2; ++b) {
      auto fb = fiber(c, identity_map(c.total), b);
      EXPECT_TRUE(find_poset_iso(fb.object, F.carrier[b]).has_value());
    }
  }
}

TEST(Fibers, TwoChainAndSierpinski) {
  auto c = collage(terminal_lax<PosD>(poset_cat(chain_poset(2))));
  auto f0 = fiber(c, identity_map(c.total), 0);
  EXPECT_EQ(f0.object.size(), 1);
  EXPECT_EQ(f0.incl.map, std::vector<int>{c.element(0, 0)});
  auto ct = collage(terminal_lax<TopD>(poset_cat(chain_poset(2))));
  auto p = identity_continuous(ct.total);
  EXPECT_EQ(fiber(ct, p, 0).incl.map, std::vector<int>{ct.element(0, 0)});
  EXPECT_EQ(fiber(ct, p, 1).incl.map, std::vector<int>{ct.element(1, 0)});
  // {0} is the open point
  EXPECT_TRUE(ct.total.is_open(bit(ct.element(0, 0))));
}

TEST(Fibers, PullbackProperty) {
  std::vector<FinPoset> tests;
  for (int n = 0; n <= 2; ++n) {
    for (const auto& w : poset_classes(n)) tests.push_back(w);
  }
  for (const auto& F : small_two_functors(2)) {
    auto c = collage(F);
    for (int nx = 0; nx <= 2; ++nx) {
      for (const auto& x : poset_classes(nx)) {
        for (const auto& p : PosD::hmors(x, c.total)) {
          for (int b = 0; b < 2; ++b) EXPECT_TRUE(check_fiber_pullback(c, p, b, tests).ok());
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// zero padding and right transport

TEST(Padding, PointAtBottom) {
  auto L = pad_left<PosD>(poset_cat(chain_poset(2)), 0, one("pt"));
  EXPECT_EQ(L.carrier[0].size(), 1);
  EXPECT_EQ(L.carrier[1].size(), 0);
  EXPECT_TRUE(validate_lax_functor(L).ok());
}

TEST(Padding, LeftAdjointToEvaluation) {
  const auto base = poset_cat(chain_poset(2));
  for (int nx = 0; nx <= 2; ++nx) {
    for (const auto& x : poset_classes(nx)) {
      for (const auto& G : small_two_functors(2)) {
        for (int b = 0; b < 2; ++b) {
          auto L = pad_left<PosD>(base, b, x);
          EXPECT_EQ(all_transformations(L, G).size(), PosD::hmors(x, G.carrier[b]).size());
          auto c = collage(L);
          EXPECT_TRUE(find_poset_iso(c.total, x).has_value());
        }
      }
    }
  }
}

TEST(RightTransport, RelationComposite) {
  auto x = one("x"), y = one("y"), z = one("0");
  auto l = full_ideal(x, y);
  auto q = make_monotone(z, x, {0});
  auto R = right_transport<PosD>(0, l, q);
  const auto& v = R.functor.at(poset_arrow(R.functor.base, 0, 1));
  EXPECT_TRUE(v.contains(0, 0));
  EXPECT_EQ(v.rel.count(), 1);
  EXPECT_TRUE(validate_lax_slice(R).ok());
}

TEST(RightTransport, IdentityKeepsL) {
  for (const auto& F : small_two_functors(3)) {
    const auto& l = F.at(poset_arrow(F.base, 0, 1));
    auto R0 = right_transport<PosD>(0, l, identity_map(F.carrier[0]));
    EXPECT_EQ(R0.functor.at(poset_arrow(F.base, 0, 1)), l);
    auto R1 = right_transport<PosD>(1, l, identity_map(F.carrier[1]));
    EXPECT_EQ(R1.functor.at(poset_arrow(F.base, 0, 1)), l);
  }
}

TEST(RightTransport, AdjunctionCounts) {
  long checked = 0;
  for (const auto& L : small_two_functors(2)) {
    const auto& l = L.at(poset_arrow(L.base, 0, 1));
    std::vector<LaxSlice<PosD>> ms;
    for (const auto& M : small_two_functors(2)) {
      for (auto& t : all_transformations(M, L)) ms.push_back(LaxSlice<PosD>{M, t});
    }
    for (int k = 0; k < 2; ++k) {
      for (int nq = 0; nq <= 2; ++nq) {
        for (const auto& qo : poset_classes(nq)) {
          for (const auto& q : PosD::hmors(qo, L.carrier[k])) {
            auto R = right_transport<PosD>(k, l, q);
            for (const auto& M : ms) {
              std::size_t rhs = 0;
              for (const auto& h : PosD::hmors(M.functor.carrier[k], qo)) rhs += compose(q, h) == M.map.component[k];
              EXPECT_EQ(enumerate_lax_slice_morphisms(M, R).size(), rhs);
              ++checked;
            }
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 100);
}

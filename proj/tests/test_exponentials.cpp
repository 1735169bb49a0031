#include <gtest/gtest.h>

#include <dblcat/sweeps.hpp>

using namespace dblcat;

namespace {

// Slice maps g: X -> Z over D counted by trying every function; `dom` limits
// the points of X that take part (the pullback along A).
bool monotone_on(const FinPoset& x, Mask dom, const FinPoset& z, const std::vector<int>& g) {
  for (int a = 0; a < x.size(); ++a) {
    for (int b = 0; b < x.size(); ++b) {
      if (has(dom, a) && has(dom, b) && x.le(a, b) && !z.le(g[a], g[b])) return false;
    }
  }
  return true;
}

long count_over(const SliceObject<PosD>& x, Mask dom, const SliceObject<PosD>& z) {
  const int n = x.object.size();
  const int m = z.object.size();
  std::vector<int> g(static_cast<std::size_t>(n), 0);
  long count = 0;
  std::function<void(int)> rec = [&](int a) {
    if (a == n) {
      count += monotone_on(x.object, dom, z.object, g);
      return;
    }
    if (!has(dom, a)) {
      rec(a + 1);
      return;
    }
    for (int v = 0; v < m; ++v) {
      if (z.map(v) != x.map(a)) continue;
      g[a] = v;
      rec(a + 1);
    }
  };
  rec(0);
  return count;
}

Mask over_part(const SliceObject<PosD>& x, Mask part) {
  Mask s = 0;
  for (int a = 0; a < x.object.size(); ++a) {
    if (has(part, x.map(a))) s |= bit(a);
  }
  return s;
}

// Hom_{/D}(X x_D A, Z) and Hom_{/D}(X, W)
long lhs_count(const SliceObject<PosD>& x, Mask part, const SliceObject<PosD>& z) {
  return count_over(x, over_part(x, part), z);
}
long rhs_count(const SliceObject<PosD>& x, const SliceObject<PosD>& w) { return count_over(x, x.object.all(), w); }

std::vector<SliceObject<PosD>> all_over(const FinPoset& d, int max_size) {
  std::vector<SliceObject<PosD>> out;
  for (int n = 0; n <= max_size; ++n) {
    for (const auto& w : all_posets(n)) {
      for (auto& m : monotone_maps(w, d)) out.push_back(SliceObject<PosD>{w, make_monotone(w, d, m)});
    }
  }
  return out;
}

SliceObject<PosD> worked_z() {
  auto z = poset_closure({"a", "a'", "b"}, {{0, 2}, {1, 2}});
  return SliceObject<PosD>{z, make_monotone(z, chain_poset(2), {0, 0, 1})};
}

}  // namespace

// ---------------------------------------------------------------------------
// classification

TEST(Classify, IdentityIsOpenAndClosed) {
  for (int n = 0; n <= 3; ++n) {
    for (const auto& d : poset_classes(n)) {
      auto ic = classify_inclusion<PosD>(identity_map(d));
      EXPECT_EQ(ic.kind, InclusionKind::Open);
      EXPECT_TRUE(ic.open);
      EXPECT_TRUE(ic.closed);
    }
  }
}

TEST(Classify, TwoChainPoints) {
  auto d = chain_poset(2);
  EXPECT_EQ(classify_inclusion<PosD>(detail::sub_inclusion<PosD>(d, 1)).kind, InclusionKind::Open);
  EXPECT_EQ(classify_inclusion<PosD>(detail::sub_inclusion<PosD>(d, 2)).kind, InclusionKind::Closed);
}

TEST(Classify, MiddleOfThreeChain) {
  auto ic = classify_inclusion<PosD>(detail::sub_inclusion<PosD>(chain_poset(3), 2));
  EXPECT_EQ(ic.kind, InclusionKind::LocallyClosed);
  EXPECT_FALSE(ic.open);
  EXPECT_FALSE(ic.closed);
  EXPECT_EQ(ic.open_part & ic.closed_part, Mask{2});
}

TEST(Classify, NonConvexIsUnclassified) {
  auto ic = classify_inclusion<PosD>(detail::sub_inclusion<PosD>(chain_poset(3), 5));
  EXPECT_EQ(ic.kind, InclusionKind::Unclassified);
  EXPECT_THROW(exponential(identity_slice<PosD>(chain_poset(3)), ic), Unsupported);
}

TEST(Classify, OpenAndClosedMatchDownAndUpSets) {
  // Pos: open = down-closed, closed = up-closed
  for (int n = 0; n <= 3; ++n) {
    for (const auto& d : poset_classes(n)) {
      for (Mask a = 0; a <= d.all(); ++a) {
        auto ic = classify_inclusion<PosD>(detail::sub_inclusion<PosD>(d, a));
        EXPECT_EQ(ic.open, is_down_set(d, a));
        EXPECT_EQ(ic.closed, is_up_set(d, a));
      }
    }
  }
}

TEST(Classify, ThreeBasedAgrees) {
  for (int n = 0; n <= 3; ++n) {
    for (const auto& d : poset_classes(n)) {
      for (Mask a = 0; a <= d.all(); ++a) {
        auto i = detail::sub_inclusion<PosD>(d, a);
        EXPECT_EQ(classify_inclusion<PosD>(i).kind != InclusionKind::Unclassified,
                  three_based_locally_closed<PosD>(i));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// monomorphisms

TEST(Mono, ClassifiedInclusions) {
  auto p = mono_sweep<PosD>(classified_inclusions<PosD>(3), 3);
  EXPECT_TRUE(p.report.ok());
  EXPECT_GT(p.report.checked, 0);
  auto t = mono_sweep<TopD>(classified_inclusions<TopD>(3), 3);
  EXPECT_TRUE(t.report.ok());
}

TEST(Mono, SurjectionIsNot) {
  std::vector<FinPoset> tests{chain_poset(1), chain_poset(2)};
  auto f = make_monotone(chain_poset(2), chain_poset(1), {0, 0});
  EXPECT_FALSE(check_mono<PosD>(f, tests));
  auto e = make_monotone(empty_poset(), chain_poset(2), {});
  EXPECT_TRUE(check_mono<PosD>(e, tests));
}

// ---------------------------------------------------------------------------
// the worked example and its relatives

TEST(Exponential, WorkedExample) {
  auto d = chain_poset(2);
  auto z = worked_z();
  auto ic = classify_inclusion<PosD>(detail::sub_inclusion<PosD>(d, 1));
  auto e = exponential(z, ic);
  const auto& w = e.result;
  ASSERT_EQ(w.object.size(), 3);
  // two points over 0 below one point over 1
  int top = -1;
  for (int p = 0; p < 3; ++p) {
    if (w.map(p) == 1) top = p;
  }
  ASSERT_GE(top, 0);
  for (int p = 0; p < 3; ++p) {
    if (p != top) {
      EXPECT_EQ(w.map(p), 0);
      EXPECT_TRUE(w.object.lt(p, top));
    }
  }
  auto x = identity_slice<PosD>(d);
  EXPECT_EQ(lhs_count(x, 1, z), 2);
  EXPECT_EQ(rhs_count(x, w), 2);
  EXPECT_EQ(slice_maps(x, w).size(), 2u);
}

TEST(Exponential, WorkedAuditBijection) {
  auto d = chain_poset(2);
  auto ic = classify_inclusion<PosD>(detail::sub_inclusion<PosD>(d, 1));
  auto e = exponential(worked_z(), ic);
  auto x = identity_slice<PosD>(d);
  SliceFamily<PosD> fam{d, {x}, {{slice_maps(x, x)}}};
  auto r = adjunction_audit(e, fam);
  EXPECT_TRUE(r.ok()) << r.failures.front();
  auto pb = pullback(x, 1);
  for (const auto& g : slice_maps(pb.object, worked_z())) {
    auto h = transpose(e, x, detail::point_map<PosD>(pb.object.object, worked_z().object, g));
    EXPECT_EQ(untranspose(e, x, h).map, g);
  }
}

TEST(Exponential, WholeAndEmptyExponent) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& d : poset_classes(n)) {
      auto whole = classify_inclusion<PosD>(identity_map(d));
      auto empty = classify_inclusion<PosD>(detail::sub_inclusion<PosD>(d, 0));
      for (const auto& z : slice_objects<PosD>(d, 2)) {
        EXPECT_TRUE(oracle::point_slices_isomorphic(exponential(z, whole).result, z));
        EXPECT_TRUE(oracle::point_slices_isomorphic(exponential(z, empty).result, identity_slice<PosD>(d)));
      }
    }
  }
}

TEST(Exponential, ClosedTopPointAudit) {
  auto d = chain_poset(2);
  auto ic = classify_inclusion<PosD>(detail::sub_inclusion<PosD>(d, 2));
  ASSERT_EQ(ic.kind, InclusionKind::Closed);
  auto e = exponential(identity_slice<PosD>(d), ic);
  auto r = adjunction_audit(e, slice_family<PosD>(d, 3));
  EXPECT_TRUE(r.ok()) << r.failures.front();
}

TEST(Exponential, TopClosedPointAudit) {
  auto s = sierpinski();
  auto ic = classify_inclusion<TopD>(detail::sub_inclusion<TopD>(s, 2));
  ASSERT_EQ(ic.kind, InclusionKind::Closed);
  auto e = exponential(identity_slice<TopD>(s), ic);
  auto r = adjunction_audit(e, slice_family<TopD>(s, 3));
  EXPECT_TRUE(r.ok()) << r.failures.front();
}

TEST(Exponential, MiddleOfThreeChainAudit) {
  auto d = chain_poset(3);
  auto ic = classify_inclusion<PosD>(detail::sub_inclusion<PosD>(d, 2));
  auto e = exponential(identity_slice<PosD>(d), ic);
  auto r = adjunction_audit(e, slice_family<PosD>(d, 3));
  EXPECT_TRUE(r.ok()) << r.failures.front();
}

TEST(Exponential, DegenerateLocallyClosedAgreesWithOpen) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& d : poset_classes(n)) {
      for (Mask a = 0; a <= d.all(); ++a) {
        if (!is_down_set(d, a)) continue;
        auto ic = classify_inclusion<PosD>(detail::sub_inclusion<PosD>(d, a));
        for (const auto& z : slice_objects<PosD>(d, 2)) {
          auto open = exponential_open(z, ic);
          auto lc = exponential_locally_closed(z, ic.morphism, a, d.all());
          EXPECT_TRUE(oracle::point_slices_isomorphic(open.result, lc.result));
        }
      }
    }
  }
}

TEST(Exponential, EmptyTestObject) {
  auto d = chain_poset(2);
  auto ic = classify_inclusion<PosD>(detail::sub_inclusion<PosD>(d, 1));
  auto e = exponential(worked_z(), ic);
  SliceObject<PosD> o{empty_poset(), make_monotone(empty_poset(), d, {})};
  EXPECT_EQ(lhs_count(o, 1, worked_z()), 1);
  EXPECT_EQ(rhs_count(o, e.result), 1);
}

TEST(Exponential, MutatedResultFailsAudit) {
  auto d = chain_poset(2);
  auto ic = classify_inclusion<PosD>(detail::sub_inclusion<PosD>(d, 1));
  auto e = exponential(worked_z(), ic);
  // drop one strict order pair from Z^A
  auto& w = e.result.object;
  bool dropped = false;
  for (int p = 0; p < w.size() && !dropped; ++p) {
    for (int q = 0; q < w.size() && !dropped; ++q) {
      if (w.lt(p, q)) {
        w.up[p] &= ~bit(q);
        dropped = true;
      }
    }
  }
  ASSERT_TRUE(dropped);
  e.result.map.src = w;
  auto r = adjunction_audit(e, slice_family<PosD>(d, 3));
  EXPECT_FALSE(r.ok());
}

// ---------------------------------------------------------------------------
// brute-force right adjoint

TEST(Exponential, BruteForceRightAdjoint) {
  long compared = 0;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& d : poset_classes(n)) {
      const auto candidates = slice_objects<PosD>(d, 4);
      const auto tests = all_over(d, 2);
      for (Mask a = 0; a <= d.all(); ++a) {
        auto ic = classify_inclusion<PosD>(detail::sub_inclusion<PosD>(d, a));
        if (ic.kind == InclusionKind::Unclassified) continue;
        for (const auto& z : slice_objects<PosD>(d, 2)) {
          auto e = exponential(z, ic);
          std::vector<long> want;
          for (const auto& x : tests) want.push_back(lhs_count(x, a, z));
          std::vector<SliceObject<PosD>> matching;
          for (const auto& w : candidates) {
            bool ok = true;
            for (std::size_t t = 0; t < tests.size() && ok; ++t) ok = rhs_count(tests[t], w) == want[t];
            if (ok) matching.push_back(w);
          }
          ASSERT_EQ(matching.size(), 1u);
          EXPECT_TRUE(oracle::point_slices_isomorphic(matching.front(), e.result));
          ++compared;
        }
      }
    }
  }
  EXPECT_GT(compared, 10);
}

TEST(Exponential, SmallSweeps) {
  auto p = exponential_sweep<PosD>(ExponentialSweepOptions{2, 2, 2});
  EXPECT_TRUE(p.report.ok()) << p.report.failures.front();
  auto t = exponential_sweep<TopD>(ExponentialSweepOptions{2, 2, 2});
  EXPECT_TRUE(t.report.ok()) << t.report.failures.front();
}

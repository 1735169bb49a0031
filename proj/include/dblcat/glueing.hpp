#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dblcat/colimits.hpp"

namespace dblcat {

// ---------------------------------------------------------------------------
// isomorphisms

inline MonotoneMap hinverse(const MonotoneMap& f) {
  if (!is_order_iso(f)) throw Error("not an order isomorphism");
  return inverse_iso(f);
}

inline ContinuousMap hinverse(const ContinuousMap& f) {
  auto inv = invert_bijection(f.map, f.tgt.size());
  if (!is_homeomorphism(f)) throw Error("not a homeomorphism");
  return make_continuous(f.tgt, f.src, std::move(inv));
}

inline LocaleMap hinverse(const LocaleMap& f) {
  auto inv = invert_bijection(f.inverse, f.src.size());
  if (inv.empty() || !is_locale_iso(f)) throw Error("not a locale isomorphism");
  return make_locale_map(f.tgt, f.src, std::move(inv));
}

inline Functor hinverse(const Functor& f) {
  auto obj = invert_bijection(f.obj, f.tgt.object_count());
  auto mor = invert_bijection(f.mor, f.tgt.morphism_count());
  if (obj.size() != f.obj.size() || mor.size() != f.mor.size()) throw Error("not an isomorphism of categories");
  return make_functor(f.tgt, f.src, std::move(obj), std::move(mor));
}

/// An isomorphism a -> b over the common base, if any.
template <class D>
std::optional<typename D::HMor> find_slice_iso(const SliceObject<D>& a, const SliceObject<D>& b) {
  if (D::size(a.object) != D::size(b.object)) return std::nullopt;
  for (auto& h : enumerate_slice_morphisms(a, b)) {
    if (D::is_iso(h)) return h;
  }
  return std::nullopt;
}

/// An invertible transformation a -> b over the common base: iso components
/// and, for Cat, bijective squares.
template <class D>
std::optional<LaxTransformation<D>> find_lax_slice_iso(const LaxSlice<D>& a, const LaxSlice<D>& b) {
  const FinCat& B = a.functor.base;
  if (!(B == b.functor.base)) return std::nullopt;
  for (int x = 0; x < B.object_count(); ++x) {
    if (D::size(a.functor.carrier[x]) != D::size(b.functor.carrier[x])) return std::nullopt;
  }
  if constexpr (D::propositional) {
    // iso components over the base, then squares in both directions
    std::vector<std::vector<typename D::HMor>> opts;
    std::vector<int> radix;
    for (int x = 0; x < B.object_count(); ++x) {
      opts.emplace_back();
      for (auto& h : D::hmors(a.functor.carrier[x], b.functor.carrier[x])) {
        if (D::is_iso(h) && D::hcomp(b.map.component[x], h) == a.map.component[x]) opts.back().push_back(std::move(h));
      }
      if (opts.back().empty()) return std::nullopt;
      radix.push_back(static_cast<int>(opts.back().size()));
    }
    std::optional<LaxTransformation<D>> found;
    auto visit = [&](const std::vector<int>& choice) {
      std::vector<typename D::HMor> comps;
      for (int x = 0; x < B.object_count(); ++x) comps.push_back(opts[x][choice[x]]);
      for (int k = 0; k < B.morphism_count(); ++k) {
        if (B.is_identity(k)) continue;
        const auto& c0 = comps[B.dom[k]];
        const auto& c1 = comps[B.cod[k]];
        if (D::cell_failure(c0, a.functor.at(k), b.functor.at(k), c1, {})) return true;
        if (D::cell_failure(hinverse(c0), b.functor.at(k), a.functor.at(k), hinverse(c1), {})) return true;
      }
      found = transformation(a.functor, b.functor, comps);
      return false;
    };
    if (radix.empty()) visit({});
    else for_each_tuple(radix, visit);
    return found;
  }
  for (auto& t : enumerate_lax_slice_morphisms(a, b)) {
    bool iso = true;
    for (const auto& c : t.component) iso = iso && D::is_iso(c);
    if constexpr (!D::propositional) {
      for (int k = 0; k < B.morphism_count() && iso; ++k) {
        const int n = b.functor.at(k).size();
        iso = static_cast<int>(t.square[k].size()) == n && (n == 0 || !invert_bijection(t.square[k], n).empty());
      }
    }
    if (iso) return t;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// restriction to a full sub-base

template <class D>
struct Restriction {
  LaxFunctor<D> functor;
  std::vector<int> objects;    // new object -> old object
  std::vector<int> morphisms;  // new morphism -> old morphism
};

template <class D>
Restriction<D> restrict_lax(const LaxFunctor<D>& F, const std::vector<int>& objs) {
  const FinCat& B = F.base;
  std::vector<int> mors;
  for (int a = 0; a < B.morphism_count(); ++a) {
    if (std::find(objs.begin(), objs.end(), B.dom[a]) != objs.end() &&
        std::find(objs.begin(), objs.end(), B.cod[a]) != objs.end()) {
      mors.push_back(a);
    }
  }
  std::vector<int> order;
  FinCat sub = detail::subcategory(B, objs, mors, &order);
  LaxFunctor<D> G{sub, {}, {}, {}};
  for (int x : objs) G.carrier.push_back(F.carrier[x]);
  for (int a : order) G.vertical.push_back(F.vertical[a]);
  std::vector<int> pos(static_cast<std::size_t>(B.morphism_count()), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  for (const auto& [key, w] : F.comparison) {
    if (pos[key.first] >= 0 && pos[key.second] >= 0) G.comparison[{pos[key.first], pos[key.second]}] = w;
  }
  return Restriction<D>{std::move(G), objs, std::move(order)};
}

template <class D>
LaxSlice<D> restrict_slice(const LaxSlice<D>& s, const std::vector<int>& objs) {
  auto a = restrict_lax(s.functor, objs);
  auto b = restrict_lax(s.over(), objs);
  LaxTransformation<D> t{a.functor, b.functor, {}, {}};
  for (int x : a.objects) t.component.push_back(s.map.component[x]);
  for (int k : a.morphisms) t.square.push_back(s.map.square[k]);
  return LaxSlice<D>{a.functor, std::move(t)};
}

// ---------------------------------------------------------------------------
// glue: lax slice over F -> slice over GF

template <class D>
SliceObject<D> glue(const LaxSlice<D>& s, const Collage<D>& over) {
  const auto& t = s.map;
  const FinCat& B = t.src.base;
  auto cm = collage(s.functor);
  Cocone<D> k{over.total, {}, {}};
  for (int b = 0; b < B.object_count(); ++b) k.legs.push_back(D::hcomp(over.inj[b], t.component[b]));
  for (int a = 0; a < B.morphism_count(); ++a) {
    k.leg_cells.push_back(hcompose(over.inj_cell[a], t.square_cell(a)).witness);
  }
  return SliceObject<D>{cm.total, mediate(cm, k)};
}

template <class D>
SliceObject<D> glue(const LaxSlice<D>& s) {
  return glue(s, collage(s.over()));
}

// ---------------------------------------------------------------------------
// unglue over a single vertical l: D0 -|-> D1

/// The generic vertical k1^* . (k0)_* between the fibers of p.
template <class D>
LaxSlice<D> unglue2(const Collage<D>& cl, const typename D::HMor& p) {
  if (cl.F.base.object_count() != 2) throw BoundaryMismatch("unglue2 needs a collage over the 2-chain");
  if (!(D::htgt(p) == cl.total)) throw BoundaryMismatch("map does not land in the collage");
  auto f0 = fiber(cl, p, 0);
  auto f1 = fiber(cl, p, 1);
  auto m = D::vcomp(D::conjoint_of(f1.incl), D::companion_of(f0.incl));
  auto M = two_functor<D>(m);
  const int arrow = poset_arrow(M.base, 0, 1);
  std::vector<typename D::Witness> sq(3);
  sq[0] = vid_cell<D>(f0.map).witness;
  sq[1] = vid_cell<D>(f1.map).witness;
  if constexpr (!D::propositional) {
    // [(x0,h)|(h',x1)] goes to the element of l underlying p(h' h).
    const FinCat& X = D::hsrc(p);
    auto comp = D::companion_of(f0.incl);
    auto conj = D::conjoint_of(f1.incl);
    std::vector<int> comp_h, conj_h;
    for (int x0 = 0; x0 < f0.incl.src.object_count(); ++x0) {
      for (int h = 0; h < X.morphism_count(); ++h) {
        if (X.dom[h] == f0.incl.obj[x0]) comp_h.push_back(h);
      }
    }
    for (int h = 0; h < X.morphism_count(); ++h) {
      for (int x1 = 0; x1 < f1.incl.src.object_count(); ++x1) {
        if (X.cod[h] == f1.incl.obj[x1]) conj_h.push_back(h);
      }
    }
    auto table = prof_compose(comp, conj).second;
    std::vector<int> w;
    for (int e = 0; e < m.size(); ++e) {
      auto [u, v] = table.pairs[table.representative[e]];
      int g = X.compose(conj_h[v], comp_h[u]);
      auto [beta, elem] = cl.mor_index[p.mor[g]];
      if (beta != arrow) throw LawViolation("unglue", "a cross morphism does not lie over the arrow");
      w.push_back(elem);
    }
    sq[arrow] = w;
  }
  LaxTransformation<D> t{M, cl.F, {f0.map, f1.map}, std::move(sq)};
  if (auto f = cell_failure(t.square_cell(arrow))) throw LawViolation("unglue", "no cell into l: " + *f);
  return LaxSlice<D>{std::move(M), std::move(t)};
}

/// Pos: (x0,x1) in m iff k0 x0 <= k1 x1 in X.
inline OrderIdeal unglue_vertical_direct(const MonotoneMap& k0, const MonotoneMap& k1) {
  BitMatrix rel(k0.src.size(), k1.src.size());
  for (int a = 0; a < k0.src.size(); ++a) {
    for (int b = 0; b < k1.src.size(); ++b) rel.set(a, b, k0.tgt.le(k0(a), k1(b)));
  }
  return make_ideal(k0.src, k1.src, std::move(rel));
}

/// Top: m(U0) = interior(U0 u X1) n X1.
inline OpenMap unglue_vertical_direct(const ContinuousMap& k0, const ContinuousMap& k1) {
  const FinSpace& X = k0.tgt;
  Mask x1 = 0;
  for (int b = 0; b < k1.src.size(); ++b) x1 |= bit(k1(b));
  return open_map_from(k0.src, k1.src, [&](Mask u0) {
    Mask u = 0;
    for (int a : bits_of(u0)) u |= bit(k0(a));
    Mask v = X.interior(u | x1) & x1;
    Mask out = 0;
    for (int b = 0; b < k1.src.size(); ++b) {
      if (has(v, k1(b))) out |= bit(b);
    }
    return out;
  });
}

/// Cat: the hom-set profunctor X(k0 x0, k1 x1).
inline Profunctor unglue_vertical_direct(const Functor& k0, const Functor& k1) {
  const FinCat& X = k0.tgt;
  std::vector<std::string> names;
  std::vector<int> xs, xps, hs;
  for (int x0 = 0; x0 < k0.src.object_count(); ++x0) {
    for (int x1 = 0; x1 < k1.src.object_count(); ++x1) {
      for (int h : X.hom(k0.obj[x0], k1.obj[x1])) {
        names.push_back(X.mor_names[h]);
        xs.push_back(x0);
        xps.push_back(x1);
        hs.push_back(h);
      }
    }
  }
  Profunctor m = blank_profunctor(k0.src, k1.src, std::move(names), std::move(xs), std::move(xps));
  auto find = [&](int x0, int x1, int h) {
    for (int i = 0; i < static_cast<int>(hs.size()); ++i) {
      if (m.x[i] == x0 && m.xp[i] == x1 && hs[i] == h) return i;
    }
    return -1;
  };
  const int E = m.size();
  const int Ms = k0.src.morphism_count(), Mt = k1.src.morphism_count();
  for (int a = 0; a < Ms; ++a) {
    for (int u = 0; u < E; ++u) {
      if (k0.src.cod[a] != m.x[u]) continue;
      m.left[static_cast<std::size_t>(a * E + u)] = find(k0.src.dom[a], m.xp[u], X.compose(hs[u], k0.mor[a]));
    }
  }
  for (int u = 0; u < E; ++u) {
    for (int b = 0; b < Mt; ++b) {
      if (k1.src.dom[b] != m.xp[u]) continue;
      m.right[static_cast<std::size_t>(u * Mt + b)] = find(m.x[u], k1.src.cod[b], X.compose(k1.mor[b], hs[u]));
    }
  }
  validate_profunctor(m);
  return m;
}

// ---------------------------------------------------------------------------
// factoring a collage over a maximal base element

template <class D>
struct CollageFactor {
  int peeled;
  Restriction<D> rest;     // F restricted to B0 = B \ {peeled}
  Collage<D> whole;        // GF
  Collage<D> lower;        // G_B0 F0
  typename D::HMor i0;     // G_B0 F0 -> GF
  typename D::VMor l;      // G_B0 F0 -|-> F(peeled)
  Collage<D> two;          // G_2 l
  typename D::HMor e;      // G_2 l -> GF, an isomorphism
};

/// GF as the collage of l = i_b1^* . (i_0)_* for a maximal b1.
template <class D>
CollageFactor<D> factor_collage(const LaxFunctor<D>& F, int b1) {
  const FinCat& B = F.base;
  if (!is_thin_skeletal(B)) throw Unsupported("factoring a collage over a base that is not a poset");
  if (B.object_count() < 2) throw BoundaryMismatch("nothing to factor over a single object");
  for (int b = 0; b < B.object_count(); ++b) {
    if (b != b1 && poset_arrow(B, b1, b) >= 0) throw ConditionFails("peeled object " + B.objects[b1] + " is not maximal");
  }
  std::vector<int> objs;
  for (int b = 0; b < B.object_count(); ++b) {
    if (b != b1) objs.push_back(b);
  }
  auto rest = restrict_lax(F, objs);
  auto whole = collage(F);
  auto lower = collage(rest.functor);
  Cocone<D> k{whole.total, {}, {}};
  for (int x : rest.objects) k.legs.push_back(whole.inj[x]);
  for (int a : rest.morphisms) k.leg_cells.push_back(whole.inj_cell[a].witness);
  auto i0 = mediate(lower, k);
  auto cd = companion_data<D>(i0);
  auto dd = conjoint_data<D>(whole.inj[b1]);
  auto l = D::vcomp(dd.fupperstar, cd.fstar);
  auto two = collage(two_functor<D>(l));
  auto cell = hcompose(lambda_cell<D>(D::vid(whole.total)), vcompose(dd.beta, cd.eps));
  const int arrow = poset_arrow(two.F.base, 0, 1);
  Cocone<D> k2{whole.total, {i0, whole.inj[b1]}, std::vector<typename D::Witness>(3)};
  k2.leg_cells[0] = vid_cell<D>(i0).witness;
  k2.leg_cells[1] = vid_cell<D>(whole.inj[b1]).witness;
  k2.leg_cells[arrow] = cell.witness;
  auto e = mediate(two, k2);
  if (!D::is_iso(e)) throw LawViolation("collage factorisation", "comparison map is not an isomorphism");
  return CollageFactor<D>{b1, std::move(rest), std::move(whole), std::move(lower), std::move(i0),
                          std::move(l), std::move(two), std::move(e)};
}

/// Removal order: repeatedly the lowest-index maximal element.
inline std::vector<int> default_peel_order(const FinCat& base) {
  std::vector<int> alive;
  for (int b = 0; b < base.object_count(); ++b) alive.push_back(b);
  std::vector<int> order;
  while (alive.size() > 1) {
    for (std::size_t i = 0; i < alive.size(); ++i) {
      bool maximal = true;
      for (int c : alive) maximal = maximal && (c == alive[i] || poset_arrow(base, alive[i], c) < 0);
      if (maximal) {
        order.push_back(alive[i]);
        alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(i));
        break;
      }
    }
  }
  return order;
}

/// All removal orders, each peeling a maximal element of what remains.
inline std::vector<std::vector<int>> all_peel_orders(const FinCat& base) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<int> alive;
  for (int b = 0; b < base.object_count(); ++b) alive.push_back(b);
  auto rec = [&](auto&& self) -> void {
    if (alive.size() <= 1) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < alive.size(); ++i) {
      int b = alive[i];
      bool maximal = true;
      for (int c : alive) maximal = maximal && (c == b || poset_arrow(base, b, c) < 0);
      if (!maximal) continue;
      cur.push_back(b);
      alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(i));
      self(self);
      alive.insert(alive.begin() + static_cast<std::ptrdiff_t>(i), b);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

// ---------------------------------------------------------------------------
// B-glueing, by induction on the base

/// Pointwise supremum of verticals in the order of special cells: union of
/// ideals for Pos, pointwise meet for Top and Loc.
inline OrderIdeal vertical_sup(const std::vector<OrderIdeal>& ms, const FinPoset& src, const FinPoset& tgt) {
  BitMatrix rel(src.size(), tgt.size());
  for (const auto& m : ms) {
    for (int i = 0; i < src.size(); ++i) rel.set_row(i, rel.row(i) | m.rel.row(i));
  }
  return make_ideal(src, tgt, std::move(rel));
}

inline OpenMap vertical_sup(const std::vector<OpenMap>& ms, const FinSpace& src, const FinSpace& tgt) {
  return open_map_from(src, tgt, [&](Mask u) {
    Mask v = tgt.all();
    for (const auto& m : ms) v &= m(u);
    return v;
  });
}

inline MeetMap vertical_sup(const std::vector<MeetMap>& ms, const FinFrame& src, const FinFrame& tgt) {
  std::vector<int> map;
  for (int x = 0; x < src.size(); ++x) {
    int v = tgt.top;
    for (const auto& m : ms) v = tgt.meet(v, m(x));
    map.push_back(v);
  }
  return make_meet_map(src, tgt, std::move(map));
}

template <class D>
struct BGlued {
  SliceObject<D> slice;                     // X -> GF
  std::vector<typename D::HMor> fiber_incl;  // G_b -> X
};

template <class D>
struct BUnglued {
  LaxSlice<D> slice;                        // G over F
  std::vector<typename D::HMor> fiber_incl;  // G_b -> X
};

/// Factorisations of a lax functor along a peel order, computed once and
/// shared by every slice over it.
template <class D>
struct PeelPlan {
  std::vector<int> peel;
  std::shared_ptr<const CollageFactor<D>> factor;  // empty over a single object
  std::shared_ptr<const PeelPlan<D>> rest;
};

template <class D>
PeelPlan<D> peel_plan(const LaxFunctor<D>& F, std::vector<int> peel) {
  const FinCat& B = F.base;
  if (static_cast<int>(peel.size()) != std::max(0, B.object_count() - 1)) throw BoundaryMismatch("peel order length");
  PeelPlan<D> plan{peel, nullptr, nullptr};
  if (B.object_count() <= 1) return plan;
  auto fc = std::make_shared<const CollageFactor<D>>(factor_collage(F, peel.front()));
  std::vector<int> sub_peel;
  for (std::size_t i = 1; i < peel.size(); ++i) {
    auto it = std::find(fc->rest.objects.begin(), fc->rest.objects.end(), peel[i]);
    if (it == fc->rest.objects.end()) throw BoundaryMismatch("peel order repeats an object");
    sub_peel.push_back(static_cast<int>(it - fc->rest.objects.begin()));
  }
  plan.rest = std::make_shared<const PeelPlan<D>>(peel_plan(fc->rest.functor, std::move(sub_peel)));
  plan.factor = std::move(fc);
  return plan;
}

template <class D>
BGlued<D> b_glue(const LaxSlice<D>& s, const PeelPlan<D>& plan) {
  static_assert(D::propositional, "B-glueing is implemented for the order-enriched instances");
  const LaxFunctor<D>& G = s.functor;
  const FinCat& B = G.base;
  if (!is_thin_skeletal(B)) throw Unsupported("B-glueing over a base that is not a poset");
  if (static_cast<int>(plan.peel.size()) != std::max(0, B.object_count() - 1)) {
    throw BoundaryMismatch("peel order length");
  }
  if (B.object_count() == 1) {
    auto cg = collage(G);
    return BGlued<D>{glue(s), cg.inj};
  }
  const int b1 = plan.peel.front();
  const auto& fc = *plan.factor;
  if (!(fc.whole.F.base == B)) throw BoundaryMismatch("peel plan is for another base");
  auto s0 = restrict_slice(s, fc.rest.objects);
  auto low = b_glue(s0, *plan.rest);
  std::vector<typename D::VMor> parts;
  for (std::size_t i = 0; i < fc.rest.objects.size(); ++i) {
    int a = poset_arrow(B, fc.rest.objects[i], b1);
    if (a >= 0) parts.push_back(D::vcomp(G.at(a), D::conjoint_of(low.fiber_incl[i])));
  }
  auto lg = vertical_sup(parts, low.slice.object, G.carrier[b1]);
  auto M = two_functor<D>(lg);
  auto L = two_functor<D>(fc.l);
  LaxTransformation<D> t = transformation(M, L, {low.slice.map, s.map.component[b1]});
  auto r = validate_transformation(t);
  if (!r.ok()) throw LawViolation("B-glueing", r.failures.front());
  auto glued = glue(LaxSlice<D>{M, t}, fc.two);
  auto cg = collage(M);
  std::vector<typename D::HMor> incl(static_cast<std::size_t>(B.object_count()));
  for (std::size_t i = 0; i < fc.rest.objects.size(); ++i) {
    incl[fc.rest.objects[i]] = D::hcomp(cg.inj[0], low.fiber_incl[i]);
  }
  incl[b1] = cg.inj[1];
  return BGlued<D>{SliceObject<D>{glued.object, D::hcomp(fc.e, glued.map)}, std::move(incl)};
}

template <class D>
BGlued<D> b_glue(const LaxSlice<D>& s, std::vector<int> peel) {
  return b_glue(s, peel_plan(s.over(), std::move(peel)));
}

template <class D>
BGlued<D> b_glue(const LaxSlice<D>& s) {
  return b_glue(s, default_peel_order(s.functor.base));
}

template <class D>
BUnglued<D> b_unglue(const Collage<D>& cf, const typename D::HMor& p, const PeelPlan<D>& plan) {
  static_assert(D::propositional, "B-glueing is implemented for the order-enriched instances");
  const LaxFunctor<D>& F = cf.F;
  const FinCat& B = F.base;
  if (!(D::htgt(p) == cf.total)) throw BoundaryMismatch("map does not land in the collage");
  if (static_cast<int>(plan.peel.size()) != std::max(0, B.object_count() - 1)) {
    throw BoundaryMismatch("peel order length");
  }
  if (B.object_count() == 1) {
    auto fb = fiber(cf, p, 0);
    auto G = lax_from_poset<D>(base_order(B), {fb.object}, {});
    return BUnglued<D>{LaxSlice<D>{G, transformation(G, F, {fb.map})}, {fb.incl}};
  }
  const int b1 = plan.peel.front();
  const auto& fc = *plan.factor;
  if (!(fc.whole.F.base == B)) throw BoundaryMismatch("peel plan is for another base");
  auto p2 = D::hcomp(hinverse(fc.e), p);
  auto two = unglue2(fc.two, p2);
  auto k0 = fiber(fc.two, p2, 0).incl;
  auto k1 = fiber(fc.two, p2, 1).incl;
  auto low = b_unglue(fc.lower, two.map.component[0], *plan.rest);
  const auto m = two.functor.at(poset_arrow(two.functor.base, 0, 1));
  LaxFunctor<D> G{B, std::vector<typename D::Object>(static_cast<std::size_t>(B.object_count())), {}, {}};
  std::vector<typename D::HMor> comps(static_cast<std::size_t>(B.object_count()));
  std::vector<typename D::HMor> incl(static_cast<std::size_t>(B.object_count()));
  std::vector<int> pos(static_cast<std::size_t>(B.object_count()), -1);
  for (std::size_t i = 0; i < fc.rest.objects.size(); ++i) {
    int b = fc.rest.objects[i];
    pos[b] = static_cast<int>(i);
    G.carrier[b] = low.slice.functor.carrier[i];
    comps[b] = low.slice.map.component[i];
    incl[b] = D::hcomp(k0, low.fiber_incl[i]);
  }
  G.carrier[b1] = two.functor.carrier[1];
  comps[b1] = two.map.component[1];
  incl[b1] = k1;
  const FinCat& B0 = low.slice.functor.base;
  for (int a = 0; a < B.morphism_count(); ++a) {
    int d = B.dom[a], c = B.cod[a];
    if (B.is_identity(a)) G.vertical.push_back(D::vid(G.carrier[d]));
    else if (c == b1) G.vertical.push_back(D::vcomp(m, D::companion_of(low.fiber_incl[pos[d]])));
    else G.vertical.push_back(low.slice.functor.at(poset_arrow(B0, pos[d], pos[c])));
  }
  auto t = transformation(G, F, comps);
  BUnglued<D> out{LaxSlice<D>{G, t}, std::move(incl)};
  auto r = validate_lax_slice(out.slice);
  if (!r.ok()) throw LawViolation("B-unglueing", r.failures.front());
  return out;
}

template <class D>
BUnglued<D> b_unglue(const Collage<D>& cf, const typename D::HMor& p, std::vector<int> peel) {
  return b_unglue(cf, p, peel_plan(cf.F, std::move(peel)));
}

template <class D>
BUnglued<D> b_unglue(const Collage<D>& cf, const typename D::HMor& p) {
  return b_unglue(cf, p, default_peel_order(cf.F.base));
}

/// Fiberwise formula: G_b is the fiber over b and G(b<=b') = k_b'^* . (k_b)_*.
template <class D>
BUnglued<D> b_unglue_direct(const Collage<D>& cf, const typename D::HMor& p) {
  static_assert(D::propositional, "B-glueing is implemented for the order-enriched instances");
  const LaxFunctor<D>& F = cf.F;
  const FinCat& B = F.base;
  std::vector<Fiber<D>> fibs;
  for (int b = 0; b < B.object_count(); ++b) fibs.push_back(fiber(cf, p, b));
  LaxFunctor<D> G{B, {}, {}, {}};
  std::vector<typename D::HMor> comps, incl;
  for (const auto& f : fibs) {
    G.carrier.push_back(f.object);
    comps.push_back(f.map);
    incl.push_back(f.incl);
  }
  for (int a = 0; a < B.morphism_count(); ++a) {
    if (B.is_identity(a)) G.vertical.push_back(D::vid(G.carrier[a]));
    else G.vertical.push_back(D::vcomp(D::conjoint_of(incl[B.cod[a]]), D::companion_of(incl[B.dom[a]])));
  }
  BUnglued<D> out{LaxSlice<D>{G, transformation(G, F, comps)}, std::move(incl)};
  auto r = validate_lax_slice(out.slice);
  if (!r.ok()) throw LawViolation("B-unglueing", r.failures.front());
  return out;
}

}  // namespace dblcat

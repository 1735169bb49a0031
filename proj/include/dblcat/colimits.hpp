#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dblcat/lax.hpp"

namespace dblcat {

/// Lax colimit of F with its injections i_b and cells i_beta: F(beta) -> id(GF).
/// `index` maps each element (object, for Cat) of the total object to its
/// (base object, fiber element); `mor_index` maps each morphism of a Cat
/// collage to (base morphism, element of F(beta)); `family` lists the families
/// of a Loc collage.
template <class D>
struct Collage {
  LaxFunctor<D> F;
  typename D::Object total;
  std::vector<typename D::HMor> inj;
  std::vector<Cell<D>> inj_cell;
  std::vector<std::pair<int, int>> index;
  std::vector<std::pair<int, int>> mor_index;
  std::vector<std::vector<int>> family;

  int element(int b, int x) const {
    for (int i = 0; i < static_cast<int>(index.size()); ++i) {
      if (index[i] == std::pair<int, int>{b, x}) return i;
    }
    return -1;
  }
};

/// Cocone over F with apex Y: legs f_b and cells f_beta: F(beta) -> id(Y).
template <class D>
struct Cocone {
  typename D::Object apex;
  std::vector<typename D::HMor> legs;
  std::vector<typename D::Witness> leg_cells;

  Cell<D> leg_cell(const LaxFunctor<D>& F, int beta) const {
    return Cell<D>{legs[F.base.dom[beta]], legs[F.base.cod[beta]], F.at(beta), D::vid(apex), leg_cells[beta]};
  }
};

namespace detail {

/// Names for the disjoint union of the carriers: the plain names when they are
/// distinct across fibers, otherwise "name@b".
inline std::vector<std::string> union_names(const std::vector<std::vector<std::string>>& fibers,
                                            const std::vector<std::string>& base_names) {
  std::set<std::string> seen;
  bool clash = false;
  for (const auto& f : fibers) {
    for (const auto& n : f) clash |= !seen.insert(n).second;
  }
  std::vector<std::string> out;
  for (std::size_t b = 0; b < fibers.size(); ++b) {
    for (const auto& n : fibers[b]) out.push_back(clash ? n + "@" + base_names[b] : n);
  }
  return out;
}

template <class D>
void require_poset_base(const LaxFunctor<D>& F) {
  if (!is_thin_skeletal(F.base)) throw Unsupported("collage over a base that is not a poset");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pos: (x,b) <= (x',b') iff b <= b' and (x,x') in F^b_b'

inline Collage<PosD> collage(const LaxFunctor<PosD>& F) {
  require_lax_functor(F);
  detail::require_poset_base(F);
  const FinCat& B = F.base;
  Collage<PosD> c{F, {}, {}, {}, {}, {}, {}};
  std::vector<std::vector<std::string>> fib;
  for (int b = 0; b < B.object_count(); ++b) {
    fib.push_back(F.carrier[b].names);
    for (int x = 0; x < F.carrier[b].size(); ++x) c.index.emplace_back(b, x);
  }
  c.total.names = detail::union_names(fib, B.objects);
  const int n = static_cast<int>(c.index.size());
  if (n > kMaxCarrier) throw SizeBoundExceeded("collage has more than 64 elements");
  c.total.up.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    auto [b, x] = c.index[i];
    for (int j = 0; j < n; ++j) {
      auto [b2, x2] = c.index[j];
      int a = poset_arrow(B, b, b2);
      if (a >= 0 && F.at(a).contains(x, x2)) c.total.up[i] |= bit(j);
    }
  }
  validate_poset(c.total);
  for (int b = 0; b < B.object_count(); ++b) {
    std::vector<int> m;
    for (int x = 0; x < F.carrier[b].size(); ++x) m.push_back(c.element(b, x));
    c.inj.push_back(MonotoneMap{F.carrier[b], c.total, std::move(m)});
  }
  for (int a = 0; a < B.morphism_count(); ++a) {
    c.inj_cell.push_back(Cell<PosD>{c.inj[B.dom[a]], c.inj[B.cod[a]], F.at(a), PosD::vid(c.total), {}});
  }
  return c;
}

// ---------------------------------------------------------------------------
// Top: U open iff each U_b is open and U_b' is inside F^b_b'(U_b)

inline Collage<TopD> collage(const LaxFunctor<TopD>& F) {
  require_lax_functor(F);
  detail::require_poset_base(F);
  const FinCat& B = F.base;
  Collage<TopD> c{F, {}, {}, {}, {}, {}, {}};
  std::vector<std::vector<std::string>> fib;
  std::vector<int> offset;
  for (int b = 0; b < B.object_count(); ++b) {
    fib.push_back(F.carrier[b].names);
    offset.push_back(static_cast<int>(c.index.size()));
    for (int x = 0; x < F.carrier[b].size(); ++x) c.index.emplace_back(b, x);
  }
  if (c.index.size() > static_cast<std::size_t>(kMaxCarrier)) throw SizeBoundExceeded("collage has more than 64 points");
  std::vector<std::string> names = detail::union_names(fib, B.objects);
  std::vector<Mask> opens;
  std::vector<int> radix;
  for (const auto& x : F.carrier) radix.push_back(x.open_count());
  auto visit = [&](const std::vector<int>& t) {
    for (int a = 0; a < B.morphism_count(); ++a) {
      if (B.is_identity(a)) continue;
      Mask bound = F.at(a).at(t[B.dom[a]]);
      if ((F.carrier[B.cod[a]].opens[t[B.cod[a]]] & ~bound) != 0) return true;
    }
    Mask u = 0;
    for (int b = 0; b < B.object_count(); ++b) u |= F.carrier[b].opens[t[b]] << offset[b];
    opens.push_back(u);
    return true;
  };
  if (radix.empty()) visit({});
  else for_each_tuple(radix, visit);
  c.total = make_space(std::move(names), std::move(opens));
  for (int b = 0; b < B.object_count(); ++b) {
    std::vector<int> m;
    for (int x = 0; x < F.carrier[b].size(); ++x) m.push_back(offset[b] + x);
    c.inj.push_back(make_continuous(F.carrier[b], c.total, std::move(m)));
  }
  for (int a = 0; a < B.morphism_count(); ++a) {
    c.inj_cell.push_back(Cell<TopD>{c.inj[B.dom[a]], c.inj[B.cod[a]], F.at(a), TopD::vid(c.total), {}});
  }
  return c;
}

// ---------------------------------------------------------------------------
// Loc: descending families x_b' <= F^b_b'(x_b), ordered pointwise

inline Collage<LocD> collage(const LaxFunctor<LocD>& F) {
  require_lax_functor(F);
  detail::require_poset_base(F);
  const FinCat& B = F.base;
  Collage<LocD> c{F, {}, {}, {}, {}, {}, {}};
  std::vector<int> radix;
  for (const auto& x : F.carrier) radix.push_back(x.size());
  auto visit = [&](const std::vector<int>& t) {
    for (int a = 0; a < B.morphism_count(); ++a) {
      if (B.is_identity(a)) continue;
      if (!F.carrier[B.cod[a]].le(t[B.cod[a]], F.at(a)(t[B.dom[a]]))) return true;
    }
    c.family.push_back(t);
    return true;
  };
  if (radix.empty()) visit({});
  else for_each_tuple(radix, visit);
  const int n = static_cast<int>(c.family.size());
  if (n > kMaxCarrier) throw SizeBoundExceeded("collage frame has more than 64 elements");
  FinPoset order;
  for (const auto& t : c.family) {
    std::vector<std::string> parts;
    for (int b = 0; b < B.object_count(); ++b) parts.push_back(F.carrier[b].names[t[b]]);
    order.names.push_back("(" + join(parts) + ")");
  }
  order.up.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      bool le = true;
      for (int b = 0; b < B.object_count() && le; ++b) le = F.carrier[b].le(c.family[i][b], c.family[j][b]);
      if (le) order.up[i] |= bit(j);
    }
  }
  c.total = frame_from_order(order);
  for (int b = 0; b < B.object_count(); ++b) {
    std::vector<int> proj;
    for (const auto& t : c.family) proj.push_back(t[b]);
    c.inj.push_back(make_locale_map(F.carrier[b], c.total, std::move(proj)));
  }
  for (int a = 0; a < B.morphism_count(); ++a) {
    c.inj_cell.push_back(Cell<LocD>{c.inj[B.dom[a]], c.inj[B.cod[a]], F.at(a), LocD::vid(c.total), {}});
  }
  return c;
}

/// The co-nucleus g((x_b)_b) = (meet over b <= b' of F^b_b' x_b)_b' on the
/// product frame, checked against the collage: g is deflationary, idempotent,
/// preserves finite meets, its fixed points are exactly the collage families,
/// and each i_b^* is the projection restricted to the fixed points.
inline Report conucleus_check(const Collage<LocD>& c) {
  Report r{"co-nucleus", 0, {}};
  const auto& F = c.F;
  const FinCat& B = F.base;
  const FinPoset order = base_order(B);
  std::vector<int> radix;
  for (const auto& x : F.carrier) radix.push_back(x.size());
  auto g = [&](const std::vector<int>& t) {
    std::vector<int> out(t.size());
    for (int b2 = 0; b2 < B.object_count(); ++b2) {
      int v = F.carrier[b2].top;
      for (int b = 0; b < B.object_count(); ++b) {
        if (order.le(b, b2)) v = F.carrier[b2].meet(v, vertical_between(F, b, b2)(t[b]));
      }
      out[b2] = v;
    }
    return out;
  };
  auto le = [&](const std::vector<int>& s, const std::vector<int>& t) {
    for (int b = 0; b < B.object_count(); ++b) {
      if (!F.carrier[b].le(s[b], t[b])) return false;
    }
    return true;
  };
  auto meet = [&](const std::vector<int>& s, const std::vector<int>& t) {
    std::vector<int> out(s.size());
    for (int b = 0; b < B.object_count(); ++b) out[b] = F.carrier[b].meet(s[b], t[b]);
    return out;
  };
  std::vector<std::vector<int>> all;
  if (radix.empty()) all.push_back({});
  else for_each_tuple(radix, [&](const std::vector<int>& t) {
    all.push_back(t);
    return true;
  });
  std::set<std::vector<int>> fixed;
  for (const auto& t : all) {
    auto gt = g(t);
    ++r.checked;
    if (!le(gt, t)) r.fail("not deflationary");
    if (g(gt) != gt) r.fail("not idempotent");
    if (gt == t) fixed.insert(t);
    for (const auto& s : all) {
      ++r.checked;
      if (g(meet(s, t)) != meet(g(s), gt)) r.fail("does not preserve binary meets");
    }
  }
  std::vector<int> top;
  for (const auto& x : F.carrier) top.push_back(x.top);
  ++r.checked;
  if (g(top) != top) r.fail("does not preserve the top");
  ++r.checked;
  if (fixed != std::set<std::vector<int>>(c.family.begin(), c.family.end())) {
    r.fail("fixed points differ from the collage families");
  }
  for (int b = 0; b < B.object_count(); ++b) {
    ++r.checked;
    for (int i = 0; i < static_cast<int>(c.family.size()); ++i) {
      if (c.inj[b].inverse[i] != c.family[i][b]) r.fail("injection is not the restricted projection");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Cat: Grothendieck construction

namespace detail {

inline std::map<std::pair<int, int>, CoendTable> comparison_tables(const LaxFunctor<CatD>& F) {
  std::map<std::pair<int, int>, CoendTable> tables;
  const FinCat& B = F.base;
  for (int a = 0; a < B.morphism_count(); ++a) {
    for (int a2 = 0; a2 < B.morphism_count(); ++a2) {
      if (B.is_identity(a) || B.is_identity(a2) || B.cod[a] != B.dom[a2]) continue;
      tables[{a, a2}] = prof_compose(F.at(a), F.at(a2)).second;
    }
  }
  return tables;
}

/// Subcategory on the given objects and morphisms (identities first).
inline FinCat subcategory(const FinCat& c, const std::vector<int>& objs, const std::vector<int>& mors,
                          std::vector<int>* mor_map = nullptr) {
  std::vector<int> obj_pos(static_cast<std::size_t>(c.object_count()), -1);
  for (std::size_t i = 0; i < objs.size(); ++i) obj_pos[objs[i]] = static_cast<int>(i);
  std::vector<int> order;
  for (int x : objs) order.push_back(c.ident(x));
  for (int a : mors) {
    if (!c.is_identity(a)) order.push_back(a);
  }
  std::vector<int> pos(static_cast<std::size_t>(c.morphism_count()), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  FinCat s;
  for (int x : objs) s.objects.push_back(c.objects[x]);
  for (int a : order) {
    s.mor_names.push_back(c.mor_names[a]);
    s.dom.push_back(obj_pos[c.dom[a]]);
    s.cod.push_back(obj_pos[c.cod[a]]);
  }
  const int m = static_cast<int>(order.size());
  s.comp.assign(static_cast<std::size_t>(m * m), -1);
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      int h = c.compose(order[g], order[f]);
      if (h >= 0) {
        if (pos[h] < 0) throw Error("subcategory is not closed under composition");
        s.comp[static_cast<std::size_t>(g * m + f)] = pos[h];
      }
    }
  }
  validate_cat(s);
  if (mor_map) *mor_map = order;
  return s;
}

}  // namespace detail

inline Collage<CatD> collage(const LaxFunctor<CatD>& F) {
  require_lax_functor(F);
  const FinCat& B = F.base;
  Collage<CatD> c{F, {}, {}, {}, {}, {}, {}};
  auto tables = detail::comparison_tables(F);
  std::vector<std::vector<std::string>> fib;
  for (int b = 0; b < B.object_count(); ++b) {
    fib.push_back(F.carrier[b].objects);
    for (int x = 0; x < F.carrier[b].object_count(); ++x) c.index.emplace_back(b, x);
  }
  FinCat& T = c.total;
  T.objects = detail::union_names(fib, B.objects);
  const int n = T.object_count();
  // Identities first.
  for (int i = 0; i < n; ++i) {
    auto [b, x] = c.index[i];
    c.mor_index.emplace_back(B.ident(b), F.carrier[b].ident(x));
  }
  for (int a = 0; a < B.morphism_count(); ++a) {
    const Profunctor& m = F.at(a);
    for (int u = 0; u < m.size(); ++u) {
      if (B.is_identity(a) && F.carrier[B.dom[a]].is_identity(u)) continue;
      c.mor_index.emplace_back(a, u);
    }
  }
  std::map<std::pair<int, int>, int> mor_pos;
  for (int i = 0; i < static_cast<int>(c.mor_index.size()); ++i) mor_pos[c.mor_index[i]] = i;
  std::vector<std::vector<std::string>> raw;
  std::vector<std::string> plain;
  std::set<std::string> seen;
  bool clash = false;
  for (auto [a, u] : c.mor_index) {
    std::string nm = B.is_identity(a) ? F.carrier[B.dom[a]].mor_names[u] : F.at(a).names[u];
    clash |= !seen.insert(nm).second;
    plain.push_back(nm);
  }
  for (int i = 0; i < static_cast<int>(c.mor_index.size()); ++i) {
    auto [a, u] = c.mor_index[i];
    if (i < n) T.mor_names.push_back("1_" + T.objects[i]);
    else T.mor_names.push_back(clash ? plain[i] + "@" + B.mor_names[a] : plain[i]);
    const Profunctor& m = F.at(a);
    T.dom.push_back(c.element(B.dom[a], m.x[u]));
    T.cod.push_back(c.element(B.cod[a], m.xp[u]));
  }
  const int M = T.morphism_count();
  T.comp.assign(static_cast<std::size_t>(M * M), -1);
  for (int g = 0; g < M; ++g) {
    for (int f = 0; f < M; ++f) {
      if (T.cod[f] != T.dom[g]) continue;
      auto [a, u] = c.mor_index[f];
      auto [a2, v] = c.mor_index[g];
      int w = detail::cat_combine(F, tables, a, u, a2, v);
      T.comp[static_cast<std::size_t>(g * M + f)] = mor_pos.at({B.compose(a2, a), w});
    }
  }
  validate_cat(T);
  for (int b = 0; b < B.object_count(); ++b) {
    const FinCat& Fb = F.carrier[b];
    std::vector<int> obj, mor;
    for (int x = 0; x < Fb.object_count(); ++x) obj.push_back(c.element(b, x));
    for (int u = 0; u < Fb.morphism_count(); ++u) mor.push_back(mor_pos.at({B.ident(b), u}));
    c.inj.push_back(make_functor(Fb, T, std::move(obj), std::move(mor)));
  }
  for (int a = 0; a < B.morphism_count(); ++a) {
    std::vector<int> w;
    for (int u = 0; u < F.at(a).size(); ++u) w.push_back(mor_pos.at({a, u}));
    c.inj_cell.push_back(Cell<CatD>{c.inj[B.dom[a]], c.inj[B.cod[a]], F.at(a), CatD::vid(T), std::move(w)});
  }
  return c;
}

// ---------------------------------------------------------------------------
// universal property

/// Checks the injection cells and their compatibility with the comparisons.
template <class D>
Report validate_collage(const Collage<D>& c) {
  Report r{std::string("collage ") + tag_name(D::tag), 0, {}};
  const FinCat& B = c.F.base;
  for (int a = 0; a < B.morphism_count(); ++a) {
    ++r.checked;
    if (auto f = cell_failure(c.inj_cell[a])) r.fail("injection cell at " + B.mor_names[a] + ": " + *f);
    if (B.is_identity(a)) {
      ++r.checked;
      if (!(c.inj_cell[a] == vid_cell<D>(c.inj[a]))) r.fail("injection cell at an identity is not the identity");
    }
  }
  if constexpr (!D::propositional) {
    // i_{beta2 beta} after phi = lambda . (i_beta2 . i_beta) pasted, i.e. the
    // composite of (beta,u) and (beta2,v) is the image of [u|v].
    for (int a = 0; a < B.morphism_count(); ++a) {
      for (int a2 = 0; a2 < B.morphism_count(); ++a2) {
        if (B.is_identity(a) || B.is_identity(a2) || B.cod[a] != B.dom[a2]) continue;
        ++r.checked;
        auto lhs = hcompose(c.inj_cell[B.compose(a2, a)], comparison_cell(c.F, a, a2));
        auto rhs = hcompose(lambda_cell<D>(D::vid(c.total)), vcompose(c.inj_cell[a2], c.inj_cell[a]));
        if (!(lhs == rhs)) r.fail("injection cells incompatible with the comparison at (" + B.mor_names[a] + "," +
                                  B.mor_names[a2] + ")");
      }
    }
  }
  return r;
}

/// The collage's own injections as a cocone.
template <class D>
Cocone<D> injection_cocone(const Collage<D>& c) {
  Cocone<D> k{c.total, c.inj, {}};
  for (const auto& cell : c.inj_cell) k.leg_cells.push_back(cell.witness);
  return k;
}

template <class D>
bool restricts_to(const Collage<D>& c, const Cocone<D>& k, const typename D::HMor& h) {
  const FinCat& B = c.F.base;
  for (int b = 0; b < B.object_count(); ++b) {
    if (!(D::hcomp(h, c.inj[b]) == k.legs[b])) return false;
  }
  if constexpr (!D::propositional) {
    for (int a = 0; a < B.morphism_count(); ++a) {
      if (!(hcompose(vid_cell<D>(h), c.inj_cell[a]).witness == k.leg_cells[a])) return false;
    }
  }
  return true;
}

/// The unique h: GF -> Y with h i_b = f_b and id(h) i_beta = f_beta.
template <class D>
typename D::HMor mediate(const Collage<D>& c, const Cocone<D>& k) {
  const FinCat& B = c.F.base;
  if (static_cast<int>(k.legs.size()) != B.object_count()) throw BoundaryMismatch("cocone leg count");
  for (int b = 0; b < B.object_count(); ++b) {
    if (!(D::hsrc(k.legs[b]) == c.F.carrier[b]) || !(D::htgt(k.legs[b]) == k.apex)) {
      throw BoundaryMismatch("cocone leg endpoints at " + B.objects[b]);
    }
  }
  for (int a = 0; a < B.morphism_count(); ++a) {
    if (auto f = cell_failure(k.leg_cell(c.F, a))) throw NoMediator("cocone cell at " + B.mor_names[a] + ": " + *f);
  }
  typename D::HMor h;
  if constexpr (std::is_same_v<D, PosD> || std::is_same_v<D, TopD>) {
    std::vector<int> map;
    for (auto [b, x] : c.index) map.push_back(k.legs[b](x));
    if constexpr (std::is_same_v<D, PosD>) {
      if (auto f = monotone_failure(c.total, k.apex, map)) throw NoMediator(*f);
      h = MonotoneMap{c.total, k.apex, std::move(map)};
    } else {
      if (auto f = continuity_failure(c.total, k.apex, map)) throw NoMediator(*f);
      h = ContinuousMap{c.total, k.apex, std::move(map)};
    }
  } else if constexpr (std::is_same_v<D, LocD>) {
    std::vector<int> inv;
    for (int y = 0; y < k.apex.size(); ++y) {
      std::vector<int> t;
      for (int b = 0; b < B.object_count(); ++b) t.push_back(k.legs[b].inverse[y]);
      int idx = -1;
      for (int i = 0; i < static_cast<int>(c.family.size()); ++i) {
        if (c.family[i] == t) idx = i;
      }
      if (idx < 0) throw NoMediator("the family of inverse images of " + k.apex.names[y] + " is not descending");
      inv.push_back(idx);
    }
    if (auto f = frame_hom_failure(k.apex, c.total, inv)) throw NoMediator(*f);
    h = make_locale_map(c.total, k.apex, std::move(inv));
  } else {
    std::vector<int> obj, mor;
    for (auto [b, x] : c.index) obj.push_back(k.legs[b].obj[x]);
    for (auto [a, u] : c.mor_index) {
      mor.push_back(B.is_identity(a) ? k.legs[B.dom[a]].mor[u] : k.leg_cells[a][u]);
    }
    if (auto f = functor_failure(c.total, k.apex, obj, mor)) throw NoMediator(*f);
    h = Functor{c.total, k.apex, std::move(obj), std::move(mor)};
  }
  if (!restricts_to(c, k, h)) throw NoMediator("candidate does not restrict to the cocone");
  return h;
}

/// Number of horizontal morphisms GF -> Y restricting to the cocone, by
/// exhaustive search.
template <class D>
int count_mediators(const Collage<D>& c, const Cocone<D>& k) {
  int n = 0;
  for (const auto& h : D::hmors(c.total, k.apex)) {
    if (restricts_to(c, k, h)) ++n;
  }
  return n;
}

/// mediate plus the exhaustive uniqueness audit when the total object has at
/// most `bound` elements.
template <class D>
typename D::HMor mediate_checked(const Collage<D>& c, const Cocone<D>& k, int bound = 6) {
  auto h = mediate(c, k);
  if (D::size(c.total) <= bound && D::size(k.apex) <= bound) {
    int n = count_mediators(c, k);
    if (n != 1) throw NonUnique(std::to_string(n) + " morphisms restrict to the cocone");
  }
  return h;
}

/// The cell theta: f -> g between mediators induced by a family of special
/// cells theta_b: id(Fb) -> id(Y) over (f_b, g_b). Returns its witness.
template <class D>
typename D::Witness mediate_modification(const Collage<D>& c, const typename D::HMor& f, const typename D::HMor& g,
                                         const std::vector<typename D::Witness>& theta) {
  const FinCat& B = c.F.base;
  const auto& Y = D::htgt(f);
  typename D::Witness w{};
  if constexpr (D::propositional) {
    auto cell = Cell<D>{f, g, D::vid(c.total), D::vid(Y), {}};
    if (auto fail = cell_failure(cell)) throw NoMediator("no cell between the mediators: " + *fail);
    for (int b = 0; b < B.object_count(); ++b) {
      Cell<D> tb{D::hcomp(f, c.inj[b]), D::hcomp(g, c.inj[b]), D::vid(c.F.carrier[b]), D::vid(Y), {}};
      if (auto fail = cell_failure(tb)) throw NoMediator("component at " + B.objects[b] + ": " + *fail);
    }
    (void)theta;
  } else {
    // theta on a morphism (beta,u): (x,b) -> (x',b') is theta_b'(id) after f(beta,u).
    const FinCat& T = c.total;
    w.assign(static_cast<std::size_t>(T.morphism_count()), -1);
    for (int a = 0; a < T.morphism_count(); ++a) {
      auto [b2, x2] = c.index[T.cod[a]];
      int comp_at_target = theta[b2][c.F.carrier[b2].ident(x2)];
      w[a] = Y.compose(comp_at_target, f.mor[a]);
    }
    Cell<D> cell{f, g, D::vid(c.total), D::vid(Y), w};
    if (auto fail = cell_failure(cell)) throw NoMediator("assembled family is not natural: " + *fail);
    for (int b = 0; b < B.object_count(); ++b) {
      if (!(hcompose(cell, vid_cell<D>(c.inj[b])).witness == theta[b])) {
        throw NoMediator("assembled cell does not restrict to the component at " + B.objects[b]);
      }
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// fibers: pullback of p: X -> GF along i_b

template <class D>
struct Fiber {
  typename D::Object object;
  typename D::HMor map;   // X_b -> Fb
  typename D::HMor incl;  // X_b -> X
};

inline Fiber<PosD> fiber(const Collage<PosD>& c, const MonotoneMap& p, int b) {
  Mask s = 0;
  for (int x = 0; x < p.src.size(); ++x) {
    if (c.index[p(x)].first == b) s |= bit(x);
  }
  FinPoset sub = subposet(p.src, s);
  std::vector<int> keep = bits_of(s);
  std::vector<int> to_fb, incl;
  for (int x : keep) {
    to_fb.push_back(c.index[p(x)].second);
    incl.push_back(x);
  }
  return Fiber<PosD>{sub, MonotoneMap{sub, c.F.carrier[b], std::move(to_fb)}, MonotoneMap{sub, p.src, std::move(incl)}};
}

inline Fiber<TopD> fiber(const Collage<TopD>& c, const ContinuousMap& p, int b) {
  Mask s = 0;
  for (int x = 0; x < p.src.size(); ++x) {
    if (c.index[p(x)].first == b) s |= bit(x);
  }
  FinSpace sub = subspace(p.src, s);
  std::vector<int> keep = bits_of(s);
  std::vector<int> to_fb, incl;
  for (int x : keep) {
    to_fb.push_back(c.index[p(x)].second);
    incl.push_back(x);
  }
  return Fiber<TopD>{sub, make_continuous(sub, c.F.carrier[b], std::move(to_fb)),
                     make_continuous(sub, p.src, std::move(incl))};
}

/// Pushout of frames along the surjection i_b^*: the quotient of X by the
/// congruence generated by p^*(w) ~ p^*(w') whenever w_b = w'_b.
inline Fiber<LocD> fiber(const Collage<LocD>& c, const LocaleMap& p, int b) {
  const int n = static_cast<int>(c.family.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (c.family[i][b] == c.family[j][b]) pairs.emplace_back(p.inverse[i], p.inverse[j]);
    }
  }
  auto [q, cls] = quotient_frame(p.src, pairs);
  const FinFrame& Fb = c.F.carrier[b];
  std::vector<int> pb(static_cast<std::size_t>(Fb.size()), -1);
  for (int i = 0; i < n; ++i) {
    int y = c.family[i][b];
    if (pb[y] < 0) pb[y] = cls[p.inverse[i]];
  }
  for (int v : pb) {
    if (v < 0) throw Error("collage projection is not surjective");
  }
  return Fiber<LocD>{q, make_locale_map(q, Fb, std::move(pb)), make_locale_map(q, p.src, cls)};
}

/// Objects over b and the morphisms lying over id_b.
inline Fiber<CatD> fiber(const Collage<CatD>& c, const Functor& p, int b) {
  const FinCat& X = p.src;
  const FinCat& B = c.F.base;
  std::vector<int> objs, mors;
  for (int x = 0; x < X.object_count(); ++x) {
    if (c.index[p.obj[x]].first == b) objs.push_back(x);
  }
  for (int a = 0; a < X.morphism_count(); ++a) {
    if (c.mor_index[p.mor[a]].first == B.ident(b)) mors.push_back(a);
  }
  std::vector<int> order;
  FinCat sub = detail::subcategory(X, objs, mors, &order);
  std::vector<int> o1, m1, o2, m2;
  for (int x : objs) {
    o1.push_back(c.index[p.obj[x]].second);
    o2.push_back(x);
  }
  for (int a : order) {
    m1.push_back(c.mor_index[p.mor[a]].second);
    m2.push_back(a);
  }
  return Fiber<CatD>{sub, make_functor(sub, c.F.carrier[b], std::move(o1), std::move(m1)),
                     make_functor(sub, X, std::move(o2), std::move(m2))};
}

/// Checks the pullback property of a fiber against every test object W:
/// pairs (g: W -> X, h: W -> Fb) with p g = i_b h correspond to maps W -> X_b.
template <class D>
Report check_fiber_pullback(const Collage<D>& c, const typename D::HMor& p, int b,
                            const std::vector<typename D::Object>& tests) {
  Report r{"fiber pullback", 0, {}};
  auto fb = fiber(c, p, b);
  ++r.checked;
  if (!(D::hcomp(p, fb.incl) == D::hcomp(c.inj[b], fb.map))) r.fail("square does not commute");
  for (const auto& w : tests) {
    auto into_fiber = D::hmors(w, fb.object);
    int cones = 0;
    for (const auto& g : D::hmors(w, D::hsrc(p))) {
      for (const auto& h : D::hmors(w, c.F.carrier[b])) {
        if (!(D::hcomp(p, g) == D::hcomp(c.inj[b], h))) continue;
        ++cones;
        int lifts = 0;
        for (const auto& k : into_fiber) {
          if (D::hcomp(fb.incl, k) == g && D::hcomp(fb.map, k) == h) ++lifts;
        }
        ++r.checked;
        if (lifts != 1) r.fail(std::to_string(lifts) + " lifts of a commuting cone");
      }
    }
    ++r.checked;
    if (cones != static_cast<int>(into_fiber.size())) r.fail("cone count differs from maps into the fiber");
  }
  return r;
}

// ---------------------------------------------------------------------------
// L_b: zero padding, left adjoint to evaluation at b

template <class D>
typename D::VMor unique_vertical(const typename D::Object& a, const typename D::Object& b) {
  auto vs = D::vmors(a, b, 0);
  if (vs.size() != 1) throw Error("expected a unique vertical morphism");
  return vs.front();
}

/// (L_b X)_b = X and (L_b X)_b' = O elsewhere, with the unique verticals.
template <class D>
LaxFunctor<D> pad_left(const FinCat& base, int b, const typename D::Object& x) {
  if (!is_thin_skeletal(base)) throw Unsupported("zero padding over a base that is not a poset");
  const auto z = D::zero();
  LaxFunctor<D> F{base, {}, {}, {}};
  for (int c = 0; c < base.object_count(); ++c) F.carrier.push_back(c == b ? x : z);
  for (int a = 0; a < base.morphism_count(); ++a) {
    if (base.is_identity(a)) F.vertical.push_back(D::vid(F.carrier[a]));
    else F.vertical.push_back(unique_vertical<D>(F.carrier[base.dom[a]], F.carrier[base.cod[a]]));
  }
  if constexpr (!D::propositional) {
    for (int a = 0; a < base.morphism_count(); ++a) {
      for (int a2 = 0; a2 < base.morphism_count(); ++a2) {
        if (base.is_identity(a) || base.is_identity(a2) || base.cod[a] != base.dom[a2]) continue;
        F.comparison[{a, a2}] = std::vector<int>{};
      }
    }
  }
  return F;
}

/// The transformation L_b X -> G corresponding to g: X -> G_b.
template <class D>
LaxTransformation<D> pad_left_transpose(const LaxFunctor<D>& padded, int b, const LaxFunctor<D>& G,
                                        const typename D::HMor& g) {
  std::vector<typename D::HMor> comps;
  for (int c = 0; c < padded.base.object_count(); ++c) {
    if (c == b) comps.push_back(g);
    else comps.push_back(D::hmors(padded.carrier[c], G.carrier[c]).at(0));
  }
  std::vector<typename D::Witness> sq(static_cast<std::size_t>(padded.base.morphism_count()));
  for (int a = 0; a < padded.base.morphism_count(); ++a) {
    if (padded.base.is_identity(a)) {
      sq[a] = vid_cell<D>(comps[a]).witness;
      continue;
    }
    auto cs = cells_with_boundary<D>(comps[padded.base.dom[a]], padded.at(a), G.at(a), comps[padded.base.cod[a]]);
    if (cs.empty()) throw NoMediator("no square for the padded transformation");
    sq[a] = cs.front().witness;
  }
  return LaxTransformation<D>{padded, G, std::move(comps), std::move(sq)};
}

// ---------------------------------------------------------------------------
// R_k: right adjoints to evaluation over a vertical l: D0 -|-> D1

/// The 2-indexed lax functor (D0 -|-> D1, l).
template <class D>
LaxFunctor<D> two_functor(const typename D::VMor& l) {
  return lax_from_poset<D>(chain_poset(2), {D::vsrc(l), D::vtgt(l)}, {{{0, 1}, l}});
}

/// R_0(q) = (Y -|-> D1, l . q_*) with structure (q, id); R_1(q) = (D0 -|-> Y,
/// q^* . l) with structure (id, q).
template <class D>
LaxSlice<D> right_transport(int k, const typename D::VMor& l, const typename D::HMor& q) {
  auto L = two_functor<D>(l);
  const int arrow = poset_arrow(L.base, 0, 1);
  if (k == 0) {
    if (!(D::htgt(q) == D::vsrc(l))) throw BoundaryMismatch("R_0 needs a morphism over the source of l");
    auto cd = companion_data<D>(q);
    auto v = D::vcomp(l, cd.fstar);
    auto M = two_functor<D>(v);
    // l . q_* -> l . id(D0) -> l
    auto cell = hcompose(rho_cell<D>(l), vcompose(id_cell<D>(l), cd.eps));
    std::vector<typename D::Witness> sq(3);
    sq[0] = vid_cell<D>(q).witness;
    sq[1] = vid_cell<D>(D::hid(D::vtgt(l))).witness;
    sq[arrow] = cell.witness;
    return LaxSlice<D>{M, LaxTransformation<D>{M, L, {q, D::hid(D::vtgt(l))}, std::move(sq)}};
  }
  if (!(D::htgt(q) == D::vtgt(l))) throw BoundaryMismatch("R_1 needs a morphism over the target of l");
  auto dd = conjoint_data<D>(q);
  auto v = D::vcomp(dd.fupperstar, l);
  auto M = two_functor<D>(v);
  // q^* . l -> id(D1) . l -> l
  auto cell = hcompose(lambda_cell<D>(l), vcompose(dd.beta, id_cell<D>(l)));
  std::vector<typename D::Witness> sq(3);
  sq[0] = vid_cell<D>(D::hid(D::vsrc(l))).witness;
  sq[1] = vid_cell<D>(q).witness;
  sq[arrow] = cell.witness;
  return LaxSlice<D>{M, LaxTransformation<D>{M, L, {D::hid(D::vsrc(l)), q}, std::move(sq)}};
}

}  // namespace dblcat

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dblcat/double_category.hpp"

namespace dblcat {

/// Normal lax functor B -> D over a finite category B. Order-valued instances
/// require B to be a poset (as a category); then one vertical is stored per
/// strict pair b < b'. Verticals on identities are the vertical identities.
/// `comparison` holds the witness of the comparison cell
///   F(beta2) . F(beta) -> F(beta2 beta)
/// for every composable pair of non-identity morphisms; it is unused for
/// propositional instances.
template <class D>
struct LaxFunctor {
  FinCat base;
  std::vector<typename D::Object> carrier;
  std::vector<typename D::VMor> vertical;
  std::map<std::pair<int, int>, typename D::Witness> comparison;

  const typename D::VMor& at(int beta) const { return vertical[beta]; }
  friend bool operator==(const LaxFunctor&, const LaxFunctor&) = default;
};

/// True when the category is a poset: at most one morphism per ordered pair and
/// no two distinct objects with morphisms both ways.
inline bool is_thin_skeletal(const FinCat& c) {
  for (int x = 0; x < c.object_count(); ++x) {
    for (int y = 0; y < c.object_count(); ++y) {
      auto h = c.hom(x, y);
      if (h.size() > 1) return false;
      if (x != y && !h.empty() && !c.hom(y, x).empty()) return false;
    }
  }
  return true;
}

inline FinPoset base_order(const FinCat& c) {
  FinPoset p{c.objects, std::vector<Mask>(static_cast<std::size_t>(c.object_count()), 0)};
  for (int a = 0; a < c.morphism_count(); ++a) p.up[c.dom[a]] |= bit(c.cod[a]);
  return p;
}

/// Lax functor from a poset base and one vertical per strict pair.
template <class D>
LaxFunctor<D> lax_from_poset(const FinPoset& base, std::vector<typename D::Object> carrier,
                             const std::map<std::pair<int, int>, typename D::VMor>& verticals) {
  LaxFunctor<D> F{poset_cat(base), std::move(carrier), {}, {}};
  for (int a = 0; a < F.base.morphism_count(); ++a) {
    if (F.base.is_identity(a)) {
      F.vertical.push_back(D::vid(F.carrier[a]));
    } else {
      auto it = verticals.find({F.base.dom[a], F.base.cod[a]});
      if (it == verticals.end()) {
        throw LawViolation("lax functor shape", "missing vertical for " + F.base.mor_names[a]);
      }
      F.vertical.push_back(it->second);
    }
  }
  return F;
}

template <class D>
const typename D::VMor& vertical_between(const LaxFunctor<D>& F, int b, int b2) {
  int a = poset_arrow(F.base, b, b2);
  if (a < 0) throw BoundaryMismatch("no base morphism between the given objects");
  return F.vertical[a];
}

/// The comparison cell for a composable pair; pairs involving an identity use
/// the canonical unit isomorphisms.
template <class D>
Cell<D> comparison_cell(const LaxFunctor<D>& F, int beta, int beta2) {
  const FinCat& B = F.base;
  if (B.is_identity(beta)) return rho_cell<D>(F.at(beta2));
  if (B.is_identity(beta2)) return lambda_cell<D>(F.at(beta));
  const int comp = B.compose(beta2, beta);
  typename D::Witness w{};
  if constexpr (!D::propositional) w = F.comparison.at({beta, beta2});
  return Cell<D>{D::hid(F.carrier[B.dom[beta]]), D::hid(F.carrier[B.cod[beta2]]),
                 D::vcomp(F.at(beta2), F.at(beta)), F.at(comp), std::move(w)};
}

namespace detail {

/// Composite of u in F(beta)(x, y) with v in F(beta2)(y, z), landing in
/// F(beta2 beta)(x, z).
inline int cat_combine(const LaxFunctor<CatD>& F, const std::map<std::pair<int, int>, CoendTable>& tables, int beta,
                       int u, int beta2, int v) {
  const FinCat& B = F.base;
  if (B.is_identity(beta)) return F.at(beta2).act_left(u, v);
  if (B.is_identity(beta2)) return F.at(beta).act_right(u, v);
  return F.comparison.at({beta, beta2})[tables.at({beta, beta2}).lookup(u, v)];
}

template <class D>
std::optional<std::string> vertical_failure(const typename D::VMor& m) {
  if constexpr (std::is_same_v<D, PosD>) return ideal_failure(m.src, m.tgt, m.rel);
  else if constexpr (std::is_same_v<D, TopD>) return open_map_failure(m.src, m.tgt, m.map);
  else if constexpr (std::is_same_v<D, LocD>) return meet_map_failure(m.src, m.tgt, m.map);
  else return profunctor_failure(m);
}

}  // namespace detail

template <class D>
Report validate_lax_functor(const LaxFunctor<D>& F) {
  Report r{std::string("lax functor ") + tag_name(D::tag), 0, {}};
  const FinCat& B = F.base;
  ++r.checked;
  if (auto f = cat_failure(B)) {
    r.fail("base: " + *f);
    return r;
  }
  if constexpr (D::propositional) {
    ++r.checked;
    if (!is_thin_skeletal(B)) {
      r.fail("base: must be a poset for this instance");
      return r;
    }
  }
  ++r.checked;
  if (static_cast<int>(F.carrier.size()) != B.object_count() ||
      static_cast<int>(F.vertical.size()) != B.morphism_count()) {
    r.fail("shape: carrier or vertical count differs from the base");
    return r;
  }
  for (int a = 0; a < B.morphism_count(); ++a) {
    ++r.checked;
    const auto& m = F.at(a);
    if (!(D::vsrc(m) == F.carrier[B.dom[a]]) || !(D::vtgt(m) == F.carrier[B.cod[a]])) {
      r.fail("endpoints of the vertical at " + B.mor_names[a]);
      return r;
    }
    if (auto f = detail::vertical_failure<D>(m)) {
      r.fail("vertical at " + B.mor_names[a] + ": " + *f);
      continue;
    }
    if (B.is_identity(a) && !(m == D::vid(F.carrier[a]))) r.fail("normal: vertical at " + B.mor_names[a]);
  }
  if (!r.ok()) return r;
  if constexpr (D::propositional) {
    for (int a = 0; a < B.morphism_count(); ++a) {
      for (int a2 = 0; a2 < B.morphism_count(); ++a2) {
        if (B.is_identity(a) || B.is_identity(a2) || B.cod[a] != B.dom[a2]) continue;
        ++r.checked;
        auto c = comparison_cell(F, a, a2);
        if (auto f = cell_failure(c)) {
          r.fail("comparison at (" + B.objects[B.dom[a]] + "," + B.objects[B.cod[a]] + "," + B.objects[B.cod[a2]] +
                 "): " + *f);
        }
      }
    }
  } else {
    std::map<std::pair<int, int>, CoendTable> tables;
    for (int a = 0; a < B.morphism_count(); ++a) {
      for (int a2 = 0; a2 < B.morphism_count(); ++a2) {
        if (B.is_identity(a) || B.is_identity(a2) || B.cod[a] != B.dom[a2]) continue;
        ++r.checked;
        if (!F.comparison.count({a, a2})) {
          r.fail("comparison missing for (" + B.mor_names[a] + "," + B.mor_names[a2] + ")");
          continue;
        }
        auto c = comparison_cell(F, a, a2);
        if (auto f = cell_failure(c)) {
          r.fail("comparison for (" + B.mor_names[a] + "," + B.mor_names[a2] + "): " + *f);
          continue;
        }
        tables[{a, a2}] = prof_compose(F.at(a), F.at(a2)).second;
      }
    }
    if (!r.ok()) return r;
    // Coherence: the induced composition of elements is associative.
    const int M = B.morphism_count();
    for (int a = 0; a < M; ++a) {
      for (int b = 0; b < M; ++b) {
        if (B.cod[a] != B.dom[b]) continue;
        for (int c = 0; c < M; ++c) {
          if (B.cod[b] != B.dom[c]) continue;
          if (B.is_identity(a) && B.is_identity(b) && B.is_identity(c)) continue;
          const auto& Fa = F.at(a);
          const auto& Fb = F.at(b);
          const auto& Fc = F.at(c);
          for (int u = 0; u < Fa.size(); ++u) {
            for (int v = 0; v < Fb.size(); ++v) {
              if (Fb.x[v] != Fa.xp[u]) continue;
              for (int w = 0; w < Fc.size(); ++w) {
                if (Fc.x[w] != Fb.xp[v]) continue;
                ++r.checked;
                int lhs = detail::cat_combine(F, tables, B.compose(b, a),
                                              detail::cat_combine(F, tables, a, u, b, v), c, w);
                int rhs = detail::cat_combine(F, tables, a, u, B.compose(c, b),
                                              detail::cat_combine(F, tables, b, v, c, w));
                if (lhs != rhs) {
                  r.fail("coherence at (" + B.mor_names[a] + "," + B.mor_names[b] + "," + B.mor_names[c] +
                         ") on (" + Fa.names[u] + "," + Fb.names[v] + "," + Fc.names[w] + ")");
                }
              }
            }
          }
        }
      }
    }
  }
  return r;
}

template <class D>
void require_lax_functor(const LaxFunctor<D>& F) {
  auto r = validate_lax_functor(F);
  if (!r.ok()) {
    const auto& f = r.failures.front();
    auto colon = f.find(':');
    throw LawViolation("lax functor " + f.substr(0, colon), colon == std::string::npos ? f : f.substr(colon + 2));
  }
}

/// Terminal object of D: the one-element poset, the one-point space, the
/// two-element frame, the one-morphism category.
template <class D>
typename D::Object terminal_object() {
  if constexpr (std::is_same_v<D, PosD>) return chain_poset(1);
  else if constexpr (std::is_same_v<D, TopD>) return point_space();
  else if constexpr (std::is_same_v<D, LocD>) return chain_frame(2);
  else return terminal_cat();
}

/// The unique horizontal morphism into the terminal object.
template <class D>
typename D::HMor to_terminal(const typename D::Object& x) {
  auto hs = D::hmors(x, terminal_object<D>());
  if (hs.size() != 1) throw Error("terminal object: expected exactly one morphism");
  return hs.front();
}

/// Terminal lax functor T over B: Tb = T and T(beta) = id(T).
template <class D>
LaxFunctor<D> terminal_lax(const FinCat& base) {
  LaxFunctor<D> T{base, {}, {}, {}};
  const auto t = terminal_object<D>();
  T.carrier.assign(static_cast<std::size_t>(base.object_count()), t);
  T.vertical.assign(static_cast<std::size_t>(base.morphism_count()), D::vid(t));
  if constexpr (!D::propositional) {
    for (int a = 0; a < base.morphism_count(); ++a) {
      for (int a2 = 0; a2 < base.morphism_count(); ++a2) {
        if (base.is_identity(a) || base.is_identity(a2) || base.cod[a] != base.dom[a2]) continue;
        T.comparison[{a, a2}] = std::vector<int>{0};
      }
    }
  }
  return T;
}

// ---------------------------------------------------------------------------
// lax transformations and modifications

/// Every normal lax functor over a poset with the given carriers, for the
/// order-enriched instances (comparisons are then properties).
template <class D>
std::vector<LaxFunctor<D>> all_lax_functors(const FinPoset& base, const std::vector<typename D::Object>& carrier) {
  static_assert(D::propositional, "enumeration of comparison data is not supported");
  FinCat B = poset_cat(base);
  std::vector<int> arrows;
  std::vector<std::vector<typename D::VMor>> choices;
  for (int a = 0; a < B.morphism_count(); ++a) {
    if (B.is_identity(a)) continue;
    arrows.push_back(a);
    choices.push_back(D::vmors(carrier[B.dom[a]], carrier[B.cod[a]], 0));
  }
  std::vector<LaxFunctor<D>> out;
  std::vector<int> radix;
  for (const auto& c : choices) radix.push_back(static_cast<int>(c.size()));
  auto visit = [&](const std::vector<int>& t) {
    std::map<std::pair<int, int>, typename D::VMor> vs;
    for (std::size_t i = 0; i < arrows.size(); ++i) vs[{B.dom[arrows[i]], B.cod[arrows[i]]}] = choices[i][t[i]];
    auto F = lax_from_poset<D>(base, carrier, vs);
    if (validate_lax_functor(F).ok()) out.push_back(std::move(F));
    return true;
  };
  if (radix.empty()) visit({});
  else if (std::find(radix.begin(), radix.end(), 0) == radix.end()) for_each_tuple(radix, visit);
  return out;
}

/// Horizontal lax transformation f: F -> G: components f_b and cells
/// f_beta: F(beta) -> G(beta) over (f_b, f_b').
template <class D>
struct LaxTransformation {
  LaxFunctor<D> src;
  LaxFunctor<D> tgt;
  std::vector<typename D::HMor> component;
  std::vector<typename D::Witness> square;

  Cell<D> square_cell(int beta) const {
    const FinCat& B = src.base;
    return Cell<D>{component[B.dom[beta]], component[B.cod[beta]], src.at(beta), tgt.at(beta), square[beta]};
  }
  friend bool operator==(const LaxTransformation&, const LaxTransformation&) = default;
};

/// Transformation with the given components; for propositional instances the
/// squares carry no data.
template <class D>
LaxTransformation<D> transformation(const LaxFunctor<D>& F, const LaxFunctor<D>& G,
                                    std::vector<typename D::HMor> comps, std::vector<typename D::Witness> squares = {}) {
  LaxTransformation<D> t{F, G, std::move(comps), std::move(squares)};
  if (t.square.empty()) {
    t.square.resize(static_cast<std::size_t>(F.base.morphism_count()));
    if constexpr (!D::propositional) {
      for (int a = 0; a < F.base.object_count(); ++a) t.square[a] = t.component[a].mor;
    }
  }
  return t;
}

template <class D>
Report validate_transformation(const LaxTransformation<D>& t) {
  Report r{std::string("lax transformation ") + tag_name(D::tag), 0, {}};
  const FinCat& B = t.src.base;
  ++r.checked;
  if (!(t.tgt.base == B) || static_cast<int>(t.component.size()) != B.object_count() ||
      static_cast<int>(t.square.size()) != B.morphism_count()) {
    r.fail("shape: base or component count");
    return r;
  }
  for (int b = 0; b < B.object_count(); ++b) {
    ++r.checked;
    if (!(D::hsrc(t.component[b]) == t.src.carrier[b]) || !(D::htgt(t.component[b]) == t.tgt.carrier[b])) {
      r.fail("endpoints of the component at " + B.objects[b]);
      return r;
    }
  }
  for (int a = 0; a < B.morphism_count(); ++a) {
    ++r.checked;
    auto c = t.square_cell(a);
    if (B.is_identity(a)) {
      if (!(c == vid_cell<D>(t.component[a]))) r.fail("normal: square at " + B.mor_names[a]);
      continue;
    }
    if (auto f = cell_failure(c)) r.fail("square at " + B.mor_names[a] + ": " + *f);
  }
  if (!r.ok()) return r;
  if constexpr (!D::propositional) {
    for (int a = 0; a < B.morphism_count(); ++a) {
      for (int a2 = 0; a2 < B.morphism_count(); ++a2) {
        if (B.is_identity(a) || B.is_identity(a2) || B.cod[a] != B.dom[a2]) continue;
        ++r.checked;
        auto lhs = hcompose(t.square_cell(B.compose(a2, a)), comparison_cell(t.src, a, a2));
        auto rhs = hcompose(comparison_cell(t.tgt, a, a2), vcompose(t.square_cell(a2), t.square_cell(a)));
        if (!(lhs == rhs)) r.fail("compatibility with comparisons at (" + B.mor_names[a] + "," + B.mor_names[a2] + ")");
      }
    }
  }
  return r;
}

template <class D>
LaxTransformation<D> identity_transformation(const LaxFunctor<D>& F) {
  std::vector<typename D::HMor> comps;
  for (const auto& x : F.carrier) comps.push_back(D::hid(x));
  std::vector<typename D::Witness> sq(static_cast<std::size_t>(F.base.morphism_count()));
  for (int a = 0; a < F.base.morphism_count(); ++a) sq[a] = id_cell<D>(F.at(a)).witness;
  return LaxTransformation<D>{F, F, std::move(comps), std::move(sq)};
}

/// g after f.
template <class D>
LaxTransformation<D> compose(const LaxTransformation<D>& g, const LaxTransformation<D>& f) {
  if (!(f.tgt == g.src)) throw BoundaryMismatch("transformation composite: target of first is not source of second");
  std::vector<typename D::HMor> comps;
  for (std::size_t b = 0; b < f.component.size(); ++b) comps.push_back(D::hcomp(g.component[b], f.component[b]));
  std::vector<typename D::Witness> sq(f.square.size());
  for (int a = 0; a < static_cast<int>(f.square.size()); ++a) {
    sq[a] = hcompose(g.square_cell(a), f.square_cell(a)).witness;
  }
  return LaxTransformation<D>{f.src, g.tgt, std::move(comps), std::move(sq)};
}

/// Every transformation F -> G (components enumerated, cells enumerated).
template <class D>
std::vector<LaxTransformation<D>> all_transformations(const LaxFunctor<D>& F, const LaxFunctor<D>& G) {
  const FinCat& B = F.base;
  std::vector<std::vector<typename D::HMor>> options;
  for (int b = 0; b < B.object_count(); ++b) options.push_back(D::hmors(F.carrier[b], G.carrier[b]));
  std::vector<LaxTransformation<D>> out;
  std::vector<int> radix;
  for (const auto& o : options) radix.push_back(static_cast<int>(o.size()));
  if (B.object_count() == 0) radix.clear();
  auto visit = [&](const std::vector<int>& choice) {
    std::vector<typename D::HMor> comps;
    for (int b = 0; b < B.object_count(); ++b) comps.push_back(options[b][choice[b]]);
    // Enumerate squares per non-identity morphism.
    std::vector<std::vector<typename D::Witness>> sq_opts(static_cast<std::size_t>(B.morphism_count()));
    bool dead = false;
    for (int a = 0; a < B.morphism_count() && !dead; ++a) {
      if (B.is_identity(a)) {
        sq_opts[a].push_back(vid_cell<D>(comps[a]).witness);
        continue;
      }
      for (auto& c : cells_with_boundary<D>(comps[B.dom[a]], F.at(a), G.at(a), comps[B.cod[a]])) {
        sq_opts[a].push_back(std::move(c.witness));
      }
      if (sq_opts[a].empty()) dead = true;
    }
    if (dead) return true;
    std::vector<int> rs;
    for (const auto& o : sq_opts) rs.push_back(static_cast<int>(o.size()));
    for_each_tuple(rs, [&](const std::vector<int>& sc) {
      std::vector<typename D::Witness> sq;
      for (int a = 0; a < B.morphism_count(); ++a) sq.push_back(sq_opts[a][sc[a]]);
      LaxTransformation<D> t{F, G, comps, std::move(sq)};
      // propositional squares are cells by construction
      if (D::propositional || validate_transformation(t).ok()) out.push_back(std::move(t));
      return true;
    });
    return true;
  };
  if (radix.empty()) visit({});
  else for_each_tuple(radix, visit);
  return out;
}

/// Modification theta: f -> g between transformations F -> G; components are
/// special cells id(Fb) -> id(Gb) over (f_b, g_b).
template <class D>
struct Modification {
  LaxTransformation<D> src;
  LaxTransformation<D> tgt;
  std::vector<typename D::Witness> component;

  Cell<D> component_cell(int b) const {
    return Cell<D>{src.component[b], tgt.component[b], D::vid(src.src.carrier[b]), D::vid(src.tgt.carrier[b]),
                   component[b]};
  }
};

/// Checks each component and the cylinder condition
///   lambda . (theta_b' . f_beta) . lambda^-1 = rho . (g_beta . theta_b) . rho^-1.
template <class D>
Report validate_modification(const Modification<D>& th) {
  Report r{std::string("modification ") + tag_name(D::tag), 0, {}};
  const FinCat& B = th.src.src.base;
  ++r.checked;
  if (!(th.src.src == th.tgt.src) || !(th.src.tgt == th.tgt.tgt) ||
      static_cast<int>(th.component.size()) != B.object_count()) {
    r.fail("shape: boundary transformations or component count");
    return r;
  }
  for (int b = 0; b < B.object_count(); ++b) {
    ++r.checked;
    if (auto f = cell_failure(th.component_cell(b))) r.fail("component at " + B.objects[b] + ": " + *f);
  }
  if (!r.ok()) return r;
  for (int a = 0; a < B.morphism_count(); ++a) {
    if (B.is_identity(a)) continue;
    ++r.checked;
    const auto& Fa = th.src.src.at(a);
    const auto& Ga = th.src.tgt.at(a);
    auto lhs = hcompose(lambda_cell<D>(Ga),
                        hcompose(vcompose(th.component_cell(B.cod[a]), th.src.square_cell(a)), lambda_inv_cell<D>(Fa)));
    auto rhs = hcompose(rho_cell<D>(Ga),
                        hcompose(vcompose(th.tgt.square_cell(a), th.component_cell(B.dom[a])), rho_inv_cell<D>(Fa)));
    if (!(lhs == rhs)) r.fail("cylinder condition at " + B.mor_names[a]);
    if (auto f = cell_failure(lhs)) r.fail("cylinder composite at " + B.mor_names[a] + " is not a cell: " + *f);
  }
  return r;
}

// ---------------------------------------------------------------------------
// slices

/// Object of the slice of horizontal morphisms over a fixed base object.
template <class D>
struct SliceObject {
  typename D::Object object;
  typename D::HMor map;

  const typename D::Object& base() const { return D::htgt(map); }
  friend bool operator==(const SliceObject&, const SliceObject&) = default;
};

template <class D>
SliceObject<D> identity_slice(const typename D::Object& d) {
  return SliceObject<D>{d, D::hid(d)};
}

/// Every morphism a -> b over the common base, as horizontal morphisms.
template <class D>
std::vector<typename D::HMor> enumerate_slice_morphisms(const SliceObject<D>& a, const SliceObject<D>& b,
                                                        int size_bound = 64) {
  if (!(a.base() == b.base())) throw BoundaryMismatch("slice objects over different bases");
  if (D::size(a.object) > size_bound || D::size(b.object) > size_bound) throw SizeBoundExceeded("slice enumeration");
  std::vector<typename D::HMor> out;
  for (auto& h : D::hmors(a.object, b.object)) {
    if (D::hcomp(b.map, h) == a.map) out.push_back(std::move(h));
  }
  return out;
}

/// Object of the slice of normal lax functors over F.
template <class D>
struct LaxSlice {
  LaxFunctor<D> functor;
  LaxTransformation<D> map;  // functor -> over

  const LaxFunctor<D>& over() const { return map.tgt; }
};

template <class D>
Report validate_lax_slice(const LaxSlice<D>& s) {
  Report r{"lax slice", 0, {}};
  r.merge(validate_lax_functor(s.functor));
  r.merge(validate_lax_functor(s.map.tgt));
  if (!r.ok()) return r;
  ++r.checked;
  if (!(s.map.src == s.functor)) r.fail("structure map does not start at the functor");
  r.merge(validate_transformation(s.map));
  return r;
}

/// Every transformation a -> b commuting with the structure maps.
template <class D>
std::vector<LaxTransformation<D>> enumerate_lax_slice_morphisms(const LaxSlice<D>& a, const LaxSlice<D>& b) {
  std::vector<LaxTransformation<D>> out;
  for (auto& t : all_transformations(a.functor, b.functor)) {
    if (compose(b.map, t) == a.map) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace dblcat

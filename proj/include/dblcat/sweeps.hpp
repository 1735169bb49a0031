#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dblcat/exponentials.hpp"
#include "dblcat/serialize.hpp"

// Exhaustive and sampled sweeps shared by the command line `verify` command
// and the acceptance runner. Each returns a Report plus enumeration counts.

namespace dblcat {

struct Sweep {
  Report report;
  long objects = 0;  // objects enumerated
  long homs = 0;     // morphisms enumerated
  double seconds = 0;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

namespace oracle {

// Naive checks written without the library's validators, used to decide what
// the library ought to report.

/// An order isomorphism a -> b by trying every permutation.
inline bool posets_isomorphic(const FinPoset& a, const FinPoset& b) {
  const int n = a.size();
  if (n != b.size()) return false;
  std::vector<int> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) ok = a.le(i, j) == b.le(s[i], s[j]);
    }
    if (ok) return true;
  } while (std::next_permutation(s.begin(), s.end()));
  return false;
}

/// The lattice of down-closed subsets of p, ordered by inclusion.
inline FinPoset downsets_by_inclusion(const FinPoset& p) {
  std::vector<Mask> ds;
  for (Mask s = 0; s < (Mask{1} << p.size()); ++s) {
    bool closed = true;
    for (int j = 0; j < p.size() && closed; ++j) {
      if (!has(s, j)) continue;
      for (int i = 0; i < p.size() && closed; ++i) closed = !p.le(i, j) || has(s, i);
    }
    if (closed) ds.push_back(s);
  }
  FinPoset out;
  out.up.assign(ds.size(), 0);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out.names.push_back(std::to_string(ds[i]));
    for (std::size_t j = 0; j < ds.size(); ++j) {
      if ((ds[i] & ~ds[j]) == 0) out.up[i] |= bit(static_cast<int>(j));
    }
  }
  return out;
}

/// A bijection a -> b preserving and reflecting the structure and commuting
/// with the maps to the common base.
inline bool point_slices_isomorphic(const SliceObject<PosD>& a, const SliceObject<PosD>& b) {
  const int n = a.object.size();
  if (n != b.object.size()) return false;
  std::vector<int> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = b.map.map[s[i]] == a.map.map[i];
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) ok = a.object.le(i, j) == b.object.le(s[i], s[j]);
    }
    if (ok) return true;
  } while (std::next_permutation(s.begin(), s.end()));
  return false;
}

inline bool point_slices_isomorphic(const SliceObject<TopD>& a, const SliceObject<TopD>& b) {
  const int n = a.object.size();
  if (n != b.object.size() || a.object.open_count() != b.object.open_count()) return false;
  std::vector<int> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = b.map.map[s[i]] == a.map.map[i];
    for (std::size_t u = 0; u < a.object.opens.size() && ok; ++u) {
      Mask img = 0;
      for (int i = 0; i < n; ++i) {
        if (has(a.object.opens[u], i)) img |= bit(s[i]);
      }
      ok = std::find(b.object.opens.begin(), b.object.opens.end(), img) != b.object.opens.end();
    }
    if (ok) return true;
  } while (std::next_permutation(s.begin(), s.end()));
  return false;
}

/// Largest open of x inside s.
inline Mask interior(const FinSpace& x, Mask s) {
  Mask out = 0;
  for (Mask u : x.opens) {
    if ((u & ~s) == 0) out |= u;
  }
  return out;
}

inline std::optional<std::string> poset_axioms(const FinPoset& p) {
  const int n = p.size();
  for (int i = 0; i < n; ++i) {
    if (!p.le(i, i)) return "reflexive";
    for (int j = 0; j < n; ++j) {
      if (i != j && p.le(i, j) && p.le(j, i)) return "antisymmetric";
      for (int k = 0; k < n; ++k) {
        if (p.le(i, j) && p.le(j, k) && !p.le(i, k)) return "transitive";
      }
    }
  }
  return std::nullopt;
}

/// Tables agree with the greatest lower and least upper bounds of the order,
/// the bounds are right and meets distribute over joins.
inline bool frame_consistent(const FinFrame& fr) {
  const FinPoset p = fr.order();
  if (poset_axioms(p)) return false;
  const int n = p.size();
  if (fr.top < 0 || fr.top >= n || fr.bottom < 0 || fr.bottom >= n) return false;
  for (int i = 0; i < n; ++i) {
    if (!p.le(i, fr.top) || !p.le(fr.bottom, i)) return false;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int m = fr.meet(a, b);
      int j = fr.join(a, b);
      if (m < 0 || m >= n || j < 0 || j >= n) return false;
      if (!p.le(m, a) || !p.le(m, b) || !p.le(a, j) || !p.le(b, j)) return false;
      for (int c = 0; c < n; ++c) {
        if (p.le(c, a) && p.le(c, b) && !p.le(c, m)) return false;
        if (p.le(a, c) && p.le(b, c) && !p.le(j, c)) return false;
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (fr.meet(a, fr.join(b, c)) != fr.join(fr.meet(a, b), fr.meet(a, c))) return false;
      }
    }
  }
  return true;
}

/// A Pos lax functor over a chain: every vertical an upward closed relation
/// and F(j<k) . F(i<j) contained in F(i<k).
inline bool pos_lax_ok(const LaxFunctor<PosD>& F) {
  const FinCat& B = F.base;
  for (int a = 0; a < B.morphism_count(); ++a) {
    const auto& m = F.at(a);
    for (int x = 0; x < m.src.size(); ++x) {
      for (int y = 0; y < m.tgt.size(); ++y) {
        if (!m.contains(x, y)) continue;
        for (int x0 = 0; x0 < m.src.size(); ++x0) {
          for (int y1 = 0; y1 < m.tgt.size(); ++y1) {
            if (m.src.le(x0, x) && m.tgt.le(y, y1) && !m.contains(x0, y1)) return false;
          }
        }
      }
    }
    if (B.is_identity(a)) {
      for (int x = 0; x < m.src.size(); ++x) {
        for (int y = 0; y < m.tgt.size(); ++y) {
          if (m.contains(x, y) != m.src.le(x, y)) return false;
        }
      }
    }
  }
  for (int a = 0; a < B.morphism_count(); ++a) {
    for (int a2 = 0; a2 < B.morphism_count(); ++a2) {
      if (B.cod[a] != B.dom[a2]) continue;
      const auto& m = F.at(a);
      const auto& n = F.at(a2);
      const auto& c = F.at(B.compose(a2, a));
      for (int x = 0; x < m.src.size(); ++x) {
        for (int y = 0; y < m.tgt.size(); ++y) {
          for (int z = 0; z < n.tgt.size(); ++z) {
            if (m.contains(x, y) && n.contains(y, z) && !c.contains(x, z)) return false;
          }
        }
      }
    }
  }
  return true;
}

/// A set-valued lax functor (all carriers terminal): comparison maps are
/// associative on composable triples.
inline bool set_lax_associative(const LaxFunctor<CatD>& F) {
  const FinCat& B = F.base;
  auto lookup = [&](int a, int u, int a2, int v) {
    auto t = prof_compose(F.at(a), F.at(a2)).second;
    return F.comparison.at({a, a2})[t.lookup(u, v)];
  };
  for (int a = 0; a < B.morphism_count(); ++a) {
    for (int b = 0; b < B.morphism_count(); ++b) {
      for (int c = 0; c < B.morphism_count(); ++c) {
        if (B.is_identity(a) || B.is_identity(b) || B.is_identity(c)) continue;
        if (B.cod[a] != B.dom[b] || B.cod[b] != B.dom[c]) continue;
        for (int u = 0; u < F.at(a).size(); ++u) {
          for (int v = 0; v < F.at(b).size(); ++v) {
            for (int w = 0; w < F.at(c).size(); ++w) {
              int lhs = lookup(B.compose(b, a), lookup(a, u, b, v), c, w);
              int rhs = lookup(a, u, B.compose(c, b), lookup(b, v, c, w));
              if (lhs != rhs) return false;
            }
          }
        }
      }
    }
  }
  for (const auto& [key, w] : F.comparison) {
    for (int v : w) {
      if (v < 0 || v >= F.at(B.compose(key.second, key.first)).size()) return false;
    }
  }
  return true;
}

/// Naturality of a Cat cell family, element by element.
inline bool cat_family_natural(const Cell<CatD>& c) {
  const auto& m = c.left;
  const auto& n = c.right;
  const auto& w = c.witness;
  if (static_cast<int>(w.size()) != m.size()) return false;
  for (int u = 0; u < m.size(); ++u) {
    if (w[u] < 0 || w[u] >= n.size()) return false;
    if (n.x[w[u]] != c.top.obj[m.x[u]] || n.xp[w[u]] != c.bottom.obj[m.xp[u]]) return false;
  }
  for (int u = 0; u < m.size(); ++u) {
    for (int a = 0; a < m.src.morphism_count(); ++a) {
      int v = m.act_left(a, u);
      if (v >= 0 && w[v] != n.act_left(c.top.mor[a], w[u])) return false;
    }
    for (int b = 0; b < m.tgt.morphism_count(); ++b) {
      int v = m.act_right(u, b);
      if (v >= 0 && w[v] != n.act_right(w[u], c.bottom.mor[b])) return false;
    }
  }
  return true;
}

}  // namespace oracle

// ---------------------------------------------------------------------------
// collages of terminal functors

/// The collage of the terminal lax functor over B is B, for all posets B with
/// at most `max_n` elements.
inline Sweep collage_identity_sweep(int max_n) {
  Stopwatch sw;
  Sweep s{{"collage of the terminal functor (pos)", 0, {}}};
  for (int n = 0; n <= max_n; ++n) {
    for (const auto& b : poset_classes(n)) {
      ++s.objects;
      ++s.report.checked;
      auto c = collage(terminal_lax<PosD>(poset_cat(b)));
      if (!oracle::posets_isomorphic(c.total, b)) s.report.fail("not isomorphic to the base " + to_json(b).dump());
    }
  }
  s.seconds = sw.seconds();
  return s;
}

/// The Loc collage of the terminal lax functor over B is the frame of down
/// sets of B.
inline Sweep loc_terminal_sweep(int max_n) {
  Stopwatch sw;
  Sweep s{{"loc collage of the terminal functor", 0, {}}};
  for (int n = 0; n <= max_n; ++n) {
    for (const auto& b : poset_classes(n)) {
      ++s.objects;
      ++s.report.checked;
      auto c = collage(terminal_lax<LocD>(poset_cat(b)));
      auto r = conucleus_check(c);
      if (!r.ok()) s.report.merge(r);
      if (!oracle::posets_isomorphic(c.total.order(), oracle::downsets_by_inclusion(b))) {
        s.report.fail("not the down-set frame of " + to_json(b).dump());
      }
    }
  }
  s.seconds = sw.seconds();
  return s;
}

// ---------------------------------------------------------------------------
// 2-glueing

namespace detail {

template <class D>
bool slices_isomorphic(const SliceObject<D>& a, const SliceObject<D>& b) {
  if constexpr (std::is_same_v<D, PosD> || std::is_same_v<D, TopD>) {
    return oracle::point_slices_isomorphic(a, b);
  } else {
    return find_slice_iso(a, b).has_value();
  }
}

/// glue . unglue2 and unglue2 . glue on one map p into a two-collage.
template <class D>
void glue2_round_trip(const Collage<D>& cl, const typename D::HMor& p, Sweep& s, const std::string& where) {
  ++s.report.checked;
  auto u = unglue2(cl, p);
  auto v = validate_lax_slice(u);
  if (!v.ok()) {
    s.report.fail(where + ": unglued data is not a lax slice: " + v.failures.front());
    return;
  }
  auto g = glue(u, cl);
  if (!slices_isomorphic(g, SliceObject<D>{D::hsrc(p), p})) {
    s.report.fail(where + ": glue of unglue is not isomorphic over the base");
    return;
  }
  auto u2 = unglue2(cl, g.map);
  if (!find_lax_slice_iso(u2, u)) s.report.fail(where + ": unglue of glue is not isomorphic to the lax slice");
}

}  // namespace detail

/// Every space X with at most `max_n` points and every continuous p into the
/// Sierpinski space: the round trip and the interior formula for the vertical.
inline Sweep top_glue2_sweep(int max_n) {
  Stopwatch sw;
  Sweep s{{"top 2-glueing", 0, {}}};
  const auto cl = collage(terminal_lax<TopD>(poset_cat(chain_poset(2))));
  const int arrow = poset_arrow(cl.F.base, 0, 1);
  const int pt0 = cl.inj[0].map[0];
  for (int n = 0; n <= max_n; ++n) {
    for (const auto& x : all_spaces(n)) {
      ++s.objects;
      for (auto& pm : continuous_maps(x, cl.total)) {
        ++s.homs;
        ContinuousMap p{x, cl.total, pm};
        const std::string where = "X=" + to_json(x).dump() + " p=" + Codec<TopD>::hmor(p).dump();
        detail::glue2_round_trip(cl, p, s, where);
        // m(U0) = interior(U0 u X1) n X1, computed on points of X
        auto u = unglue2(cl, p);
        const auto& m = u.functor.at(arrow);
        auto f0 = fiber(cl, p, 0);
        auto f1 = fiber(cl, p, 1);
        Mask x1 = 0;
        for (int q = 0; q < x.size(); ++q) {
          if (pm[q] != pt0) x1 |= bit(q);
        }
        ++s.report.checked;
        for (int k = 0; k < m.src.open_count(); ++k) {
          Mask u0 = 0;
          for_each_bit(m.src.opens[k], [&](int a) { u0 |= bit(f0.incl.map[a]); });
          Mask want = oracle::interior(x, u0 | x1) & x1;
          Mask got = 0;
          for_each_bit(m.at(k), [&](int b) { got |= bit(f1.incl.map[b]); });
          if (want != got) {
            s.report.fail(where + ": vertical differs from the interior formula at U0=" + set_string(u0, x.names));
            break;
          }
        }
        ++s.report.checked;
        if (!(m == unglue_vertical_direct(f0.incl, f1.incl))) s.report.fail(where + ": direct formula differs");
      }
    }
  }
  s.seconds = sw.seconds();
  return s;
}

/// Pos: every X with at most `max_n` elements mapped into the collage of
/// every two-functor with total size at most 3, and every lax slice over the
/// terminal two-functor with total size at most `max_n`.
inline Sweep pos_glue2_sweep(int max_n) {
  Stopwatch sw;
  Sweep s{{"pos 2-glueing", 0, {}}};
  std::vector<LaxFunctor<PosD>> bases;
  for (int na = 0; na <= 3; ++na) {
    for (int nb = 0; na + nb <= 3; ++nb) {
      for (const auto& a : poset_classes(na)) {
        for (const auto& b : poset_classes(nb)) {
          for (auto& l : PosD::vmors(a, b)) bases.push_back(two_functor<PosD>(l));
        }
      }
    }
  }
  for (const auto& F : bases) {
    auto cl = collage(F);
    for (int n = 0; n <= max_n; ++n) {
      for (const auto& x : poset_classes(n)) {
        ++s.objects;
        for (auto& pm : monotone_maps(x, cl.total)) {
          ++s.homs;
          MonotoneMap p{x, cl.total, pm};
          detail::glue2_round_trip(cl, p, s, "F=" + lax_to_json(F).dump() + " X=" + to_json(x).dump());
        }
      }
    }
  }
  // lax slices M -> T
  const auto T = terminal_lax<PosD>(poset_cat(chain_poset(2)));
  const auto ct = collage(T);
  for (int na = 0; na <= max_n; ++na) {
    for (int nb = 0; na + nb <= max_n; ++nb) {
      for (const auto& a : poset_classes(na)) {
        for (const auto& b : poset_classes(nb)) {
          for (auto& M : all_lax_functors<PosD>(chain_poset(2), {a, b})) {
            ++s.objects;
            for (auto& t : all_transformations(M, T)) {
              ++s.homs;
              ++s.report.checked;
              LaxSlice<PosD> ls{M, t};
              if (!validate_lax_slice(ls).ok()) continue;
              auto g = glue(ls, ct);
              auto back = unglue2(ct, g.map);
              if (!find_lax_slice_iso(back, ls)) s.report.fail("unglue of glue differs for M=" + lax_to_json(M).dump());
              auto again = glue(back, ct);
              if (!oracle::point_slices_isomorphic(again, g)) s.report.fail("glue of unglue of glue differs");
            }
          }
        }
      }
    }
  }
  s.seconds = sw.seconds();
  return s;
}

/// Cat: categories with at most `max_objects` objects and `max_morphisms`
/// morphisms mapped into the collages of 1 -|-> 1 with at most two elements
/// and of the terminal two-functor.
inline Sweep cat_glue2_sweep(int max_objects, int max_morphisms) {
  Stopwatch sw;
  Sweep s{{"cat 2-glueing", 0, {}}};
  std::vector<LaxFunctor<CatD>> bases{terminal_lax<CatD>(poset_cat(chain_poset(2)))};
  for (auto& l : CatD::vmors(terminal_cat(), terminal_cat(), 2)) bases.push_back(two_functor<CatD>(l));
  for (auto& l : CatD::vmors(terminal_cat(), discrete_cat(2), 2)) bases.push_back(two_functor<CatD>(l));
  const auto xs = cat_classes(max_objects, max_morphisms);
  for (const auto& F : bases) {
    auto cl = collage(F);
    for (const auto& x : xs) {
      ++s.objects;
      for (auto& p : CatD::hmors(x, cl.total)) {
        ++s.homs;
        detail::glue2_round_trip(cl, p, s, "F=" + lax_to_json(F).dump() + " X=" + to_json(x).dump());
      }
    }
  }
  s.seconds = sw.seconds();
  return s;
}

// ---------------------------------------------------------------------------
// B-glueing

inline std::vector<std::pair<std::string, FinPoset>> bglue_shapes() {
  return {{"3-chain", chain_poset(3)}, {"V", vee_poset()}, {"Lambda", wedge_poset()}};
}

namespace detail {

/// Carrier assignments over `base` from the iso classes, total size <= max.
template <class D>
std::vector<std::vector<typename D::Object>> carrier_choices(int objects, int max_total) {
  std::vector<std::vector<typename D::Object>> out;
  std::vector<typename D::Object> cur;
  std::function<void(int, int)> rec = [&](int b, int left) {
    if (b == objects) {
      out.push_back(cur);
      return;
    }
    for (int n = 0; n <= left; ++n) {
      for (const auto& x : PointSet<D>::classes(n)) {
        cur.push_back(x);
        rec(b + 1, left - n);
        cur.pop_back();
      }
    }
  };
  rec(0, max_total);
  return out;
}

}  // namespace detail

/// Round trips of B-glueing over B in {3-chain, V, Lambda} for every lax
/// functor F with total size <= max_total, every X -> GF with |X| <= max_total
/// and every lax slice G -> F with total size <= max_total, in all peel orders.
template <class D>
Sweep bglue_sweep(int max_total) {
  static_assert(detail::point_set<D>, "the B-glueing sweep runs on Pos and Top");
  Stopwatch sw;
  Sweep s{{std::string("B-glueing ") + tag_name(D::tag), 0, {}}};
  for (const auto& [shape, b] : bglue_shapes()) {
    const FinCat base = poset_cat(b);
    const auto peels = all_peel_orders(base);
    std::vector<LaxFunctor<D>> fs;
    for (const auto& car : detail::carrier_choices<D>(b.size(), max_total)) {
      for (auto& F : all_lax_functors<D>(b, car)) fs.push_back(std::move(F));
    }
    std::vector<LaxFunctor<D>> gs = fs;
    for (const auto& F : fs) {
      ++s.objects;
      const auto cf = collage(F);
      const std::string where = shape + " F=" + lax_to_json(F).dump();
      std::vector<PeelPlan<D>> plans;
      for (const auto& peel : peels) plans.push_back(peel_plan(F, peel));
      // X -> GF
      for (int n = 0; n <= max_total; ++n) {
        for (const auto& x : detail::PointSet<D>::classes(n)) {
          for (auto& pm : detail::PointSet<D>::maps(x, cf.total)) {
            ++s.homs;
            auto p = detail::point_map<D>(x, cf.total, pm);
            SliceObject<D> xp{x, p};
            std::optional<LaxSlice<D>> first;
            for (const auto& plan : plans) {
              ++s.report.checked;
              auto u = b_unglue(cf, p, plan);
              auto g = b_glue(u.slice, plan);
              if (!oracle::point_slices_isomorphic(g.slice, xp)) {
                s.report.fail(where + ": b_glue . b_unglue is not the identity up to iso");
              }
              if (!first) {
                first = u.slice;
              } else if (!find_lax_slice_iso(*first, u.slice)) {
                s.report.fail(where + ": b_unglue depends on the peel order");
              }
            }
            ++s.report.checked;
            auto direct = b_unglue_direct(cf, p);
            if (first && !find_lax_slice_iso(*first, direct.slice)) {
              s.report.fail(where + ": fiberwise unglue differs from the inductive one");
            }
          }
        }
      }
      // G -> F
      for (const auto& G : gs) {
        for (auto& t : all_transformations(G, F)) {
          LaxSlice<D> ls{G, t};
          ++s.homs;
          std::optional<SliceObject<D>> first;
          for (const auto& plan : plans) {
            ++s.report.checked;
            auto g = b_glue(ls, plan);
            auto u = b_unglue(cf, g.slice.map, plan);
            if (!find_lax_slice_iso(u.slice, ls)) {
              s.report.fail(where + ": b_unglue . b_glue is not the identity up to iso");
            }
            if (!first) {
              first = g.slice;
            } else if (!oracle::point_slices_isomorphic(*first, g.slice)) {
              s.report.fail(where + ": b_glue depends on the peel order");
            }
          }
        }
      }
    }
  }
  s.seconds = sw.seconds();
  return s;
}

// ---------------------------------------------------------------------------
// exponentials

struct ExponentialSweepOptions {
  int max_base = 3;      // |D|
  int max_argument = 3;  // |Z|
  int max_test = 3;      // |X|
};

/// For every D, every subset A classified as open, closed or locally closed
/// and every Z -> D: the constructed exponential passes the adjunction audit.
/// Inclusions classified open or closed are collected in `found`.
template <class D>
Sweep exponential_sweep(const ExponentialSweepOptions& opt, std::vector<typename D::HMor>* found = nullptr) {
  static_assert(detail::point_set<D>, "the exponential sweep runs on Pos and Top");
  Stopwatch sw;
  Sweep s{{std::string("exponentials ") + tag_name(D::tag), 0, {}}};
  for (int n = 0; n <= opt.max_base; ++n) {
    for (const auto& d : detail::PointSet<D>::classes(n)) {
      const auto fam = slice_family<D>(d, opt.max_test);
      const auto zs = opt.max_argument == opt.max_test ? fam.objects : slice_objects<D>(d, opt.max_argument);
      s.objects += static_cast<long>(fam.objects.size());
      for (const auto& row : fam.homs) {
        for (const auto& h : row) s.homs += static_cast<long>(h.size());
      }
      for (Mask a = 0; a <= full_mask(n); ++a) {
        auto i = detail::sub_inclusion<D>(d, a);
        auto ic = classify_inclusion<D>(i);
        if (ic.kind == InclusionKind::Unclassified) continue;
        if (found && (ic.open || ic.closed)) found->push_back(i);
        const std::string where = "D=" + Codec<D>::object(d).dump() + " A=" + set_string(a, d.names);
        for (const auto& z : zs) {
          ++s.report.checked;
          try {
            auto e = exponential(z, ic);
            auto r = adjunction_audit(e, fam);
            s.report.checked += r.checked;
            if (!r.ok()) {
              s.report.fail(where + " Z=" + slice_to_json(z).dump() + ": " + r.failures.front());
              continue;
            }
            if ((ic.kind == InclusionKind::Open || ic.kind == InclusionKind::Closed) && ic.witnesses.size() > 1) {
              ++s.report.checked;
              auto e2 = ic.kind == InclusionKind::Open ? exponential_open(z, ic, ic.witnesses.size() - 1)
                                                       : exponential_closed(z, ic, ic.witnesses.size() - 1);
              if (!oracle::point_slices_isomorphic(e.result, e2.result)) {
                s.report.fail(where + ": exponential depends on the witness");
              }
            }
          } catch (const Error& ex) {
            s.report.fail(where + " Z=" + slice_to_json(z).dump() + ": " + ex.what());
          }
        }
      }
    }
  }
  s.seconds = sw.seconds();
  return s;
}

/// check_mono on each inclusion against every test object up to `max_test`.
template <class D>
Sweep mono_sweep(const std::vector<typename D::HMor>& inclusions, int max_test) {
  Stopwatch sw;
  Sweep s{{std::string("monomorphisms ") + tag_name(D::tag), 0, {}}};
  std::vector<typename D::Object> tests;
  for (int n = 0; n <= max_test; ++n) {
    for (auto& x : detail::PointSet<D>::classes(n)) tests.push_back(std::move(x));
  }
  s.objects = static_cast<long>(tests.size());
  for (const auto& i : inclusions) {
    ++s.report.checked;
    ++s.homs;
    if (!check_mono<D>(i, tests)) s.report.fail("not a monomorphism: " + Codec<D>::hmor(i).dump());
  }
  s.seconds = sw.seconds();
  return s;
}

/// Open and closed inclusions into every D with at most `max_base` elements.
template <class D>
std::vector<typename D::HMor> classified_inclusions(int max_base) {
  std::vector<typename D::HMor> out;
  for (int n = 0; n <= max_base; ++n) {
    for (const auto& d : detail::PointSet<D>::classes(n)) {
      for (Mask a = 0; a <= full_mask(n); ++a) {
        auto i = detail::sub_inclusion<D>(d, a);
        auto ic = classify_inclusion<D>(i);
        if (ic.open || ic.closed) out.push_back(i);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// double category laws

namespace detail {

template <class D>
std::vector<typename D::Object> objects_of_size(int n) {
  if constexpr (std::is_same_v<D, PosD>) {
    return poset_classes(n);
  } else if constexpr (std::is_same_v<D, TopD>) {
    return space_classes(n);
  } else if constexpr (std::is_same_v<D, LocD>) {
    std::vector<FinFrame> out;
    for (auto& f : frame_classes(n)) {
      if (f.size() == n) out.push_back(std::move(f));
    }
    return out;
  } else {
    std::vector<FinCat> out;
    for (auto& c : cat_classes(n, n)) {
      if (c.morphism_count() == n) out.push_back(std::move(c));
    }
    return out;
  }
}

template <class D>
std::vector<typename D::Object> objects_up_to(int n) {
  std::vector<typename D::Object> out;
  for (int k = 0; k <= n; ++k) {
    for (auto& x : objects_of_size<D>(k)) out.push_back(std::move(x));
  }
  return out;
}

/// Cells with top a -> b, left a -|-> a, right b -|-> b.
template <class D>
std::vector<Cell<D>> cells_between(const typename D::Object& a, const typename D::Object& b) {
  std::vector<Cell<D>> out;
  auto hs = D::hmors(a, b);
  auto va = D::vmors(a, a, 2);
  auto vb = D::vmors(b, b, 2);
  for (const auto& f : hs) {
    for (const auto& f2 : hs) {
      for (const auto& m : va) {
        for (const auto& n : vb) {
          for (auto& c : cells_with_boundary<D>(f, m, n, f2)) out.push_back(std::move(c));
        }
      }
    }
  }
  return out;
}

template <class D>
void interchange_grids(const std::vector<Cell<D>>& left, const std::vector<Cell<D>>& right, Report& r, long limit) {
  long done = 0;
  for (const auto& phi : left) {
    for (const auto& psi : right) {
      if (!(psi.left == phi.right)) continue;
      for (const auto& phi2 : left) {
        if (!(phi2.top == phi.bottom)) continue;
        for (const auto& psi2 : right) {
          if (!(psi2.top == psi.bottom) || !(psi2.left == phi2.right)) continue;
          ++r.checked;
          if (auto f = interchange_failure(phi, psi, phi2, psi2)) r.fail("interchange: " + *f);
          if (++done >= limit) return;
        }
      }
    }
  }
}

template <class D>
const typename D::Object& pick(const std::vector<typename D::Object>& xs, std::mt19937& rng) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

template <class T>
const T& pick_any(const std::vector<T>& xs, std::mt19937& rng) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

/// A random cell with the given top and left side, if one exists among the
/// sampled candidates.
template <class D>
std::optional<Cell<D>> random_cell(const typename D::HMor& f, const typename D::VMor& m,
                                   const std::vector<typename D::HMor>& bottoms,
                                   const std::vector<typename D::VMor>& rights, std::mt19937& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    const auto& f2 = pick_any(bottoms, rng);
    std::vector<Cell<D>> cs;
    for (const auto& n : rights) {
      for (auto& c : cells_with_boundary<D>(f, m, n, f2)) cs.push_back(std::move(c));
    }
    if (!cs.empty()) return pick_any(cs, rng);
  }
  return std::nullopt;
}

}  // namespace detail

/// Interchange over every grid of cells between objects of size <= max_small,
/// companion, conjoint and triangle laws for every horizontal morphism between
/// them, and `samples` random grids and morphisms at size `sample_size`.
template <class D>
Sweep law_sweep(int max_small, int samples, int sample_size, unsigned seed) {
  Stopwatch sw;
  Sweep s{{std::string("laws ") + tag_name(D::tag), 0, {}}};
  const auto small = detail::objects_up_to<D>(max_small);
  s.objects = static_cast<long>(small.size());
  std::vector<typename D::HMor> hs;
  for (const auto& a : small) {
    for (const auto& b : small) {
      for (auto& f : D::hmors(a, b)) hs.push_back(std::move(f));
    }
  }
  s.homs = static_cast<long>(hs.size());
  s.report.merge(validate_framed<D>(hs));
  // interchange on grids whose columns are objects a, b, c
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Cell<D>>> cells;
  auto cells_of = [&](std::size_t i, std::size_t j) -> const std::vector<Cell<D>>& {
    auto it = cells.find({i, j});
    if (it == cells.end()) it = cells.emplace(std::make_pair(i, j), detail::cells_between<D>(small[i], small[j])).first;
    return it->second;
  };
  for (std::size_t i = 0; i < small.size(); ++i) {
    for (std::size_t j = 0; j < small.size(); ++j) {
      for (std::size_t k = 0; k < small.size(); ++k) {
        detail::interchange_grids<D>(cells_of(i, j), cells_of(j, k), s.report, 20000);
      }
    }
  }
  // random samples
  const auto big = detail::objects_of_size<D>(sample_size);
  if (!big.empty()) {
    std::mt19937 rng(seed);
    std::map<std::pair<std::size_t, std::size_t>, std::vector<typename D::HMor>> hcache;
    std::map<std::size_t, std::vector<typename D::VMor>> vcache;
    auto hm = [&](std::size_t a, std::size_t b) -> const std::vector<typename D::HMor>& {
      auto it = hcache.find({a, b});
      if (it == hcache.end()) it = hcache.emplace(std::make_pair(a, b), D::hmors(big[a], big[b])).first;
      return it->second;
    };
    auto vm = [&](std::size_t a) -> const std::vector<typename D::VMor>& {
      auto it = vcache.find(a);
      if (it == vcache.end()) it = vcache.emplace(a, D::vmors(big[a], big[a], 2)).first;
      return it->second;
    };
    std::uniform_int_distribution<std::size_t> obj(0, big.size() - 1);
    int done = 0;
    for (int attempt = 0; done < samples && attempt < samples * 20; ++attempt) {
      std::size_t a = obj(rng), b = obj(rng), c = obj(rng);
      const auto& hab = hm(a, b);
      const auto& hbc = hm(b, c);
      if (hab.empty() || hbc.empty() || vm(a).empty()) continue;
      auto phi = detail::random_cell<D>(detail::pick_any(hab, rng), detail::pick_any(vm(a), rng), hab, vm(b), rng);
      if (!phi) continue;
      auto psi = detail::random_cell<D>(detail::pick_any(hbc, rng), phi->right, hbc, vm(c), rng);
      if (!psi) continue;
      auto phi2 = detail::random_cell<D>(phi->bottom, detail::pick_any(vm(a), rng), hab, vm(b), rng);
      if (!phi2) continue;
      auto psi2 = detail::random_cell<D>(psi->bottom, phi2->right, hbc, vm(c), rng);
      if (!psi2) continue;
      ++done;
      ++s.report.checked;
      if (auto f = interchange_failure(*phi, *psi, *phi2, *psi2)) s.report.fail("sampled interchange: " + *f);
      s.report.merge(validate_framed<D>({detail::pick_any(hab, rng)}));
    }
    if (done < samples) s.report.fail("only " + std::to_string(done) + " random grids could be sampled");
  }
  s.seconds = sw.seconds();
  return s;
}

// ---------------------------------------------------------------------------
// mutation robustness

namespace detail {

/// A witness "a" or "(a,b,...)" whose parts are all names of the fixture.
/// Names may themselves contain commas, so the split is searched for.
inline bool names_located(std::string witness, const std::vector<std::string>& names) {
  if (witness.size() >= 2 && witness.front() == '(' && witness.back() == ')') {
    witness = witness.substr(1, witness.size() - 2);
  }
  std::vector<char> ok(witness.size() + 1, 0);
  ok[0] = 1;
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (!ok[i]) continue;
    std::size_t start = i == 0 ? 0 : i + 1;
    if (i != 0 && witness[i] != ',') continue;
    for (const auto& n : names) {
      if (!n.empty() && witness.compare(start, n.size(), n) == 0) ok[start + n.size()] = 1;
    }
  }
  return !witness.empty() && ok[witness.size()];
}

inline bool mentions(const std::string& msg, const std::vector<std::string>& names) {
  for (const auto& n : names) {
    if (msg.find(" " + n) != std::string::npos || msg.find("(" + n) != std::string::npos ||
        msg.find("," + n) != std::string::npos) {
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// `per_validator` seeded single-field mutations for each of the poset, frame,
/// lax-functor coherence and Cat naturality validators. Mutations the naive
/// oracle still accepts are redrawn; every counted one must be rejected with a
/// witness naming elements of the fixture.
inline Sweep mutation_sweep(int per_validator, unsigned seed) {
  Stopwatch sw;
  Sweep s{{"mutations", 0, {}}};
  std::mt19937 rng(seed);
  auto uni = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };

  // posets
  {
    std::vector<FinPoset> fx;
    for (int n = 2; n <= 4; ++n) {
      for (auto& p : poset_classes(n)) fx.push_back(std::move(p));
    }
    int done = 0;
    for (int attempt = 0; done < per_validator && attempt < per_validator * 50; ++attempt) {
      FinPoset p = fx[static_cast<std::size_t>(uni(static_cast<int>(fx.size())))];
      int i = uni(p.size()), j = uni(p.size());
      p.up[i] ^= bit(j);
      if (!oracle::poset_axioms(p)) continue;
      ++done;
      ++s.report.checked;
      try {
        validate_poset(p);
        s.report.fail("poset mutation accepted: flipped (" + p.names[i] + "," + p.names[j] + ")");
      } catch (const LawViolation& e) {
        if (!detail::names_located(e.witness(), p.names)) s.report.fail("poset rejection without location: " + e.witness());
      }
    }
    if (done < per_validator) s.report.fail("too few poset mutations");
    s.objects += static_cast<long>(fx.size());
  }

  // frames
  {
    auto fx = frame_classes(6);
    fx.erase(std::remove_if(fx.begin(), fx.end(), [](const FinFrame& f) { return f.size() < 2; }), fx.end());
    int done = 0;
    for (int attempt = 0; done < per_validator && attempt < per_validator * 50; ++attempt) {
      FinFrame f = fx[static_cast<std::size_t>(uni(static_cast<int>(fx.size())))];
      const int n = f.size();
      switch (uni(5)) {
        case 0: f.meet_tab[static_cast<std::size_t>(uni(n * n))] = uni(n); break;
        case 1: f.join_tab[static_cast<std::size_t>(uni(n * n))] = uni(n); break;
        case 2: f.top = uni(n); break;
        case 3: f.bottom = uni(n); break;
        default: f.up[uni(n)] ^= bit(uni(n)); break;
      }
      if (oracle::frame_consistent(f)) continue;
      ++done;
      ++s.report.checked;
      try {
        validate_frame(f);
        s.report.fail("frame mutation accepted");
      } catch (const LawViolation& e) {
        std::string w = e.witness();
        auto cut = w.rfind(": ");
        if (cut != std::string::npos) w = w.substr(cut + 2);
        if (w != "top" && w != "bottom" && !detail::names_located(w, f.names)) {
          s.report.fail("frame rejection without location: " + std::string(e.what()));
        }
      }
    }
    if (done < per_validator) s.report.fail("too few frame mutations");
    s.objects += static_cast<long>(fx.size());
  }

  // lax functor coherence: Pos functors over the 3-chain and set-valued Cat
  // functors over the 4-chain with monoid comparisons
  {
    std::vector<LaxFunctor<PosD>> pos;
    for (auto& F : all_lax_functors<PosD>(chain_poset(3), {chain_poset(2), chain_poset(1), discrete_poset(2)})) {
      pos.push_back(std::move(F));
    }
    std::vector<LaxFunctor<CatD>> sets;
    {
      const FinCat base = poset_cat(chain_poset(4));
      const FinCat one = terminal_cat();
      auto two = blank_profunctor(one, one, {"e0", "e1"}, {0, 0}, {0, 0});
      for (int u = 0; u < 2; ++u) {
        two.left[static_cast<std::size_t>(u)] = u;
        two.right[static_cast<std::size_t>(u)] = u;
      }
      for (int op = 0; op < 3; ++op) {
        LaxFunctor<CatD> F{base, std::vector<FinCat>(4, one), {}, {}};
        for (int a = 0; a < base.morphism_count(); ++a) F.vertical.push_back(base.is_identity(a) ? identity_prof(one) : two);
        for (int a = 0; a < base.morphism_count(); ++a) {
          for (int a2 = 0; a2 < base.morphism_count(); ++a2) {
            if (base.is_identity(a) || base.is_identity(a2) || base.cod[a] != base.dom[a2]) continue;
            auto t = prof_compose(F.at(a), F.at(a2)).second;
            std::vector<int> w(t.representative.size());
            for (int u = 0; u < 2; ++u) {
              for (int v = 0; v < 2; ++v) w[t.lookup(u, v)] = op == 0 ? (u ^ v) : op == 1 ? (u & v) : (u | v);
            }
            F.comparison[{a, a2}] = w;
          }
        }
        sets.push_back(std::move(F));
      }
    }
    int done = 0;
    for (int attempt = 0; done < per_validator && attempt < per_validator * 50; ++attempt) {
      if (uni(2) == 0) {
        auto F = pos[static_cast<std::size_t>(uni(static_cast<int>(pos.size())))];
        const FinCat& B = F.base;
        int a = uni(B.morphism_count());
        if (B.is_identity(a)) continue;
        auto& m = F.vertical[a];
        if (m.src.size() == 0 || m.tgt.size() == 0) continue;
        int x = uni(m.src.size()), y = uni(m.tgt.size());
        m.rel.set(x, y, !m.rel.get(x, y));
        if (oracle::pos_lax_ok(F)) continue;
        ++done;
        ++s.report.checked;
        auto r = validate_lax_functor(F);
        std::vector<std::string> names = B.objects;
        for (const auto& c : F.carrier) names.insert(names.end(), c.names.begin(), c.names.end());
        names.push_back(B.mor_names[a]);
        if (r.ok()) {
          s.report.fail("lax functor mutation accepted");
        } else if (!detail::mentions(r.failures.front(), names)) {
          s.report.fail("lax functor rejection without location: " + r.failures.front());
        }
      } else {
        auto F = sets[static_cast<std::size_t>(uni(static_cast<int>(sets.size())))];
        auto it = F.comparison.begin();
        std::advance(it, uni(static_cast<int>(F.comparison.size())));
        auto& w = it->second;
        w[static_cast<std::size_t>(uni(static_cast<int>(w.size())))] ^= 1;
        if (oracle::set_lax_associative(F)) continue;
        ++done;
        ++s.report.checked;
        auto r = validate_lax_functor(F);
        std::vector<std::string> names = F.base.mor_names;
        names.push_back("e0");
        names.push_back("e1");
        if (r.ok()) {
          s.report.fail("lax functor mutation accepted");
        } else if (!detail::mentions(r.failures.front(), names)) {
          s.report.fail("lax functor rejection without location: " + r.failures.front());
        }
      }
    }
    if (done < per_validator) s.report.fail("too few lax functor mutations");
    s.objects += static_cast<long>(pos.size() + sets.size());
  }

  // Cat naturality: identity, companion and conjoint cells
  {
    std::vector<Cell<CatD>> fx;
    for (const auto& c : cat_classes(2, 4)) {
      if (c.morphism_count() < 2) continue;
      fx.push_back(id_cell<CatD>(identity_prof(c)));
      for (const auto& f : CatD::hmors(c, c)) {
        auto cd = companion_data<CatD>(f);
        auto dd = conjoint_data<CatD>(f);
        for (const auto& cell : {cd.eta, cd.eps, dd.alpha, dd.beta}) {
          if (cell.left.size() >= 2) fx.push_back(cell);
        }
      }
    }
    int done = 0;
    for (int attempt = 0; done < per_validator && attempt < per_validator * 50; ++attempt) {
      auto c = fx[static_cast<std::size_t>(uni(static_cast<int>(fx.size())))];
      if (c.left.size() == 0 || c.right.size() < 2) continue;
      int u = uni(c.left.size());
      int v = uni(c.right.size());
      if (c.witness[u] == v) continue;
      c.witness[u] = v;
      if (oracle::cat_family_natural(c)) continue;
      ++done;
      ++s.report.checked;
      auto f = cell_failure(c);
      std::vector<std::string> names = c.left.names;
      names.insert(names.end(), c.left.src.mor_names.begin(), c.left.src.mor_names.end());
      names.insert(names.end(), c.left.tgt.mor_names.begin(), c.left.tgt.mor_names.end());
      if (!f) {
        s.report.fail("Cat cell mutation accepted");
      } else if (!detail::mentions(*f, names)) {
        s.report.fail("Cat cell rejection without location: " + *f);
      }
    }
    if (done < per_validator) s.report.fail("too few Cat cell mutations");
    s.objects += static_cast<long>(fx.size());
  }
  s.seconds = sw.seconds();
  return s;
}

inline Json sweep_json(const Sweep& s) {
  Json fails = Json::array();
  for (const auto& f : s.report.failures) fails.push_back(f);
  return Json{{"suite", s.report.name}, {"outcome", s.report.ok() ? "pass" : "fail"},
              {"checked", s.report.checked}, {"objects", s.objects},
              {"homs", s.homs},          {"counterexamples", fails}};
}

}  // namespace dblcat

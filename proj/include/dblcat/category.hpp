#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dblcat/errors.hpp"
#include "dblcat/poset.hpp"
#include "dblcat/util.hpp"

namespace dblcat {

/// Finite category. Morphisms 0..object_count()-1 are the identities, in
/// object order; `comp[g * M + f]` is g after f, or -1 when not composable.
struct FinCat {
  std::vector<std::string> objects;
  std::vector<std::string> mor_names;
  std::vector<int> dom;
  std::vector<int> cod;
  std::vector<int> comp;

  int object_count() const { return static_cast<int>(objects.size()); }
  int morphism_count() const { return static_cast<int>(mor_names.size()); }
  int ident(int x) const { return x; }
  bool is_identity(int a) const { return a < object_count(); }
  int compose(int g, int f) const { return comp[static_cast<std::size_t>(g * morphism_count() + f)]; }
  std::vector<int> hom(int x, int y) const {
    std::vector<int> out;
    for (int a = 0; a < morphism_count(); ++a) {
      if (dom[a] == x && cod[a] == y) out.push_back(a);
    }
    return out;
  }
  int object_index(std::string_view name) const {
    for (int i = 0; i < object_count(); ++i) {
      if (objects[i] == name) return i;
    }
    return -1;
  }
  int morphism_index(std::string_view name) const {
    for (int i = 0; i < morphism_count(); ++i) {
      if (mor_names[i] == name) return i;
    }
    return -1;
  }

  friend bool operator==(const FinCat&, const FinCat&) = default;
};

inline std::optional<std::string> cat_failure(const FinCat& c) {
  const int n = c.object_count();
  const int m = c.morphism_count();
  if (m < n) return "shape: fewer morphisms than identities";
  if (static_cast<int>(c.dom.size()) != m || static_cast<int>(c.cod.size()) != m ||
      static_cast<int>(c.comp.size()) != m * m) {
    return "shape: table sizes";
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (c.objects[i] == c.objects[j]) return "distinct names: object " + c.objects[i];
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (c.mor_names[i] == c.mor_names[j]) return "distinct names: morphism " + c.mor_names[i];
    }
  }
  for (int a = 0; a < m; ++a) {
    if (c.dom[a] < 0 || c.dom[a] >= n || c.cod[a] < 0 || c.cod[a] >= n) return "shape: endpoint of " + c.mor_names[a];
  }
  for (int x = 0; x < n; ++x) {
    if (c.dom[x] != x || c.cod[x] != x) return "identity endpoints: " + c.mor_names[x];
  }
  for (int g = 0; g < m; ++g) {
    for (int f = 0; f < m; ++f) {
      int h = c.compose(g, f);
      if (c.cod[f] != c.dom[g]) {
        if (h != -1) return "composition defined only when composable: (" + c.mor_names[g] + "," + c.mor_names[f] + ")";
        continue;
      }
      if (h < 0 || h >= m) return "composition total: (" + c.mor_names[g] + "," + c.mor_names[f] + ")";
      if (c.dom[h] != c.dom[f] || c.cod[h] != c.cod[g]) {
        return "composition endpoints: (" + c.mor_names[g] + "," + c.mor_names[f] + ")";
      }
    }
  }
  for (int f = 0; f < m; ++f) {
    if (c.compose(c.cod[f], f) != f || c.compose(f, c.dom[f]) != f) return "unit: " + c.mor_names[f];
  }
  for (int f = 0; f < m; ++f) {
    for (int g = 0; g < m; ++g) {
      if (c.cod[f] != c.dom[g]) continue;
      for (int h = 0; h < m; ++h) {
        if (c.cod[g] != c.dom[h]) continue;
        if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f)) {
          return "associative: (" + c.mor_names[h] + "," + c.mor_names[g] + "," + c.mor_names[f] + ")";
        }
      }
    }
  }
  return std::nullopt;
}

inline void validate_cat(const FinCat& c) {
  if (auto f = cat_failure(c)) {
    auto colon = f->find(':');
    throw LawViolation("category " + f->substr(0, colon), colon == std::string::npos ? "" : f->substr(colon + 2));
  }
}

struct MorphismSpec {
  std::string name;
  int dom;
  int cod;
};

/// Builds a category from its non-identity morphisms and the composites of
/// every composable pair of them, given as (g, f, g after f) over indices into
/// `morphisms`; an index of -1 - x in the result slot names the identity on x.
/// Identities are named "1_<object>".
inline FinCat make_cat(std::vector<std::string> objects, const std::vector<MorphismSpec>& morphisms,
                       const std::vector<std::tuple<int, int, int>>& composites) {
  FinCat c;
  c.objects = std::move(objects);
  const int n = c.object_count();
  for (int x = 0; x < n; ++x) {
    c.mor_names.push_back("1_" + c.objects[x]);
    c.dom.push_back(x);
    c.cod.push_back(x);
  }
  for (const auto& s : morphisms) {
    if (s.dom < 0 || s.dom >= n || s.cod < 0 || s.cod >= n) throw LawViolation("category shape", "endpoint of " + s.name);
    c.mor_names.push_back(s.name);
    c.dom.push_back(s.dom);
    c.cod.push_back(s.cod);
  }
  const int m = c.morphism_count();
  c.comp.assign(static_cast<std::size_t>(m * m), -1);
  for (int a = 0; a < m; ++a) {
    for (int x = 0; x < n; ++x) {
      if (c.dom[a] == x) c.comp[static_cast<std::size_t>(a * m + x)] = a;
      if (c.cod[a] == x) c.comp[static_cast<std::size_t>(x * m + a)] = a;
    }
  }
  for (auto [g, f, h] : composites) {
    const int k = static_cast<int>(morphisms.size());
    if (g < 0 || g >= k || f < 0 || f >= k || h >= k || h < -n) throw LawViolation("category shape", "composite index out of range");
    int hi = h >= 0 ? h + n : -1 - h;
    c.comp[static_cast<std::size_t>((g + n) * m + (f + n))] = hi;
  }
  for (int g = n; g < m; ++g) {
    for (int f = n; f < m; ++f) {
      if (c.cod[f] == c.dom[g] && c.compose(g, f) < 0) {
        throw LawViolation("category composition total", "(" + c.mor_names[g] + "," + c.mor_names[f] + ")");
      }
    }
  }
  validate_cat(c);
  return c;
}

inline FinCat empty_cat() { return FinCat{}; }
inline FinCat terminal_cat() { return make_cat({"*"}, {}, {}); }
inline FinCat discrete_cat(int n) { return make_cat(default_names(n), {}, {}); }
/// Two objects 0, 1 and one arrow a: 0 -> 1.
inline FinCat arrow_cat() { return make_cat({"0", "1"}, {{"a", 0, 1}}, {}); }

/// A poset as a category; the morphism x <= y is named "x<y".
inline FinCat poset_cat(const FinPoset& p) {
  std::vector<MorphismSpec> mors;
  std::map<std::pair<int, int>, int> index;
  for (int x = 0; x < p.size(); ++x) {
    for (int y = 0; y < p.size(); ++y) {
      if (p.lt(x, y)) {
        index[{x, y}] = static_cast<int>(mors.size());
        mors.push_back({p.names[x] + "<" + p.names[y], x, y});
      }
    }
  }
  std::vector<std::tuple<int, int, int>> comps;
  for (auto [xy, f] : index) {
    for (auto [yz, g] : index) {
      if (xy.second == yz.first) comps.emplace_back(g, f, index.at({xy.first, yz.second}));
    }
  }
  return make_cat(p.names, mors, comps);
}

/// Morphism of the category of a poset from x to y (x <= y).
inline int poset_arrow(const FinCat& c, int x, int y) {
  auto h = c.hom(x, y);
  return h.empty() ? -1 : h.front();
}

// ---------------------------------------------------------------------------
// functors

struct Functor {
  FinCat src;
  FinCat tgt;
  std::vector<int> obj;
  std::vector<int> mor;

  friend bool operator==(const Functor&, const Functor&) = default;
};

inline std::optional<std::string> functor_failure(const FinCat& src, const FinCat& tgt, const std::vector<int>& obj,
                                                  const std::vector<int>& mor) {
  if (static_cast<int>(obj.size()) != src.object_count() || static_cast<int>(mor.size()) != src.morphism_count()) {
    return "shape: map sizes";
  }
  for (int v : obj) {
    if (v < 0 || v >= tgt.object_count()) return "shape: object image out of range";
  }
  for (int v : mor) {
    if (v < 0 || v >= tgt.morphism_count()) return "shape: morphism image out of range";
  }
  for (int a = 0; a < src.morphism_count(); ++a) {
    if (tgt.dom[mor[a]] != obj[src.dom[a]] || tgt.cod[mor[a]] != obj[src.cod[a]]) return "endpoints: " + src.mor_names[a];
  }
  for (int x = 0; x < src.object_count(); ++x) {
    if (mor[x] != tgt.ident(obj[x])) return "identities: " + src.objects[x];
  }
  for (int g = 0; g < src.morphism_count(); ++g) {
    for (int f = 0; f < src.morphism_count(); ++f) {
      int h = src.compose(g, f);
      if (h >= 0 && mor[h] != tgt.compose(mor[g], mor[f])) {
        return "composition: (" + src.mor_names[g] + "," + src.mor_names[f] + ")";
      }
    }
  }
  return std::nullopt;
}

inline Functor make_functor(FinCat src, FinCat tgt, std::vector<int> obj, std::vector<int> mor) {
  if (auto f = functor_failure(src, tgt, obj, mor)) throw LawViolation("functor", *f);
  return Functor{std::move(src), std::move(tgt), std::move(obj), std::move(mor)};
}

inline Functor identity_functor(const FinCat& c) {
  std::vector<int> obj(static_cast<std::size_t>(c.object_count()));
  std::vector<int> mor(static_cast<std::size_t>(c.morphism_count()));
  std::iota(obj.begin(), obj.end(), 0);
  std::iota(mor.begin(), mor.end(), 0);
  return Functor{c, c, std::move(obj), std::move(mor)};
}

/// g after f.
inline Functor compose(const Functor& g, const Functor& f) {
  if (!(f.tgt == g.src)) throw BoundaryMismatch("functor composite: target of first is not source of second");
  Functor out{f.src, g.tgt, f.obj, f.mor};
  for (auto& o : out.obj) o = g.obj[o];
  for (auto& a : out.mor) a = g.mor[a];
  return out;
}

/// Every functor src -> tgt as (object map, morphism map).
inline std::vector<std::pair<std::vector<int>, std::vector<int>>> functors(const FinCat& src, const FinCat& tgt) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  const int n = src.object_count();
  const int m = src.morphism_count();
  std::vector<int> obj(static_cast<std::size_t>(n), 0);
  std::vector<int> mor(static_cast<std::size_t>(m), 0);
  std::function<void(int)> rec_mor = [&](int a) {
    if (a == m) {
      if (!functor_failure(src, tgt, obj, mor)) out.emplace_back(obj, mor);
      return;
    }
    if (src.is_identity(a)) {
      mor[a] = tgt.ident(obj[a]);
      rec_mor(a + 1);
      return;
    }
    for (int b : tgt.hom(obj[src.dom[a]], obj[src.cod[a]])) {
      mor[a] = b;
      bool ok = true;
      for (int g = 0; g <= a && ok; ++g) {
        for (int f = 0; f <= a && ok; ++f) {
          int h = src.compose(g, f);
          if (h >= 0 && h <= a && mor[h] != tgt.compose(mor[g], mor[f])) ok = false;
        }
      }
      if (ok) rec_mor(a + 1);
    }
  };
  std::function<void(int)> rec_obj = [&](int x) {
    if (x == n) {
      rec_mor(0);
      return;
    }
    for (int y = 0; y < tgt.object_count(); ++y) {
      obj[x] = y;
      rec_obj(x + 1);
    }
  };
  rec_obj(0);
  return out;
}

inline bool is_cat_iso(const Functor& f) {
  if (f.src.object_count() != f.tgt.object_count() || f.src.morphism_count() != f.tgt.morphism_count()) return false;
  if (f.src.object_count() == 0) return true;
  return !invert_bijection(f.obj, f.tgt.object_count()).empty() &&
         !invert_bijection(f.mor, f.tgt.morphism_count()).empty();
}

inline std::optional<Functor> find_cat_iso(const FinCat& a, const FinCat& b) {
  if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count()) return std::nullopt;
  for (auto& [obj, mor] : functors(a, b)) {
    Functor f{a, b, obj, mor};
    if (is_cat_iso(f)) return f;
  }
  return std::nullopt;
}

/// Every labelled category with at most `max_objects` objects and at most
/// `max_morphisms` morphisms (identities included).
inline std::vector<FinCat> all_categories(int max_objects, int max_morphisms) {
  std::vector<FinCat> out;
  for (int n = 0; n <= max_objects; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) slots.emplace_back(x, y);
    }
    const int budget = max_morphisms - n;
    if (budget < 0) continue;
    std::vector<int> counts(slots.size(), 0);
    std::function<void(std::size_t, int)> rec_counts = [&](std::size_t s, int left) {
      if (s == slots.size()) {
        FinCat c;
        c.objects = default_names(n);
        for (int x = 0; x < n; ++x) {
          c.mor_names.push_back("1_" + c.objects[x]);
          c.dom.push_back(x);
          c.cod.push_back(x);
        }
        for (std::size_t k = 0; k < slots.size(); ++k) {
          for (int i = 0; i < counts[k]; ++i) {
            c.mor_names.push_back("f" + std::to_string(c.mor_names.size() - static_cast<std::size_t>(n)));
            c.dom.push_back(slots[k].first);
            c.cod.push_back(slots[k].second);
          }
        }
        const int m = c.morphism_count();
        c.comp.assign(static_cast<std::size_t>(m * m), -1);
        std::vector<std::pair<int, int>> open;
        for (int g = 0; g < m; ++g) {
          for (int f = 0; f < m; ++f) {
            if (c.cod[f] != c.dom[g]) continue;
            if (c.is_identity(g)) c.comp[static_cast<std::size_t>(g * m + f)] = f;
            else if (c.is_identity(f)) c.comp[static_cast<std::size_t>(g * m + f)] = g;
            else open.emplace_back(g, f);
          }
        }
        std::function<void(std::size_t)> rec_comp = [&](std::size_t i) {
          if (i == open.size()) {
            if (!cat_failure(c)) out.push_back(c);
            return;
          }
          auto [g, f] = open[i];
          for (int h : c.hom(c.dom[f], c.cod[g])) {
            c.comp[static_cast<std::size_t>(g * m + f)] = h;
            rec_comp(i + 1);
          }
          c.comp[static_cast<std::size_t>(g * m + f)] = -1;
        };
        rec_comp(0);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        counts[s] = k;
        rec_counts(s + 1, left - k);
      }
      counts[s] = 0;
    };
    rec_counts(0, budget);
  }
  return out;
}

/// One representative per isomorphism class.
inline std::vector<FinCat> cat_classes(int max_objects, int max_morphisms) {
  std::vector<FinCat> reps;
  for (auto& c : all_categories(max_objects, max_morphisms)) {
    bool seen = false;
    for (const auto& r : reps) {
      if (find_cat_iso(c, r)) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(std::move(c));
  }
  return reps;
}

// ---------------------------------------------------------------------------
// profunctors X -|-> X', i.e. functors X^op x X' -> Set

/// Element u lies in m(x[u], xp[u]). For alpha: a -> x[u] in X the left action
/// alpha.u lies in m(a, xp[u]); for beta: xp[u] -> b in X' the right action u.beta
/// lies in m(x[u], b).
struct Profunctor {
  FinCat src;
  FinCat tgt;
  std::vector<std::string> names;
  std::vector<int> x;
  std::vector<int> xp;
  std::vector<int> left;   // left[alpha * E + u]
  std::vector<int> right;  // right[u * M' + beta]

  int size() const { return static_cast<int>(names.size()); }
  int act_left(int alpha, int u) const { return left[static_cast<std::size_t>(alpha * size() + u)]; }
  int act_right(int u, int beta) const { return right[static_cast<std::size_t>(u * tgt.morphism_count() + beta)]; }
  std::vector<int> at(int a, int b) const {
    std::vector<int> out;
    for (int u = 0; u < size(); ++u) {
      if (x[u] == a && xp[u] == b) out.push_back(u);
    }
    return out;
  }
  int element_index(std::string_view name) const {
    for (int u = 0; u < size(); ++u) {
      if (names[u] == name) return u;
    }
    return -1;
  }

  friend bool operator==(const Profunctor&, const Profunctor&) = default;
};

inline std::optional<std::string> profunctor_failure(const Profunctor& m) {
  const int e = m.size();
  const int ms = m.src.morphism_count();
  const int mt = m.tgt.morphism_count();
  if (static_cast<int>(m.x.size()) != e || static_cast<int>(m.xp.size()) != e ||
      static_cast<int>(m.left.size()) != ms * e || static_cast<int>(m.right.size()) != e * mt) {
    return "shape: table sizes";
  }
  for (int u = 0; u < e; ++u) {
    for (int v = u + 1; v < e; ++v) {
      if (m.names[u] == m.names[v]) return "distinct names: " + m.names[u];
    }
    if (m.x[u] < 0 || m.x[u] >= m.src.object_count() || m.xp[u] < 0 || m.xp[u] >= m.tgt.object_count()) {
      return "shape: position of " + m.names[u];
    }
  }
  for (int a = 0; a < ms; ++a) {
    for (int u = 0; u < e; ++u) {
      int r = m.act_left(a, u);
      if (m.src.cod[a] != m.x[u]) {
        if (r != -1) return "left action defined only when composable: " + m.src.mor_names[a] + "." + m.names[u];
        continue;
      }
      if (r < 0 || r >= e || m.x[r] != m.src.dom[a] || m.xp[r] != m.xp[u]) {
        return "left action position: " + m.src.mor_names[a] + "." + m.names[u];
      }
    }
  }
  for (int u = 0; u < e; ++u) {
    for (int b = 0; b < mt; ++b) {
      int r = m.act_right(u, b);
      if (m.tgt.dom[b] != m.xp[u]) {
        if (r != -1) return "right action defined only when composable: " + m.names[u] + "." + m.tgt.mor_names[b];
        continue;
      }
      if (r < 0 || r >= e || m.x[r] != m.x[u] || m.xp[r] != m.tgt.cod[b]) {
        return "right action position: " + m.names[u] + "." + m.tgt.mor_names[b];
      }
    }
  }
  for (int u = 0; u < e; ++u) {
    if (m.act_left(m.src.ident(m.x[u]), u) != u) return "left identity: " + m.names[u];
    if (m.act_right(u, m.tgt.ident(m.xp[u])) != u) return "right identity: " + m.names[u];
  }
  for (int u = 0; u < e; ++u) {
    for (int a2 = 0; a2 < ms; ++a2) {
      if (m.src.cod[a2] != m.x[u]) continue;
      for (int a1 = 0; a1 < ms; ++a1) {
        if (m.src.cod[a1] != m.src.dom[a2]) continue;
        if (m.act_left(a1, m.act_left(a2, u)) != m.act_left(m.src.compose(a2, a1), u)) {
          return "left action composition: (" + m.src.mor_names[a1] + "," + m.src.mor_names[a2] + "," + m.names[u] + ")";
        }
      }
    }
    for (int b1 = 0; b1 < mt; ++b1) {
      if (m.tgt.dom[b1] != m.xp[u]) continue;
      for (int b2 = 0; b2 < mt; ++b2) {
        if (m.tgt.dom[b2] != m.tgt.cod[b1]) continue;
        if (m.act_right(m.act_right(u, b1), b2) != m.act_right(u, m.tgt.compose(b2, b1))) {
          return "right action composition: (" + m.names[u] + "," + m.tgt.mor_names[b1] + "," + m.tgt.mor_names[b2] + ")";
        }
      }
    }
    for (int a = 0; a < ms; ++a) {
      if (m.src.cod[a] != m.x[u]) continue;
      for (int b = 0; b < mt; ++b) {
        if (m.tgt.dom[b] != m.xp[u]) continue;
        if (m.act_right(m.act_left(a, u), b) != m.act_left(a, m.act_right(u, b))) {
          return "actions commute: (" + m.src.mor_names[a] + "," + m.names[u] + "," + m.tgt.mor_names[b] + ")";
        }
      }
    }
  }
  return std::nullopt;
}

inline void validate_profunctor(const Profunctor& m) {
  if (auto f = profunctor_failure(m)) {
    auto colon = f->find(':');
    throw LawViolation("profunctor " + f->substr(0, colon), colon == std::string::npos ? "" : f->substr(colon + 2));
  }
}

/// Empty action tables of the right shape for the given elements.
inline Profunctor blank_profunctor(const FinCat& src, const FinCat& tgt, std::vector<std::string> names,
                                   std::vector<int> x, std::vector<int> xp) {
  Profunctor m{src, tgt, std::move(names), std::move(x), std::move(xp), {}, {}};
  m.left.assign(static_cast<std::size_t>(src.morphism_count() * m.size()), -1);
  m.right.assign(static_cast<std::size_t>(m.size() * tgt.morphism_count()), -1);
  return m;
}

/// Hom profunctor; element h is the morphism h of X.
inline Profunctor identity_prof(const FinCat& c) {
  Profunctor m = blank_profunctor(c, c, c.mor_names, c.dom, c.cod);
  for (int h = 0; h < c.morphism_count(); ++h) {
    for (int a = 0; a < c.morphism_count(); ++a) {
      if (c.cod[a] == c.dom[h]) m.left[static_cast<std::size_t>(a * m.size() + h)] = c.compose(h, a);
      if (c.dom[a] == c.cod[h]) m.right[static_cast<std::size_t>(h * c.morphism_count() + a)] = c.compose(a, h);
    }
  }
  return m;
}

/// f_*(x, y) = Y(fx, y); element (x, h) is named "x|h".
inline Profunctor companion(const Functor& f) {
  const FinCat& X = f.src;
  const FinCat& Y = f.tgt;
  std::vector<std::string> names;
  std::vector<int> xs, ys, hs;
  std::map<std::pair<int, int>, int> index;
  for (int x = 0; x < X.object_count(); ++x) {
    for (int h = 0; h < Y.morphism_count(); ++h) {
      if (Y.dom[h] != f.obj[x]) continue;
      index[{x, h}] = static_cast<int>(names.size());
      names.push_back(X.objects[x] + "|" + Y.mor_names[h]);
      xs.push_back(x);
      ys.push_back(Y.cod[h]);
      hs.push_back(h);
    }
  }
  Profunctor m = blank_profunctor(X, Y, std::move(names), xs, ys);
  for (int u = 0; u < m.size(); ++u) {
    for (int a = 0; a < X.morphism_count(); ++a) {
      if (X.cod[a] == xs[u]) {
        m.left[static_cast<std::size_t>(a * m.size() + u)] = index.at({X.dom[a], Y.compose(hs[u], f.mor[a])});
      }
    }
    for (int b = 0; b < Y.morphism_count(); ++b) {
      if (Y.dom[b] == ys[u]) {
        m.right[static_cast<std::size_t>(u * Y.morphism_count() + b)] = index.at({xs[u], Y.compose(b, hs[u])});
      }
    }
  }
  return m;
}

/// f^*(y, x) = Y(y, fx); element (h, x) is named "h|x".
inline Profunctor conjoint(const Functor& f) {
  const FinCat& X = f.src;
  const FinCat& Y = f.tgt;
  std::vector<std::string> names;
  std::vector<int> ys, xs, hs;
  std::map<std::pair<int, int>, int> index;
  for (int h = 0; h < Y.morphism_count(); ++h) {
    for (int x = 0; x < X.object_count(); ++x) {
      if (Y.cod[h] != f.obj[x]) continue;
      index[{h, x}] = static_cast<int>(names.size());
      names.push_back(Y.mor_names[h] + "|" + X.objects[x]);
      ys.push_back(Y.dom[h]);
      xs.push_back(x);
      hs.push_back(h);
    }
  }
  Profunctor m = blank_profunctor(Y, X, std::move(names), ys, xs);
  for (int u = 0; u < m.size(); ++u) {
    for (int a = 0; a < Y.morphism_count(); ++a) {
      if (Y.cod[a] == ys[u]) {
        m.left[static_cast<std::size_t>(a * m.size() + u)] = index.at({Y.compose(hs[u], a), xs[u]});
      }
    }
    for (int b = 0; b < X.morphism_count(); ++b) {
      if (X.dom[b] == xs[u]) {
        m.right[static_cast<std::size_t>(u * X.morphism_count() + b)] = index.at({Y.compose(f.mor[b], hs[u]), X.cod[b]});
      }
    }
  }
  return m;
}

/// Quotient data of the coend computing n after m.
struct CoendTable {
  std::vector<std::pair<int, int>> pairs;  // (u in m, v in n) with matching middle object
  std::vector<int> class_of_pair;
  std::vector<int> representative;  // pair index of the least member of each class
  int n_size = 0;
  std::vector<int> lookup_table;  // u * n_size + v -> class, or -1

  int lookup(int u, int v) const { return lookup_table[static_cast<std::size_t>(u * n_size + v)]; }
};

/// Composite n after m of m: X -|-> X' and n: X' -|-> X''. Elements are coend
/// classes [u|v], ordered by least representative pair.
inline std::pair<Profunctor, CoendTable> prof_compose(const Profunctor& m, const Profunctor& n) {
  if (!(m.tgt == n.src)) throw BoundaryMismatch("profunctor composite: target of first is not source of second");
  const FinCat& mid = m.tgt;
  CoendTable t;
  t.n_size = n.size();
  t.lookup_table.assign(static_cast<std::size_t>(m.size() * n.size()), -1);
  std::vector<int> pair_index(static_cast<std::size_t>(m.size() * n.size()), -1);
  for (int u = 0; u < m.size(); ++u) {
    for (int v = 0; v < n.size(); ++v) {
      if (m.xp[u] != n.x[v]) continue;
      pair_index[static_cast<std::size_t>(u * n.size() + v)] = static_cast<int>(t.pairs.size());
      t.pairs.emplace_back(u, v);
    }
  }
  UnionFind uf(static_cast<int>(t.pairs.size()));
  for (int u = 0; u < m.size(); ++u) {
    for (int b = 0; b < mid.morphism_count(); ++b) {
      if (mid.dom[b] != m.xp[u]) continue;
      int ub = m.act_right(u, b);
      for (int v = 0; v < n.size(); ++v) {
        if (n.x[v] != mid.cod[b]) continue;
        int bv = n.act_left(b, v);
        uf.unite(pair_index[static_cast<std::size_t>(ub * n.size() + v)],
                 pair_index[static_cast<std::size_t>(u * n.size() + bv)]);
      }
    }
  }
  std::vector<int> class_of_root(t.pairs.size(), -1);
  t.class_of_pair.assign(t.pairs.size(), -1);
  for (int p = 0; p < static_cast<int>(t.pairs.size()); ++p) {
    int r = uf.find(p);
    if (class_of_root[r] < 0) {
      class_of_root[r] = static_cast<int>(t.representative.size());
      t.representative.push_back(p);
    }
    t.class_of_pair[p] = class_of_root[r];
    auto [u, v] = t.pairs[p];
    t.lookup_table[static_cast<std::size_t>(u * n.size() + v)] = t.class_of_pair[p];
  }
  std::vector<std::string> names;
  std::vector<int> xs, xpps;
  for (int p : t.representative) {
    auto [u, v] = t.pairs[p];
    names.push_back("[" + m.names[u] + "|" + n.names[v] + "]");
    xs.push_back(m.x[u]);
    xpps.push_back(n.xp[v]);
  }
  Profunctor out = blank_profunctor(m.src, n.tgt, std::move(names), xs, xpps);
  for (int c = 0; c < out.size(); ++c) {
    auto [u, v] = t.pairs[t.representative[c]];
    for (int a = 0; a < m.src.morphism_count(); ++a) {
      if (m.src.cod[a] == m.x[u]) out.left[static_cast<std::size_t>(a * out.size() + c)] = t.lookup(m.act_left(a, u), v);
    }
    for (int b = 0; b < n.tgt.morphism_count(); ++b) {
      if (n.tgt.dom[b] == n.xp[v]) {
        out.right[static_cast<std::size_t>(c * n.tgt.morphism_count() + b)] = t.lookup(u, n.act_right(v, b));
      }
    }
  }
  return {std::move(out), std::move(t)};
}

inline Profunctor vcompose(const Profunctor& n, const Profunctor& m) { return prof_compose(m, n).first; }

/// Element bijection between two profunctors with the same boundary.
struct CanonicalIso {
  Profunctor source;
  Profunctor target;
  std::vector<int> forward;
  std::vector<int> backward;
};

inline std::optional<std::string> canonical_iso_failure(const CanonicalIso& c) {
  if (!(c.source.src == c.target.src) || !(c.source.tgt == c.target.tgt)) return "boundary";
  if (static_cast<int>(c.forward.size()) != c.source.size() || static_cast<int>(c.backward.size()) != c.target.size()) {
    return "bijection: sizes";
  }
  for (int u = 0; u < c.source.size(); ++u) {
    int v = c.forward[u];
    if (v < 0 || v >= c.target.size() || c.backward[v] != u) return "bijection: " + c.source.names[u];
    if (c.target.x[v] != c.source.x[u] || c.target.xp[v] != c.source.xp[u]) return "position: " + c.source.names[u];
  }
  for (int v = 0; v < c.target.size(); ++v) {
    int u = c.backward[v];
    if (u < 0 || u >= c.source.size() || c.forward[u] != v) return "bijection: " + c.target.names[v];
  }
  for (int u = 0; u < c.source.size(); ++u) {
    for (int a = 0; a < c.source.src.morphism_count(); ++a) {
      if (c.source.src.cod[a] != c.source.x[u]) continue;
      if (c.forward[c.source.act_left(a, u)] != c.target.act_left(a, c.forward[u])) {
        return "natural: " + c.source.src.mor_names[a] + "." + c.source.names[u];
      }
    }
    for (int b = 0; b < c.source.tgt.morphism_count(); ++b) {
      if (c.source.tgt.dom[b] != c.source.xp[u]) continue;
      if (c.forward[c.source.act_right(u, b)] != c.target.act_right(c.forward[u], b)) {
        return "natural: " + c.source.names[u] + "." + c.source.tgt.mor_names[b];
      }
    }
  }
  return std::nullopt;
}

namespace detail {

/// Completes a class-level map given on every pair; fails if it is not
/// constant on classes.
inline CanonicalIso finish_iso(Profunctor source, Profunctor target, std::vector<int> forward, const char* what) {
  std::vector<int> backward(static_cast<std::size_t>(target.size()), -1);
  for (int u = 0; u < static_cast<int>(forward.size()); ++u) {
    if (forward[u] < 0) throw Error(std::string(what) + ": incomplete");
    if (backward[forward[u]] >= 0) throw Error(std::string(what) + ": not injective");
    backward[forward[u]] = u;
  }
  for (int b : backward) {
    if (b < 0) throw Error(std::string(what) + ": not surjective");
  }
  CanonicalIso iso{std::move(source), std::move(target), std::move(forward), std::move(backward)};
  if (auto f = canonical_iso_failure(iso)) throw Error(std::string(what) + ": " + *f);
  return iso;
}

inline void assign_class(std::vector<int>& forward, int cls, int value, const char* what) {
  if (forward[cls] >= 0 && forward[cls] != value) throw Error(std::string(what) + ": not constant on coend classes");
  forward[cls] = value;
}

}  // namespace detail

/// rho_m: m after id(X) -> m, [alpha|u] |-> alpha.u.
inline CanonicalIso canonical_rho(const Profunctor& m) {
  auto [comp, table] = prof_compose(identity_prof(m.src), m);
  std::vector<int> fwd(static_cast<std::size_t>(comp.size()), -1);
  for (std::size_t p = 0; p < table.pairs.size(); ++p) {
    auto [a, u] = table.pairs[p];
    detail::assign_class(fwd, table.class_of_pair[p], m.act_left(a, u), "rho");
  }
  return detail::finish_iso(comp, m, std::move(fwd), "rho");
}

/// lambda_m: id(X') after m -> m, [u|beta] |-> u.beta.
inline CanonicalIso canonical_lambda(const Profunctor& m) {
  auto [comp, table] = prof_compose(m, identity_prof(m.tgt));
  std::vector<int> fwd(static_cast<std::size_t>(comp.size()), -1);
  for (std::size_t p = 0; p < table.pairs.size(); ++p) {
    auto [u, b] = table.pairs[p];
    detail::assign_class(fwd, table.class_of_pair[p], m.act_right(u, b), "lambda");
  }
  return detail::finish_iso(comp, m, std::move(fwd), "lambda");
}

/// assoc: p after (n after m) -> (p after n) after m, [[u|v]|w] |-> [u|[v|w]].
inline CanonicalIso canonical_assoc(const Profunctor& m, const Profunctor& n, const Profunctor& p) {
  auto [nm, t_nm] = prof_compose(m, n);
  auto [lhs, t_lhs] = prof_compose(nm, p);
  auto [pn, t_pn] = prof_compose(n, p);
  auto [rhs, t_rhs] = prof_compose(m, pn);
  std::vector<int> fwd(static_cast<std::size_t>(lhs.size()), -1);
  for (auto [u, v] : t_nm.pairs) {
    for (int w = 0; w < p.size(); ++w) {
      if (p.x[w] != n.xp[v]) continue;
      int a = t_lhs.lookup(t_nm.lookup(u, v), w);
      int b = t_rhs.lookup(u, t_pn.lookup(v, w));
      detail::assign_class(fwd, a, b, "assoc");
    }
  }
  return detail::finish_iso(lhs, rhs, std::move(fwd), "assoc");
}

inline CanonicalIso inverse(const CanonicalIso& c) { return CanonicalIso{c.target, c.source, c.backward, c.forward}; }

/// Some isomorphism m -> n respecting positions and actions, if one exists.
inline std::optional<CanonicalIso> find_prof_iso(const Profunctor& m, const Profunctor& n) {
  if (!(m.src == n.src) || !(m.tgt == n.tgt) || m.size() != n.size()) return std::nullopt;
  const int e = m.size();
  std::vector<int> fwd(static_cast<std::size_t>(e), -1);
  std::vector<char> used(static_cast<std::size_t>(e), 0);
  std::optional<CanonicalIso> found;
  std::function<bool(int)> rec = [&](int u) {
    if (u == e) {
      std::vector<int> back(static_cast<std::size_t>(e));
      for (int i = 0; i < e; ++i) back[fwd[i]] = i;
      CanonicalIso c{m, n, fwd, back};
      if (!canonical_iso_failure(c)) {
        found = std::move(c);
        return true;
      }
      return false;
    }
    for (int v = 0; v < e; ++v) {
      if (used[v] || n.x[v] != m.x[u] || n.xp[v] != m.xp[u]) continue;
      used[v] = 1;
      fwd[u] = v;
      if (rec(u + 1)) return true;
      used[v] = 0;
    }
    fwd[u] = -1;
    return false;
  };
  rec(0);
  return found;
}

/// Every profunctor src -|-> tgt with at most `max_elements` elements, up to
/// relabelling of elements within each hom-set position (elements are named
/// e0, e1, ... in position order).
inline std::vector<Profunctor> all_profunctors(const FinCat& src, const FinCat& tgt, int max_elements) {
  std::vector<Profunctor> out;
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < src.object_count(); ++a) {
    for (int b = 0; b < tgt.object_count(); ++b) slots.emplace_back(a, b);
  }
  std::vector<int> counts(slots.size(), 0);
  std::function<void(std::size_t, int)> rec_counts = [&](std::size_t s, int left) {
    if (s == slots.size()) {
      std::vector<std::string> names;
      std::vector<int> xs, xps;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        for (int i = 0; i < counts[k]; ++i) {
          names.push_back("e" + std::to_string(names.size()));
          xs.push_back(slots[k].first);
          xps.push_back(slots[k].second);
        }
      }
      Profunctor m = blank_profunctor(src, tgt, std::move(names), xs, xps);
      // Unknown action entries, filled by backtracking.
      std::vector<std::pair<bool, std::pair<int, int>>> holes;
      const int e = m.size();
      for (int u = 0; u < e; ++u) {
        for (int a = 0; a < src.morphism_count(); ++a) {
          if (src.cod[a] != xs[u]) continue;
          if (src.is_identity(a)) m.left[static_cast<std::size_t>(a * e + u)] = u;
          else holes.push_back({true, {a, u}});
        }
        for (int b = 0; b < tgt.morphism_count(); ++b) {
          if (tgt.dom[b] != xps[u]) continue;
          if (tgt.is_identity(b)) m.right[static_cast<std::size_t>(u * tgt.morphism_count() + b)] = u;
          else holes.push_back({false, {u, b}});
        }
      }
      std::function<void(std::size_t)> rec_holes = [&](std::size_t h) {
        if (h == holes.size()) {
          if (!profunctor_failure(m)) out.push_back(m);
          return;
        }
        auto [is_left, ab] = holes[h];
        for (int r = 0; r < e; ++r) {
          if (is_left) {
            auto [a, u] = ab;
            if (xs[r] != src.dom[a] || xps[r] != xps[u]) continue;
            m.left[static_cast<std::size_t>(a * e + u)] = r;
          } else {
            auto [u, b] = ab;
            if (xs[r] != xs[u] || xps[r] != tgt.cod[b]) continue;
            m.right[static_cast<std::size_t>(u * tgt.morphism_count() + b)] = r;
          }
          rec_holes(h + 1);
        }
        if (is_left) m.left[static_cast<std::size_t>(ab.first * e + ab.second)] = -1;
        else m.right[static_cast<std::size_t>(ab.first * tgt.morphism_count() + ab.second)] = -1;
      };
      rec_holes(0);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      counts[s] = k;
      rec_counts(s + 1, left - k);
    }
    counts[s] = 0;
  };
  rec_counts(0, max_elements);
  return out;
}

// ---------------------------------------------------------------------------
// cells of Cat as reduced families phi: m(x,x') -> n(fx, f'x')

inline std::optional<std::string> cat_cell_failure(const Functor& f, const Profunctor& m, const Profunctor& n,
                                                   const Functor& f2, const std::vector<int>& phi) {
  if (!(m.src == f.src) || !(m.tgt == f2.src) || !(n.src == f.tgt) || !(n.tgt == f2.tgt)) {
    throw BoundaryMismatch("category cell boundary");
  }
  if (static_cast<int>(phi.size()) != m.size()) return "shape: family length";
  for (int u = 0; u < m.size(); ++u) {
    int v = phi[u];
    if (v < 0 || v >= n.size() || n.x[v] != f.obj[m.x[u]] || n.xp[v] != f2.obj[m.xp[u]]) {
      return "position: image of " + m.names[u];
    }
  }
  for (int u = 0; u < m.size(); ++u) {
    for (int a = 0; a < m.src.morphism_count(); ++a) {
      if (m.src.cod[a] != m.x[u]) continue;
      if (phi[m.act_left(a, u)] != n.act_left(f.mor[a], phi[u])) {
        return "natural in the first variable at " + m.src.mor_names[a] + " acting on " + m.names[u];
      }
    }
    for (int b = 0; b < m.tgt.morphism_count(); ++b) {
      if (m.tgt.dom[b] != m.xp[u]) continue;
      if (phi[m.act_right(u, b)] != n.act_right(phi[u], f2.mor[b])) {
        return "natural in the second variable at " + m.tgt.mor_names[b] + " acting on " + m.names[u];
      }
    }
  }
  return std::nullopt;
}

/// Every natural family for the given boundary.
inline std::vector<std::vector<int>> cat_cells(const Functor& f, const Profunctor& m, const Profunctor& n,
                                               const Functor& f2) {
  std::vector<std::vector<int>> out;
  std::vector<int> phi(static_cast<std::size_t>(m.size()), -1);
  std::function<void(int)> rec = [&](int u) {
    if (u == m.size()) {
      if (!cat_cell_failure(f, m, n, f2, phi)) out.push_back(phi);
      return;
    }
    for (int v : n.at(f.obj[m.x[u]], f2.obj[m.xp[u]])) {
      phi[u] = v;
      rec(u + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace dblcat

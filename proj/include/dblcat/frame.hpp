#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dblcat/errors.hpp"
#include "dblcat/poset.hpp"
#include "dblcat/util.hpp"

namespace dblcat {

/// Finite frame (finite distributive lattice) with precomputed meet and join
/// tables.
struct FinFrame {
  std::vector<std::string> names;
  std::vector<Mask> up;
  std::vector<int> meet_tab;
  std::vector<int> join_tab;
  int top = -1;
  int bottom = -1;

  int size() const { return static_cast<int>(names.size()); }
  bool le(int a, int b) const { return has(up[a], b); }
  int meet(int a, int b) const { return meet_tab[static_cast<std::size_t>(a * size() + b)]; }
  int join(int a, int b) const { return join_tab[static_cast<std::size_t>(a * size() + b)]; }
  int meet_all(Mask s) const {
    int out = top;
    for_each_bit(s, [&](int i) { out = meet(out, i); });
    return out;
  }
  int join_all(Mask s) const {
    int out = bottom;
    for_each_bit(s, [&](int i) { out = join(out, i); });
    return out;
  }
  FinPoset order() const { return FinPoset{names, up}; }
  int index_of(std::string_view name) const {
    for (int i = 0; i < size(); ++i) {
      if (names[i] == name) return i;
    }
    return -1;
  }

  friend bool operator==(const FinFrame& a, const FinFrame& b) { return a.names == b.names && a.up == b.up; }
};

/// Computes lattice tables for a validated poset and checks the frame laws.
inline FinFrame frame_from_order(const FinPoset& p) {
  validate_poset(p);
  const int n = p.size();
  if (n == 0) throw LawViolation("frame bounded", "a frame has at least one element");
  FinFrame fr{p.names, p.up, std::vector<int>(static_cast<std::size_t>(n * n)),
              std::vector<int>(static_cast<std::size_t>(n * n)), -1, -1};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Mask lower = p.down(a) & p.down(b);
      Mask upper = p.up[a] & p.up[b];
      int glb = -1;
      int lub = -1;
      for_each_bit(lower, [&](int g) {
        if ((lower & ~p.down(g)) == 0) glb = g;
      });
      for_each_bit(upper, [&](int l) {
        if ((upper & ~p.up[l]) == 0) lub = l;
      });
      if (glb < 0) throw LawViolation("frame meets", "(" + p.names[a] + "," + p.names[b] + ") has no meet");
      if (lub < 0) throw LawViolation("frame joins", "(" + p.names[a] + "," + p.names[b] + ") has no join");
      fr.meet_tab[static_cast<std::size_t>(a * n + b)] = glb;
      fr.join_tab[static_cast<std::size_t>(a * n + b)] = lub;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (p.up[i] == bit(i) && fr.top < 0 && (p.down(i) == p.all())) fr.top = i;
    if (p.down(i) == bit(i) && (p.up[i] == p.all())) fr.bottom = i;
  }
  if (fr.top < 0 || fr.bottom < 0) throw LawViolation("frame bounded", "no top or bottom element");
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (fr.meet(a, fr.join(b, c)) != fr.join(fr.meet(a, b), fr.meet(a, c))) {
          throw LawViolation("frame distributive", "(" + p.names[a] + "," + p.names[b] + "," + p.names[c] + ")");
        }
      }
    }
  }
  return fr;
}

/// Checks stored tables, bounds and distributivity of an already built frame.
inline std::optional<std::string> frame_failure(const FinFrame& fr) {
  const FinPoset p = fr.order();
  if (auto f = poset_failure(p)) return "order: " + *f;
  const int n = fr.size();
  if (n == 0) return "bounded: empty";
  if (static_cast<int>(fr.meet_tab.size()) != n * n || static_cast<int>(fr.join_tab.size()) != n * n) {
    return "shape: table sizes";
  }
  if (fr.top < 0 || fr.top >= n || p.down(fr.top) != p.all()) return "bounded: top";
  if (fr.bottom < 0 || fr.bottom >= n || p.up[fr.bottom] != p.all()) return "bounded: bottom";
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int m = fr.meet(a, b);
      int j = fr.join(a, b);
      const std::string at = "(" + p.names[a] + "," + p.names[b] + ")";
      if (m < 0 || m >= n || (p.down(a) & p.down(b)) != p.down(m)) return "meet table at " + at;
      if (j < 0 || j >= n || (p.up[a] & p.up[b]) != p.up[j]) return "join table at " + at;
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (fr.meet(a, fr.join(b, c)) != fr.join(fr.meet(a, b), fr.meet(a, c))) {
          return "distributive at (" + p.names[a] + "," + p.names[b] + "," + p.names[c] + ")";
        }
      }
    }
  }
  return std::nullopt;
}

inline void validate_frame(const FinFrame& fr) {
  if (auto f = frame_failure(fr)) {
    auto colon = f->find(':');
    auto sp = f->find(" at ");
    if (sp != std::string::npos && (colon == std::string::npos || sp < colon)) {
      throw LawViolation("frame " + f->substr(0, sp), f->substr(sp + 4));
    }
    throw LawViolation("frame " + f->substr(0, colon), colon == std::string::npos ? "" : f->substr(colon + 2));
  }
}

inline FinFrame make_frame(std::vector<std::string> names, const std::vector<std::pair<int, int>>& le_pairs) {
  return frame_from_order(make_poset(std::move(names), le_pairs));
}

inline FinFrame chain_frame(int n) { return frame_from_order(chain_poset(n)); }

/// Lattice of down-closed subsets of `p` ordered by inclusion; elements sorted
/// by (cardinality, mask).
inline FinFrame downset_frame(const FinPoset& p) {
  auto sets = down_sets(p);
  std::stable_sort(sets.begin(), sets.end(), [](Mask a, Mask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  FinPoset order;
  for (Mask s : sets) order.names.push_back(set_string(s, p.names));
  order.up.assign(sets.size(), 0);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if ((sets[i] & ~sets[j]) == 0) order.up[i] |= bit(static_cast<int>(j));
    }
  }
  return frame_from_order(order);
}

inline std::vector<int> join_irreducibles(const FinFrame& fr) {
  std::vector<int> out;
  for (int j = 0; j < fr.size(); ++j) {
    if (j == fr.bottom) continue;
    Mask below = fr.order().down(j) & ~bit(j);
    if (fr.join_all(below) != j) out.push_back(j);
  }
  return out;
}

inline std::vector<int> meet_irreducibles(const FinFrame& fr) {
  std::vector<int> out;
  for (int j = 0; j < fr.size(); ++j) {
    if (j == fr.top) continue;
    Mask above = fr.up[j] & ~bit(j);
    if (fr.meet_all(above) != j) out.push_back(j);
  }
  return out;
}

inline std::optional<std::vector<int>> find_frame_iso(const FinFrame& a, const FinFrame& b) {
  return find_poset_iso(a.order(), b.order());
}

/// One representative per isomorphism class of frames with at most
/// `max_size` elements (Birkhoff: down-set lattices of finite posets).
inline std::vector<FinFrame> frame_classes(int max_size) {
  std::vector<FinFrame> out;
  for (int n = 0; n + 1 <= max_size; ++n) {
    for (const auto& p : poset_classes(n)) {
      auto fr = downset_frame(p);
      if (fr.size() <= max_size) out.push_back(std::move(fr));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// meet-preserving maps (vertical morphisms of Loc)

struct MeetMap {
  FinFrame src;
  FinFrame tgt;
  std::vector<int> map;

  int operator()(int x) const { return map[x]; }
  friend bool operator==(const MeetMap&, const MeetMap&) = default;
};

inline std::optional<std::string> meet_map_failure(const FinFrame& src, const FinFrame& tgt,
                                                   const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != src.size()) return "shape: map length differs from source size";
  for (int v : map) {
    if (v < 0 || v >= tgt.size()) return "shape: image out of range";
  }
  if (map[src.top] != tgt.top) return "preserves top: " + src.names[src.top];
  for (int a = 0; a < src.size(); ++a) {
    for (int b = 0; b < src.size(); ++b) {
      if (map[src.meet(a, b)] != tgt.meet(map[a], map[b])) {
        return "preserves meets: (" + src.names[a] + "," + src.names[b] + ")";
      }
    }
  }
  return std::nullopt;
}

inline MeetMap make_meet_map(FinFrame src, FinFrame tgt, std::vector<int> map) {
  if (auto f = meet_map_failure(src, tgt, map)) throw LawViolation("meet map", *f);
  return MeetMap{std::move(src), std::move(tgt), std::move(map)};
}

inline MeetMap identity_meet_map(const FinFrame& fr) {
  std::vector<int> id(static_cast<std::size_t>(fr.size()));
  std::iota(id.begin(), id.end(), 0);
  return MeetMap{fr, fr, std::move(id)};
}

/// n after m.
inline MeetMap compose(const MeetMap& n, const MeetMap& m) {
  if (!(m.tgt == n.src)) throw BoundaryMismatch("meet-map composite: target of first is not source of second");
  std::vector<int> out(m.map.size());
  for (std::size_t i = 0; i < m.map.size(); ++i) out[i] = n.map[m.map[i]];
  return MeetMap{m.src, n.tgt, std::move(out)};
}

/// Every meet-preserving map src -> tgt. Such maps correspond to monotone
/// assignments on the meet-irreducibles of src, extended by meets.
inline std::vector<std::vector<int>> meet_maps(const FinFrame& src, const FinFrame& tgt) {
  const auto irr = meet_irreducibles(src);
  const int k = static_cast<int>(irr.size());
  std::vector<std::vector<int>> out;
  std::vector<int> assign(static_cast<std::size_t>(k), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      std::vector<int> map(static_cast<std::size_t>(src.size()));
      for (int x = 0; x < src.size(); ++x) {
        int v = tgt.top;
        for (int t = 0; t < k; ++t) {
          if (src.le(x, irr[t])) v = tgt.meet(v, assign[t]);
        }
        map[x] = v;
      }
      out.push_back(std::move(map));
      return;
    }
    for (int v = 0; v < tgt.size(); ++v) {
      bool ok = true;
      for (int t = 0; t < i && ok; ++t) {
        if (src.le(irr[t], irr[i]) && !tgt.le(assign[t], v)) ok = false;
        if (src.le(irr[i], irr[t]) && !tgt.le(v, assign[t])) ok = false;
      }
      if (!ok) continue;
      assign[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------------------
// locale morphisms, stored by inverse image

struct LocaleMap {
  FinFrame src;
  FinFrame tgt;
  std::vector<int> inverse;  // frame homomorphism tgt -> src
  std::vector<int> direct;   // its right adjoint src -> tgt

  friend bool operator==(const LocaleMap& a, const LocaleMap& b) {
    return a.src == b.src && a.tgt == b.tgt && a.inverse == b.inverse;
  }
};

inline std::optional<std::string> frame_hom_failure(const FinFrame& from, const FinFrame& to,
                                                    const std::vector<int>& h) {
  if (static_cast<int>(h.size()) != from.size()) return "shape: map length differs from frame size";
  for (int v : h) {
    if (v < 0 || v >= to.size()) return "shape: image out of range";
  }
  if (h[from.top] != to.top) return "preserves top";
  if (h[from.bottom] != to.bottom) return "preserves bottom";
  for (int a = 0; a < from.size(); ++a) {
    for (int b = 0; b < from.size(); ++b) {
      if (h[from.meet(a, b)] != to.meet(h[a], h[b])) return "preserves meets: (" + from.names[a] + "," + from.names[b] + ")";
      if (h[from.join(a, b)] != to.join(h[a], h[b])) return "preserves joins: (" + from.names[a] + "," + from.names[b] + ")";
    }
  }
  return std::nullopt;
}

/// Right adjoint of a monotone map h: from -> to, x |-> join{y | h(y) <= x}.
inline std::vector<int> right_adjoint(const FinFrame& from, const FinFrame& to, const std::vector<int>& h) {
  std::vector<int> out(static_cast<std::size_t>(to.size()));
  for (int x = 0; x < to.size(); ++x) {
    Mask s = 0;
    for (int y = 0; y < from.size(); ++y) {
      if (to.le(h[y], x)) s |= bit(y);
    }
    out[x] = from.join_all(s);
  }
  return out;
}

inline LocaleMap make_locale_map(FinFrame src, FinFrame tgt, std::vector<int> inverse) {
  if (auto f = frame_hom_failure(tgt, src, inverse)) throw LawViolation("locale map", *f);
  auto direct = right_adjoint(tgt, src, inverse);
  return LocaleMap{std::move(src), std::move(tgt), std::move(inverse), std::move(direct)};
}

inline LocaleMap identity_locale_map(const FinFrame& fr) {
  std::vector<int> id(static_cast<std::size_t>(fr.size()));
  std::iota(id.begin(), id.end(), 0);
  return LocaleMap{fr, fr, id, id};
}

/// g after f.
inline LocaleMap compose(const LocaleMap& g, const LocaleMap& f) {
  if (!(f.tgt == g.src)) throw BoundaryMismatch("locale composite: target of first is not source of second");
  std::vector<int> inv(g.inverse.size());
  for (std::size_t z = 0; z < g.inverse.size(); ++z) inv[z] = f.inverse[g.inverse[z]];
  std::vector<int> dir(f.direct.size());
  for (std::size_t x = 0; x < f.direct.size(); ++x) dir[x] = g.direct[f.direct[x]];
  return LocaleMap{f.src, g.tgt, std::move(inv), std::move(dir)};
}

inline MeetMap direct_image(const LocaleMap& f) { return MeetMap{f.src, f.tgt, f.direct}; }
inline MeetMap inverse_image(const LocaleMap& f) { return MeetMap{f.tgt, f.src, f.inverse}; }

/// Every frame homomorphism from -> to, via monotone assignments on the
/// join-irreducibles of `from`.
inline std::vector<std::vector<int>> frame_homs(const FinFrame& from, const FinFrame& to) {
  const auto irr = join_irreducibles(from);
  const int k = static_cast<int>(irr.size());
  std::vector<std::vector<int>> out;
  std::vector<int> assign(static_cast<std::size_t>(k), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      std::vector<int> h(static_cast<std::size_t>(from.size()));
      for (int x = 0; x < from.size(); ++x) {
        int v = to.bottom;
        for (int t = 0; t < k; ++t) {
          if (from.le(irr[t], x)) v = to.join(v, assign[t]);
        }
        h[x] = v;
      }
      if (!frame_hom_failure(from, to, h)) out.push_back(std::move(h));
      return;
    }
    for (int v = 0; v < to.size(); ++v) {
      bool ok = true;
      for (int t = 0; t < i && ok; ++t) {
        if (from.le(irr[t], irr[i]) && !to.le(assign[t], v)) ok = false;
        if (from.le(irr[i], irr[t]) && !to.le(v, assign[t])) ok = false;
      }
      if (!ok) continue;
      assign[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

inline bool is_locale_iso(const LocaleMap& f) {
  if (f.src.size() != f.tgt.size()) return false;
  auto inv = invert_bijection(f.inverse, f.src.size());
  if (inv.empty()) return false;
  for (int a = 0; a < f.tgt.size(); ++a) {
    for (int b = 0; b < f.tgt.size(); ++b) {
      if (f.src.le(f.inverse[a], f.inverse[b]) != f.tgt.le(a, b)) return false;
    }
  }
  return true;
}

/// Cell condition of Loc: f2^*(n(y)) <= m(f^*(y)) for every y.
inline std::optional<std::string> loc_cell_failure(const LocaleMap& f, const MeetMap& m, const MeetMap& n,
                                                   const LocaleMap& f2) {
  if (!(m.src == f.src) || !(m.tgt == f2.src) || !(n.src == f.tgt) || !(n.tgt == f2.tgt)) {
    throw BoundaryMismatch("locale cell boundary");
  }
  for (int y = 0; y < n.src.size(); ++y) {
    int lhs = f2.inverse[n(y)];
    int rhs = m(f.inverse[y]);
    if (!m.tgt.le(lhs, rhs)) {
      return "at " + n.src.names[y] + ": " + m.tgt.names[lhs] + " not below " + m.tgt.names[rhs];
    }
  }
  return std::nullopt;
}

inline bool loc_cell_holds(const LocaleMap& f, const MeetMap& m, const MeetMap& n, const LocaleMap& f2) {
  return !loc_cell_failure(f, m, n, f2);
}

/// Quotient of a finite frame by the smallest lattice congruence identifying
/// the given pairs; returns the quotient and the class map.
inline std::pair<FinFrame, std::vector<int>> quotient_frame(const FinFrame& fr,
                                                            const std::vector<std::pair<int, int>>& pairs) {
  const int n = fr.size();
  UnionFind uf(n);
  for (auto [a, b] : pairs) uf.unite(a, b);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (uf.find(a) != uf.find(b)) continue;
        for (int c = 0; c < n; ++c) {
          changed |= uf.unite(fr.meet(a, c), fr.meet(b, c));
          changed |= uf.unite(fr.join(a, c), fr.join(b, c));
        }
      }
    }
  }
  std::vector<int> rep_index(static_cast<std::size_t>(n), -1);
  std::vector<int> reps;
  std::vector<int> cls(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    int r = uf.find(a);
    if (rep_index[r] < 0) {
      rep_index[r] = static_cast<int>(reps.size());
      reps.push_back(r);
    }
    cls[a] = rep_index[r];
  }
  // Name each class after its largest member.
  FinPoset order;
  std::vector<int> top_of(reps.size(), -1);
  for (int a = 0; a < n; ++a) {
    int c = cls[a];
    if (top_of[c] < 0 || fr.le(top_of[c], a)) top_of[c] = a;
  }
  for (int t : top_of) order.names.push_back(fr.names[t]);
  order.up.assign(reps.size(), 0);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      if (fr.le(top_of[i], top_of[j])) order.up[i] |= bit(static_cast<int>(j));
    }
  }
  return {frame_from_order(order), cls};
}

}  // namespace dblcat

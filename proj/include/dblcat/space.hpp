#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dblcat/errors.hpp"
#include "dblcat/frame.hpp"
#include "dblcat/poset.hpp"
#include "dblcat/util.hpp"

namespace dblcat {

/// Finite topological space. Opens are kept sorted by (cardinality, mask), so
/// two spaces with the same topology have the same representation.
struct FinSpace {
  std::vector<std::string> names;
  std::vector<Mask> opens;

  int size() const { return static_cast<int>(names.size()); }
  int open_count() const { return static_cast<int>(opens.size()); }
  Mask all() const { return full_mask(size()); }
  int open_index(Mask u) const {
    for (int i = 0; i < open_count(); ++i) {
      if (opens[i] == u) return i;
    }
    return -1;
  }
  bool is_open(Mask u) const { return open_index(u) >= 0; }
  int index_of(std::string_view name) const {
    for (int i = 0; i < size(); ++i) {
      if (names[i] == name) return i;
    }
    return -1;
  }
  Mask interior(Mask s) const {
    Mask out = 0;
    for (Mask u : opens) {
      if ((u & ~s) == 0) out |= u;
    }
    return out;
  }

  friend bool operator==(const FinSpace&, const FinSpace&) = default;
};

inline void sort_opens(std::vector<Mask>& opens) {
  std::sort(opens.begin(), opens.end(), [](Mask a, Mask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
}

inline std::optional<std::string> space_failure(const FinSpace& x) {
  if (x.size() > kMaxCarrier) return "size: more than 64 points";
  for (int i = 0; i < x.size(); ++i) {
    for (int j = i + 1; j < x.size(); ++j) {
      if (x.names[i] == x.names[j]) return "distinct names: " + x.names[i];
    }
  }
  for (Mask u : x.opens) {
    if ((u & ~x.all()) != 0) return "shape: open set out of range";
  }
  auto sorted = x.opens;
  sort_opens(sorted);
  if (sorted != x.opens) return "shape: opens not in canonical order or duplicated";
  if (!x.is_open(0)) return "empty set open: missing";
  if (!x.is_open(x.all())) return "whole space open: missing";
  for (Mask u : x.opens) {
    for (Mask v : x.opens) {
      if (!x.is_open(u | v)) return "unions: " + set_string(u, x.names) + " and " + set_string(v, x.names);
      if (!x.is_open(u & v)) return "intersections: " + set_string(u, x.names) + " and " + set_string(v, x.names);
    }
  }
  return std::nullopt;
}

inline void validate_space(const FinSpace& x) {
  if (auto f = space_failure(x)) {
    auto colon = f->find(':');
    throw LawViolation("space " + f->substr(0, colon), colon == std::string::npos ? "" : f->substr(colon + 2));
  }
}

/// Builds a space from its open sets; the list is put in canonical order.
inline FinSpace make_space(std::vector<std::string> names, std::vector<Mask> opens) {
  sort_opens(opens);
  FinSpace x{std::move(names), std::move(opens)};
  validate_space(x);
  return x;
}

inline FinSpace empty_space() { return FinSpace{{}, {0}}; }

inline FinSpace point_space() { return FinSpace{{"0"}, {0, 1}}; }

/// Two points with {0} open.
inline FinSpace sierpinski() { return make_space(default_names(2), {0, 1, 3}); }

inline FinSpace discrete_space(int n) {
  std::vector<Mask> opens;
  for (Mask s = 0; s <= full_mask(n); ++s) {
    opens.push_back(s);
    if (s == full_mask(n)) break;
  }
  return make_space(default_names(n), std::move(opens));
}

/// Alexandrov topology of a poset: the open sets are the down-sets.
inline FinSpace alexandrov(const FinPoset& p) { return make_space(p.names, down_sets(p)); }

/// x <= y iff every open containing y contains x.
inline FinPoset specialization(const FinSpace& x) {
  FinPoset p{x.names, std::vector<Mask>(static_cast<std::size_t>(x.size()), 0)};
  for (int a = 0; a < x.size(); ++a) {
    for (int b = 0; b < x.size(); ++b) {
      bool le = true;
      for (Mask u : x.opens) {
        if (has(u, b) && !has(u, a)) le = false;
      }
      if (le) p.up[a] |= bit(b);
    }
  }
  return p;
}

inline FinFrame open_lattice(const FinSpace& x) {
  FinPoset order;
  for (Mask u : x.opens) order.names.push_back(set_string(u, x.names));
  order.up.assign(x.opens.size(), 0);
  for (std::size_t i = 0; i < x.opens.size(); ++i) {
    for (std::size_t j = 0; j < x.opens.size(); ++j) {
      if ((x.opens[i] & ~x.opens[j]) == 0) order.up[i] |= bit(static_cast<int>(j));
    }
  }
  return frame_from_order(order);
}

inline FinSpace subspace(const FinSpace& x, Mask s) {
  std::vector<int> keep = bits_of(s);
  std::vector<std::string> names;
  for (int i : keep) names.push_back(x.names[i]);
  std::vector<Mask> opens;
  for (Mask u : x.opens) {
    Mask v = 0;
    for (std::size_t k = 0; k < keep.size(); ++k) {
      if (has(u, keep[k])) v |= bit(static_cast<int>(k));
    }
    opens.push_back(v);
  }
  sort_opens(opens);
  return FinSpace{std::move(names), std::move(opens)};
}

/// Every topology on n labelled points named 0..n-1 (n <= 4 is practical).
inline std::vector<FinSpace> all_spaces(int n) {
  std::vector<Mask> middle;
  for (Mask s = 1; s < full_mask(n); ++s) middle.push_back(s);
  std::vector<FinSpace> out;
  const Mask limit = bit(static_cast<int>(middle.size()));
  for (Mask choice = 0; choice < limit; ++choice) {
    std::vector<Mask> opens{0, full_mask(n)};
    for_each_bit(choice, [&](int k) { opens.push_back(middle[k]); });
    sort_opens(opens);
    FinSpace x{default_names(n), std::move(opens)};
    if (!space_failure(x)) out.push_back(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// continuous maps

struct ContinuousMap {
  FinSpace src;
  FinSpace tgt;
  std::vector<int> map;

  int operator()(int x) const { return map[x]; }
  Mask preimage(Mask v) const {
    Mask out = 0;
    for (int x = 0; x < src.size(); ++x) {
      if (has(v, map[x])) out |= bit(x);
    }
    return out;
  }
  Mask image(Mask u) const {
    Mask out = 0;
    for_each_bit(u, [&](int x) { out |= bit(map[x]); });
    return out;
  }
  friend bool operator==(const ContinuousMap&, const ContinuousMap&) = default;
};

inline std::optional<std::string> continuity_failure(const FinSpace& src, const FinSpace& tgt,
                                                     const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != src.size()) return "shape: map length differs from point count";
  for (int v : map) {
    if (v < 0 || v >= tgt.size()) return "shape: image out of range";
  }
  ContinuousMap f{src, tgt, map};
  for (Mask v : tgt.opens) {
    if (!src.is_open(f.preimage(v))) return "continuous: preimage of " + set_string(v, tgt.names) + " not open";
  }
  return std::nullopt;
}

inline ContinuousMap make_continuous(FinSpace src, FinSpace tgt, std::vector<int> map) {
  if (auto f = continuity_failure(src, tgt, map)) throw LawViolation("continuous map", *f);
  return ContinuousMap{std::move(src), std::move(tgt), std::move(map)};
}

inline ContinuousMap identity_continuous(const FinSpace& x) {
  std::vector<int> id(static_cast<std::size_t>(x.size()));
  std::iota(id.begin(), id.end(), 0);
  return ContinuousMap{x, x, std::move(id)};
}

/// g after f.
inline ContinuousMap compose(const ContinuousMap& g, const ContinuousMap& f) {
  if (!(f.tgt == g.src)) throw BoundaryMismatch("continuous composite: target of first is not source of second");
  std::vector<int> out(f.map.size());
  for (std::size_t i = 0; i < f.map.size(); ++i) out[i] = g.map[f.map[i]];
  return ContinuousMap{f.src, g.tgt, std::move(out)};
}

inline std::vector<std::vector<int>> continuous_maps(const FinSpace& src, const FinSpace& tgt) {
  std::vector<std::vector<int>> out;
  std::vector<int> radix(static_cast<std::size_t>(src.size()), tgt.size());
  if (src.size() == 0) return {std::vector<int>{}};
  for_each_tuple(radix, [&](const std::vector<int>& t) {
    if (!continuity_failure(src, tgt, t)) out.push_back(t);
    return true;
  });
  return out;
}

inline bool is_homeomorphism(const ContinuousMap& f) {
  if (f.src.size() != f.tgt.size()) return false;
  if (f.src.size() > 0 && invert_bijection(f.map, f.tgt.size()).empty()) return false;
  for (Mask u : f.src.opens) {
    if (!f.tgt.is_open(f.image(u))) return false;
  }
  return true;
}

inline std::optional<std::vector<int>> find_homeomorphism(const FinSpace& x, const FinSpace& y) {
  if (x.size() != y.size() || x.open_count() != y.open_count()) return std::nullopt;
  std::vector<int> perm(static_cast<std::size_t>(x.size()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    ContinuousMap f{x, y, perm};
    if (!continuity_failure(x, y, perm) && is_homeomorphism(f)) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

/// One representative per homeomorphism class of n-point spaces.
inline std::vector<FinSpace> space_classes(int n) {
  std::vector<FinSpace> reps;
  for (auto& x : all_spaces(n)) {
    bool seen = false;
    for (const auto& r : reps) {
      if (find_homeomorphism(x, r)) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(std::move(x));
  }
  return reps;
}

/// Inverse image on open lattices, as a locale map O(src) -> O(tgt).
inline LocaleMap locale_of(const ContinuousMap& f) {
  std::vector<int> inv;
  for (Mask v : f.tgt.opens) inv.push_back(f.src.open_index(f.preimage(v)));
  return make_locale_map(open_lattice(f.src), open_lattice(f.tgt), std::move(inv));
}

// ---------------------------------------------------------------------------
// vertical morphisms of Top: maps of opens preserving the whole space and
// binary intersections, indexed by open index

struct OpenMap {
  FinSpace src;
  FinSpace tgt;
  std::vector<int> map;

  Mask operator()(Mask u) const { return tgt.opens[map[src.open_index(u)]]; }
  Mask at(int open) const { return tgt.opens[map[open]]; }
  friend bool operator==(const OpenMap&, const OpenMap&) = default;
};

inline std::optional<std::string> open_map_failure(const FinSpace& src, const FinSpace& tgt,
                                                   const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != src.open_count()) return "shape: map length differs from open count";
  for (int v : map) {
    if (v < 0 || v >= tgt.open_count()) return "shape: image out of range";
  }
  if (tgt.opens[map[src.open_count() - 1]] != tgt.all()) return "preserves whole space";
  for (int a = 0; a < src.open_count(); ++a) {
    for (int b = 0; b < src.open_count(); ++b) {
      Mask lhs = tgt.opens[map[src.open_index(src.opens[a] & src.opens[b])]];
      if (lhs != (tgt.opens[map[a]] & tgt.opens[map[b]])) {
        return "preserves intersections: " + set_string(src.opens[a], src.names) + " and " +
               set_string(src.opens[b], src.names);
      }
    }
  }
  return std::nullopt;
}

inline OpenMap make_open_map(FinSpace src, FinSpace tgt, std::vector<int> map) {
  if (auto f = open_map_failure(src, tgt, map)) throw LawViolation("intersection-preserving map", *f);
  return OpenMap{std::move(src), std::move(tgt), std::move(map)};
}

/// Builds an open map from a function on open sets.
template <class F>
OpenMap open_map_from(const FinSpace& src, const FinSpace& tgt, F&& fn) {
  std::vector<int> map;
  for (Mask u : src.opens) {
    int k = tgt.open_index(fn(u));
    if (k < 0) throw LawViolation("intersection-preserving map", "shape: image of " + set_string(u, src.names) + " not open");
    map.push_back(k);
  }
  return make_open_map(src, tgt, std::move(map));
}

inline OpenMap identity_open_map(const FinSpace& x) {
  std::vector<int> id(static_cast<std::size_t>(x.open_count()));
  std::iota(id.begin(), id.end(), 0);
  return OpenMap{x, x, std::move(id)};
}

/// n after m.
inline OpenMap compose(const OpenMap& n, const OpenMap& m) {
  if (!(m.tgt == n.src)) throw BoundaryMismatch("open-map composite: target of first is not source of second");
  std::vector<int> out(m.map.size());
  for (std::size_t i = 0; i < m.map.size(); ++i) out[i] = n.map[m.map[i]];
  return OpenMap{m.src, n.tgt, std::move(out)};
}

inline MeetMap as_meet_map(const OpenMap& m) { return MeetMap{open_lattice(m.src), open_lattice(m.tgt), m.map}; }

inline std::vector<std::vector<int>> open_maps(const FinSpace& src, const FinSpace& tgt) {
  return meet_maps(open_lattice(src), open_lattice(tgt));
}

/// Companion of f in Top: U |-> union of the opens V with f^{-1}(V) inside U.
inline OpenMap companion(const ContinuousMap& f) {
  return open_map_from(f.src, f.tgt, [&](Mask u) {
    Mask out = 0;
    for (Mask v : f.tgt.opens) {
      if ((f.preimage(v) & ~u) == 0) out |= v;
    }
    return out;
  });
}

/// Conjoint of f in Top: the preimage map.
inline OpenMap conjoint(const ContinuousMap& f) {
  return open_map_from(f.tgt, f.src, [&](Mask v) { return f.preimage(v); });
}

/// Top cell condition on point sets: f2^{-1}(n(V)) inside m(f^{-1}(V)).
inline std::optional<std::string> top_cell_failure(const ContinuousMap& f, const OpenMap& m, const OpenMap& n,
                                                   const ContinuousMap& f2) {
  if (!(m.src == f.src) || !(m.tgt == f2.src) || !(n.src == f.tgt) || !(n.tgt == f2.tgt)) {
    throw BoundaryMismatch("space cell boundary");
  }
  for (int v = 0; v < n.src.open_count(); ++v) {
    Mask lhs = f2.preimage(n.at(v));
    Mask rhs = m(f.preimage(n.src.opens[v]));
    if ((lhs & ~rhs) != 0) {
      return "at " + set_string(n.src.opens[v], n.src.names) + ": " + set_string(lhs, m.tgt.names) +
             " not below " + set_string(rhs, m.tgt.names);
    }
  }
  return std::nullopt;
}

/// The same cells computed as Loc cells between the open lattices.
inline std::optional<std::string> top_cell_failure_via_locale(const ContinuousMap& f, const OpenMap& m,
                                                              const OpenMap& n, const ContinuousMap& f2) {
  return loc_cell_failure(locale_of(f), as_meet_map(m), as_meet_map(n), locale_of(f2));
}

}  // namespace dblcat

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dblcat/errors.hpp"
#include "dblcat/util.hpp"

namespace dblcat {

/// Finite partial order. `up[i]` holds bit j iff i <= j.
struct FinPoset {
  std::vector<std::string> names;
  std::vector<Mask> up;

  int size() const { return static_cast<int>(names.size()); }
  bool le(int i, int j) const { return has(up[i], j); }
  bool lt(int i, int j) const { return i != j && le(i, j); }
  Mask all() const { return full_mask(size()); }
  Mask down(int j) const {
    Mask out = 0;
    for (int i = 0; i < size(); ++i) {
      if (le(i, j)) out |= bit(i);
    }
    return out;
  }
  int index_of(std::string_view name) const {
    for (int i = 0; i < size(); ++i) {
      if (names[i] == name) return i;
    }
    return -1;
  }

  friend bool operator==(const FinPoset&, const FinPoset&) = default;
};

inline std::optional<std::string> poset_failure(const FinPoset& p) {
  const int n = p.size();
  if (n > kMaxCarrier) return "size: more than 64 elements";
  if (static_cast<int>(p.up.size()) != n) return "shape: order rows do not match element count";
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (p.names[i] == p.names[j]) return "distinct names: " + p.names[i];
    }
  }
  for (int i = 0; i < n; ++i) {
    if ((p.up[i] & ~p.all()) != 0) return "shape: order row " + p.names[i] + " out of range";
    if (!p.le(i, i)) return "reflexive: " + p.names[i];
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && p.le(i, j) && p.le(j, i)) return "antisymmetric: (" + p.names[i] + "," + p.names[j] + ")";
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!p.le(i, j)) continue;
      for (int k = 0; k < n; ++k) {
        if (p.le(j, k) && !p.le(i, k)) {
          return "transitive: (" + p.names[i] + "," + p.names[j] + "," + p.names[k] + ")";
        }
      }
    }
  }
  return std::nullopt;
}

inline void validate_poset(const FinPoset& p) {
  if (auto f = poset_failure(p)) {
    auto colon = f->find(':');
    throw LawViolation("poset " + f->substr(0, colon), colon == std::string::npos ? "" : f->substr(colon + 2));
  }
}

/// Builds a poset from explicit `i <= j` pairs. Reflexive pairs are implied;
/// the relation is not closed transitively, so a non-transitive input fails.
inline FinPoset make_poset(std::vector<std::string> names, const std::vector<std::pair<int, int>>& le_pairs) {
  FinPoset p{std::move(names), {}};
  p.up.assign(p.names.size(), 0);
  for (int i = 0; i < p.size(); ++i) p.up[i] |= bit(i);
  for (auto [i, j] : le_pairs) {
    if (i < 0 || j < 0 || i >= p.size() || j >= p.size()) throw LawViolation("poset shape", "pair index out of range");
    p.up[i] |= bit(j);
  }
  validate_poset(p);
  return p;
}

/// Reflexive-transitive closure of the given pairs.
inline FinPoset poset_closure(std::vector<std::string> names, const std::vector<std::pair<int, int>>& le_pairs) {
  const int n = static_cast<int>(names.size());
  std::vector<Mask> up(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) up[i] = bit(i);
  for (auto [i, j] : le_pairs) up[i] |= bit(j);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (has(up[i], k)) up[i] |= up[k];
    }
  }
  FinPoset p{std::move(names), std::move(up)};
  validate_poset(p);
  return p;
}

inline FinPoset empty_poset() { return FinPoset{}; }

inline FinPoset chain_poset(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return poset_closure(default_names(n), pairs);
}

inline FinPoset discrete_poset(int n) { return poset_closure(default_names(n), {}); }

/// One bottom element below two maximal ones.
inline FinPoset vee_poset() { return poset_closure(default_names(3), {{0, 1}, {0, 2}}); }

/// Two minimal elements below one top.
inline FinPoset wedge_poset() { return poset_closure(default_names(3), {{0, 2}, {1, 2}}); }

inline bool is_down_set(const FinPoset& p, Mask s) {
  for (int j = 0; j < p.size(); ++j) {
    if (has(s, j) && (p.down(j) & ~s) != 0) return false;
  }
  return true;
}

inline bool is_up_set(const FinPoset& p, Mask s) {
  for (int i = 0; i < p.size(); ++i) {
    if (has(s, i) && (p.up[i] & ~s) != 0) return false;
  }
  return true;
}

inline Mask up_closure(const FinPoset& p, Mask s) {
  Mask out = 0;
  for_each_bit(s, [&](int i) { out |= p.up[i]; });
  return out;
}

inline Mask down_closure(const FinPoset& p, Mask s) {
  Mask out = 0;
  for_each_bit(s, [&](int i) { out |= p.down(i); });
  return out;
}

inline std::vector<Mask> up_sets(const FinPoset& p) {
  std::vector<Mask> out;
  for (Mask s = 0; s <= p.all(); ++s) {
    if (is_up_set(p, s)) out.push_back(s);
    if (s == p.all()) break;
  }
  return out;
}

inline std::vector<Mask> down_sets(const FinPoset& p) {
  std::vector<Mask> out;
  for (Mask s = 0; s <= p.all(); ++s) {
    if (is_down_set(p, s)) out.push_back(s);
    if (s == p.all()) break;
  }
  return out;
}

inline std::vector<int> maximal_elements(const FinPoset& p, Mask within) {
  std::vector<int> out;
  for_each_bit(within, [&](int i) {
    if ((p.up[i] & within) == bit(i)) out.push_back(i);
  });
  return out;
}

/// Induced subposet on `s`, elements kept in index order.
inline FinPoset subposet(const FinPoset& p, Mask s) {
  std::vector<int> keep = bits_of(s);
  FinPoset out;
  for (int i : keep) out.names.push_back(p.names[i]);
  out.up.assign(keep.size(), 0);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = 0; b < keep.size(); ++b) {
      if (p.le(keep[a], keep[b])) out.up[a] |= bit(static_cast<int>(b));
    }
  }
  return out;
}

inline FinPoset rename_poset(const FinPoset& p, std::vector<std::string> names) {
  FinPoset out = p;
  out.names = std::move(names);
  return out;
}

inline FinPoset opposite(const FinPoset& p) {
  FinPoset out{p.names, std::vector<Mask>(p.up.size(), 0)};
  for (int i = 0; i < p.size(); ++i) out.up[i] = p.down(i);
  return out;
}

/// Every labelled poset on n elements named 0..n-1 (n <= 4 is practical).
inline std::vector<FinPoset> all_posets(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) slots.emplace_back(i, j);
    }
  }
  std::vector<FinPoset> out;
  const Mask limit = bit(static_cast<int>(slots.size()));
  for (Mask s = 0; s < limit; ++s) {
    FinPoset p{default_names(n), std::vector<Mask>(static_cast<std::size_t>(n), 0)};
    for (int i = 0; i < n; ++i) p.up[i] = bit(i);
    for_each_bit(s, [&](int k) { p.up[slots[k].first] |= bit(slots[k].second); });
    if (!poset_failure(p)) out.push_back(std::move(p));
  }
  return out;
}

/// Order isomorphism p -> q as an index map, if one exists.
inline std::optional<std::vector<int>> find_poset_iso(const FinPoset& p, const FinPoset& q) {
  const int n = p.size();
  if (q.size() != n) return std::nullopt;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) ok = p.le(i, j) == q.le(perm[i], perm[j]);
    }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

/// One representative per isomorphism class of n-element posets.
inline std::vector<FinPoset> poset_classes(int n) {
  std::vector<FinPoset> reps;
  for (auto& p : all_posets(n)) {
    bool seen = false;
    for (const auto& r : reps) {
      if (find_poset_iso(p, r)) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(std::move(p));
  }
  return reps;
}

// ---------------------------------------------------------------------------
// monotone maps

struct MonotoneMap {
  FinPoset src;
  FinPoset tgt;
  std::vector<int> map;

  int operator()(int x) const { return map[x]; }
  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;
};

inline std::optional<std::string> monotone_failure(const FinPoset& src, const FinPoset& tgt,
                                                   const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != src.size()) return "shape: map length differs from source size";
  for (int v : map) {
    if (v < 0 || v >= tgt.size()) return "shape: image out of range";
  }
  for (int i = 0; i < src.size(); ++i) {
    for (int j = 0; j < src.size(); ++j) {
      if (src.le(i, j) && !tgt.le(map[i], map[j])) return "monotone: (" + src.names[i] + "," + src.names[j] + ")";
    }
  }
  return std::nullopt;
}

inline MonotoneMap make_monotone(FinPoset src, FinPoset tgt, std::vector<int> map) {
  if (auto f = monotone_failure(src, tgt, map)) throw LawViolation("monotone map", *f);
  return MonotoneMap{std::move(src), std::move(tgt), std::move(map)};
}

inline MonotoneMap identity_map(const FinPoset& p) {
  std::vector<int> id(static_cast<std::size_t>(p.size()));
  std::iota(id.begin(), id.end(), 0);
  return MonotoneMap{p, p, std::move(id)};
}

/// g after f.
inline MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (!(f.tgt == g.src)) throw BoundaryMismatch("monotone composite: target of first is not source of second");
  std::vector<int> out(f.map.size());
  for (std::size_t i = 0; i < f.map.size(); ++i) out[i] = g.map[f.map[i]];
  return MonotoneMap{f.src, g.tgt, std::move(out)};
}

/// All monotone index maps src -> tgt in lexicographic order.
inline std::vector<std::vector<int>> monotone_maps(const FinPoset& src, const FinPoset& tgt) {
  std::vector<std::vector<int>> out;
  const int n = src.size();
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v < tgt.size(); ++v) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        if (src.le(j, i) && !tgt.le(cur[j], v)) ok = false;
        if (src.le(i, j) && !tgt.le(v, cur[j])) ok = false;
      }
      if (!ok) continue;
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

inline bool is_order_iso(const MonotoneMap& f) {
  if (f.src.size() != f.tgt.size()) return false;
  if (invert_bijection(f.map, f.tgt.size()).empty() && f.src.size() > 0) return false;
  for (int i = 0; i < f.src.size(); ++i) {
    for (int j = 0; j < f.src.size(); ++j) {
      if (f.tgt.le(f.map[i], f.map[j]) && !f.src.le(i, j)) return false;
    }
  }
  return true;
}

inline MonotoneMap inverse_iso(const MonotoneMap& f) {
  return MonotoneMap{f.tgt, f.src, invert_bijection(f.map, f.tgt.size())};
}

// ---------------------------------------------------------------------------
// order ideals: upward closed relations in src^op x tgt

struct OrderIdeal {
  FinPoset src;
  FinPoset tgt;
  BitMatrix rel;

  bool contains(int x, int y) const { return rel.get(x, y); }
  friend bool operator==(const OrderIdeal&, const OrderIdeal&) = default;
};

inline std::optional<std::string> ideal_failure(const FinPoset& src, const FinPoset& tgt, const BitMatrix& rel) {
  if (rel.rows() != src.size() || rel.cols() != tgt.size()) return "shape: relation dimensions";
  for (int x = 0; x < src.size(); ++x) {
    if ((rel.row(x) & ~tgt.all()) != 0) return "shape: column out of range";
    for (int y = 0; y < tgt.size(); ++y) {
      if (!rel.get(x, y)) continue;
      for (int x0 = 0; x0 < src.size(); ++x0) {
        if (!src.le(x0, x)) continue;
        Mask missing = tgt.up[y] & ~rel.row(x0);
        if (missing != 0) {
          int y1 = std::countr_zero(missing);
          return "upward closed: (" + src.names[x] + "," + tgt.names[y] + ") present but (" + src.names[x0] + "," +
                 tgt.names[y1] + ") missing";
        }
      }
    }
  }
  return std::nullopt;
}

inline OrderIdeal make_ideal(FinPoset src, FinPoset tgt, BitMatrix rel) {
  if (auto f = ideal_failure(src, tgt, rel)) throw LawViolation("order ideal", *f);
  return OrderIdeal{std::move(src), std::move(tgt), std::move(rel)};
}

inline OrderIdeal ideal_from_pairs(FinPoset src, FinPoset tgt, const std::vector<std::pair<int, int>>& pairs) {
  BitMatrix rel(src.size(), tgt.size());
  for (auto [x, y] : pairs) rel.set(x, y);
  return make_ideal(std::move(src), std::move(tgt), std::move(rel));
}

/// Smallest ideal containing `rel`.
inline BitMatrix ideal_closure(const FinPoset& src, const FinPoset& tgt, const BitMatrix& rel) {
  BitMatrix out(src.size(), tgt.size());
  for (int x = 0; x < src.size(); ++x) {
    for (int y = 0; y < tgt.size(); ++y) {
      if (!rel.get(x, y)) continue;
      for_each_bit(src.down(x), [&](int x0) { out.set_row(x0, out.row(x0) | tgt.up[y]); });
    }
  }
  return out;
}

inline OrderIdeal identity_ideal(const FinPoset& p) {
  BitMatrix rel(p.size(), p.size());
  for (int i = 0; i < p.size(); ++i) rel.set_row(i, p.up[i]);
  return OrderIdeal{p, p, std::move(rel)};
}

/// n after m (relation composition).
inline OrderIdeal compose(const OrderIdeal& n, const OrderIdeal& m) {
  if (!(m.tgt == n.src)) throw BoundaryMismatch("ideal composite: target of first is not source of second");
  return OrderIdeal{m.src, n.tgt, m.rel.then(n.rel)};
}

inline OrderIdeal companion(const MonotoneMap& f) {
  BitMatrix rel(f.src.size(), f.tgt.size());
  for (int x = 0; x < f.src.size(); ++x) rel.set_row(x, f.tgt.up[f(x)]);
  return OrderIdeal{f.src, f.tgt, std::move(rel)};
}

inline OrderIdeal conjoint(const MonotoneMap& f) {
  BitMatrix rel(f.tgt.size(), f.src.size());
  for (int y = 0; y < f.tgt.size(); ++y) {
    for (int x = 0; x < f.src.size(); ++x) {
      if (f.tgt.le(y, f(x))) rel.set(y, x);
    }
  }
  return OrderIdeal{f.tgt, f.src, std::move(rel)};
}

/// Every ideal src -> tgt, in a fixed deterministic order.
inline std::vector<BitMatrix> all_ideals(const FinPoset& src, const FinPoset& tgt) {
  const auto rows = up_sets(tgt);
  std::vector<BitMatrix> out;
  const int n = src.size();
  BitMatrix cur(n, tgt.size());
  std::function<void(int)> rec = [&](int x) {
    if (x == n) {
      out.push_back(cur);
      return;
    }
    for (Mask r : rows) {
      bool ok = true;
      for (int y = 0; y < x && ok; ++y) {
        if (src.le(y, x) && (r & ~cur.row(y)) != 0) ok = false;
        if (src.le(x, y) && (cur.row(y) & ~r) != 0) ok = false;
      }
      if (!ok) continue;
      cur.set_row(x, r);
      rec(x + 1);
    }
  };
  rec(0);
  return out;
}

/// (x,x') in m implies (f x, f2 x') in n; returns the first offending pair.
inline std::optional<std::string> pos_cell_failure(const MonotoneMap& f, const OrderIdeal& m, const OrderIdeal& n,
                                                   const MonotoneMap& f2) {
  for (int x = 0; x < m.src.size(); ++x) {
    for (int y = 0; y < m.tgt.size(); ++y) {
      if (m.contains(x, y) && !n.contains(f(x), f2(y))) {
        return "(" + m.src.names[x] + "," + m.tgt.names[y] + ") in m but (" + n.src.names[f(x)] + "," +
               n.tgt.names[f2(y)] + ") not in n";
      }
    }
  }
  return std::nullopt;
}

inline bool pos_cell_holds(const MonotoneMap& f, const OrderIdeal& m, const OrderIdeal& n, const MonotoneMap& f2) {
  return !pos_cell_failure(f, m, n, f2);
}

}  // namespace dblcat

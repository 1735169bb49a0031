#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dblcat/colimits.hpp"

namespace dblcat {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// Malformed document: bad JSON, unknown or missing fields, unknown names.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

namespace io {

inline void check_keys(const Json& j, std::initializer_list<const char*> required,
                       std::initializer_list<const char*> optional, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    allowed.insert(k);
    if (!j.contains(k)) throw ParseError(where + ": missing field \"" + k + "\"");
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw ParseError(where + ": unknown field \"" + k + "\"");
  }
}

inline const Json& field(const Json& j, const char* k) { return j.at(k); }

inline std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

inline std::vector<std::string> as_names(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of names");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& e : j) {
    out.push_back(as_string(e, where));
    if (!seen.insert(out.back()).second) throw ParseError(where + ": duplicate name \"" + out.back() + "\"");
  }
  return out;
}

inline int lookup(const std::vector<std::string>& names, const Json& j, const std::string& where) {
  std::string n = as_string(j, where);
  for (int i = 0; i < static_cast<int>(names.size()); ++i) {
    if (names[i] == n) return i;
  }
  throw ParseError(where + ": unknown name \"" + n + "\"");
}

inline std::vector<std::pair<int, int>> as_pairs(const Json& j, const std::vector<std::string>& a,
                                                 const std::vector<std::string>& b, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of pairs");
  std::vector<std::pair<int, int>> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw ParseError(where + ": expected a pair");
    out.emplace_back(lookup(a, p[0], where), lookup(b, p[1], where));
  }
  return out;
}

/// A total function given as [from, to] pairs, one per source element.
inline std::vector<int> as_function(const Json& j, const std::vector<std::string>& a, const std::vector<std::string>& b,
                                    const std::string& where) {
  std::vector<int> out(a.size(), -1);
  for (auto [x, y] : as_pairs(j, a, b, where)) {
    if (out[x] >= 0) throw ParseError(where + ": \"" + a[x] + "\" mapped twice");
    out[x] = y;
  }
  for (std::size_t x = 0; x < out.size(); ++x) {
    if (out[x] < 0) throw ParseError(where + ": \"" + a[x] + "\" not mapped");
  }
  return out;
}

inline Json function_json(const std::vector<int>& f, const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  Json out = Json::array();
  for (std::size_t x = 0; x < f.size(); ++x) out.push_back(Json::array({a[x], b[f[x]]}));
  return out;
}

inline Json names_json(const std::vector<std::string>& names) {
  Json out = Json::array();
  for (const auto& n : names) out.push_back(n);
  return out;
}

inline Json set_json(Mask s, const std::vector<std::string>& names) {
  Json out = Json::array();
  for_each_bit(s, [&](int i) { out.push_back(names[i]); });
  return out;
}

inline Mask as_set(const Json& j, const std::vector<std::string>& names, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list of names");
  Mask s = 0;
  for (const auto& e : j) s |= bit(lookup(names, e, where));
  return s;
}

}  // namespace io

// ---------------------------------------------------------------------------
// objects

inline Json to_json(const FinPoset& p) {
  Json le = Json::array();
  for (int i = 0; i < p.size(); ++i) {
    for (int j = 0; j < p.size(); ++j) {
      if (i != j && p.le(i, j)) le.push_back(Json::array({p.names[i], p.names[j]}));
    }
  }
  return Json{{"elements", io::names_json(p.names)}, {"le", le}};
}

inline FinPoset poset_from_json(const Json& j) {
  io::check_keys(j, {"elements", "le"}, {}, "poset");
  auto names = io::as_names(j["elements"], "poset elements");
  auto pairs = io::as_pairs(j["le"], names, names, "poset le");
  return make_poset(std::move(names), pairs);
}

inline Json to_json(const FinFrame& f) {
  FinPoset p{f.names, f.up};
  return to_json(p);
}

inline FinFrame frame_from_json(const Json& j) {
  io::check_keys(j, {"elements", "le"}, {}, "frame");
  return frame_from_order(poset_from_json(j));
}

inline Json to_json(const FinSpace& x) {
  Json opens = Json::array();
  for (Mask u : x.opens) opens.push_back(io::set_json(u, x.names));
  return Json{{"points", io::names_json(x.names)}, {"opens", opens}};
}

inline FinSpace space_from_json(const Json& j) {
  io::check_keys(j, {"points", "opens"}, {}, "space");
  auto names = io::as_names(j["points"], "space points");
  if (!j["opens"].is_array()) throw ParseError("space opens: expected an array");
  std::vector<Mask> opens;
  for (const auto& u : j["opens"]) opens.push_back(io::as_set(u, names, "space opens"));
  return make_space(std::move(names), std::move(opens));
}

inline Json to_json(const FinCat& c) {
  Json mors = Json::array(), comps = Json::array();
  for (int a = c.object_count(); a < c.morphism_count(); ++a) {
    mors.push_back(Json{{"name", c.mor_names[a]}, {"dom", c.objects[c.dom[a]]}, {"cod", c.objects[c.cod[a]]}});
  }
  for (int g = c.object_count(); g < c.morphism_count(); ++g) {
    for (int f = c.object_count(); f < c.morphism_count(); ++f) {
      int h = c.compose(g, f);
      if (h >= 0) comps.push_back(Json::array({c.mor_names[g], c.mor_names[f], c.mor_names[h]}));
    }
  }
  return Json{{"objects", io::names_json(c.objects)}, {"morphisms", mors}, {"composites", comps}};
}

inline FinCat category_from_json(const Json& j) {
  io::check_keys(j, {"objects", "morphisms"}, {"composites"}, "category");
  auto objects = io::as_names(j["objects"], "category objects");
  std::vector<MorphismSpec> mors;
  std::vector<std::string> mor_names;
  if (!j["morphisms"].is_array()) throw ParseError("category morphisms: expected an array");
  for (const auto& m : j["morphisms"]) {
    io::check_keys(m, {"name", "dom", "cod"}, {}, "category morphism");
    mors.push_back(MorphismSpec{io::as_string(m["name"], "morphism name"), io::lookup(objects, m["dom"], "morphism dom"),
                                io::lookup(objects, m["cod"], "morphism cod")});
    mor_names.push_back(mors.back().name);
  }
  std::vector<std::string> all_names = mor_names;
  for (const auto& o : objects) all_names.push_back("1_" + o);
  {
    std::set<std::string> seen;
    for (const auto& n : all_names) {
      if (!seen.insert(n).second) throw ParseError("category: duplicate morphism name \"" + n + "\"");
    }
  }
  std::vector<std::tuple<int, int, int>> comps;
  if (j.contains("composites")) {
    if (!j["composites"].is_array()) throw ParseError("category composites: expected an array");
    for (const auto& t : j["composites"]) {
      if (!t.is_array() || t.size() != 3) throw ParseError("category composites: expected [g, f, h]");
      int g = io::lookup(mor_names, t[0], "composite");
      int f = io::lookup(mor_names, t[1], "composite");
      int h = io::lookup(all_names, t[2], "composite");
      if (h >= static_cast<int>(mor_names.size())) h = -1 - (h - static_cast<int>(mor_names.size()));
      comps.emplace_back(g, f, h);
    }
  }
  return make_cat(std::move(objects), mors, comps);
}

// ---------------------------------------------------------------------------
// per-instance codecs

template <class D>
struct Codec;

template <>
struct Codec<PosD> {
  static Json object(const FinPoset& p) { return to_json(p); }
  static FinPoset object(const Json& j) { return poset_from_json(j); }
  static Json hmor(const MonotoneMap& f) { return Json{{"map", io::function_json(f.map, f.src.names, f.tgt.names)}}; }
  static MonotoneMap hmor(const Json& j, const FinPoset& a, const FinPoset& b) {
    io::check_keys(j, {"map"}, {}, "monotone map");
    return make_monotone(a, b, io::as_function(j["map"], a.names, b.names, "monotone map"));
  }
  static Json vmor(const OrderIdeal& m) {
    Json pairs = Json::array();
    for (int x = 0; x < m.src.size(); ++x) {
      for (int y = 0; y < m.tgt.size(); ++y) {
        if (m.contains(x, y)) pairs.push_back(Json::array({m.src.names[x], m.tgt.names[y]}));
      }
    }
    return Json{{"pairs", pairs}};
  }
  static OrderIdeal vmor(const Json& j, const FinPoset& a, const FinPoset& b) {
    io::check_keys(j, {"pairs"}, {}, "ideal");
    BitMatrix rel(a.size(), b.size());
    for (auto [x, y] : io::as_pairs(j["pairs"], a.names, b.names, "ideal pairs")) rel.set(x, y);
    return make_ideal(a, b, std::move(rel));
  }
};

template <>
struct Codec<TopD> {
  static Json object(const FinSpace& x) { return to_json(x); }
  static FinSpace object(const Json& j) { return space_from_json(j); }
  static Json hmor(const ContinuousMap& f) {
    return Json{{"map", io::function_json(f.map, f.src.names, f.tgt.names)}};
  }
  static ContinuousMap hmor(const Json& j, const FinSpace& a, const FinSpace& b) {
    io::check_keys(j, {"map"}, {}, "continuous map");
    return make_continuous(a, b, io::as_function(j["map"], a.names, b.names, "continuous map"));
  }
  static Json vmor(const OpenMap& m) {
    Json out = Json::array();
    for (int u = 0; u < m.src.open_count(); ++u) {
      out.push_back(Json::array({io::set_json(m.src.opens[u], m.src.names), io::set_json(m.at(u), m.tgt.names)}));
    }
    return Json{{"map", out}};
  }
  static OpenMap vmor(const Json& j, const FinSpace& a, const FinSpace& b) {
    io::check_keys(j, {"map"}, {}, "open map");
    if (!j["map"].is_array()) throw ParseError("open map: expected an array");
    std::vector<int> map(static_cast<std::size_t>(a.open_count()), -1);
    for (const auto& p : j["map"]) {
      if (!p.is_array() || p.size() != 2) throw ParseError("open map: expected [open, open]");
      int u = a.open_index(io::as_set(p[0], a.names, "open map"));
      int v = b.open_index(io::as_set(p[1], b.names, "open map"));
      if (u < 0 || v < 0) throw ParseError("open map: a listed set is not open");
      if (map[u] >= 0) throw ParseError("open map: an open is mapped twice");
      map[u] = v;
    }
    for (int v : map) {
      if (v < 0) throw ParseError("open map: not every open is mapped");
    }
    return make_open_map(a, b, std::move(map));
  }
};

template <>
struct Codec<LocD> {
  static Json object(const FinFrame& f) { return to_json(f); }
  static FinFrame object(const Json& j) { return frame_from_json(j); }
  static Json hmor(const LocaleMap& f) {
    return Json{{"inverse", io::function_json(f.inverse, f.tgt.names, f.src.names)}};
  }
  static LocaleMap hmor(const Json& j, const FinFrame& a, const FinFrame& b) {
    io::check_keys(j, {"inverse"}, {}, "locale map");
    return make_locale_map(a, b, io::as_function(j["inverse"], b.names, a.names, "locale map inverse"));
  }
  static Json vmor(const MeetMap& m) { return Json{{"map", io::function_json(m.map, m.src.names, m.tgt.names)}}; }
  static MeetMap vmor(const Json& j, const FinFrame& a, const FinFrame& b) {
    io::check_keys(j, {"map"}, {}, "meet map");
    return make_meet_map(a, b, io::as_function(j["map"], a.names, b.names, "meet map"));
  }
};

template <>
struct Codec<CatD> {
  static Json object(const FinCat& c) { return to_json(c); }
  static FinCat object(const Json& j) { return category_from_json(j); }
  static Json hmor(const Functor& f) {
    Json mors = Json::array();
    for (int a = f.src.object_count(); a < f.src.morphism_count(); ++a) {
      mors.push_back(Json::array({f.src.mor_names[a], f.tgt.mor_names[f.mor[a]]}));
    }
    return Json{{"objects", io::function_json(f.obj, f.src.objects, f.tgt.objects)}, {"morphisms", mors}};
  }
  static Functor hmor(const Json& j, const FinCat& a, const FinCat& b) {
    io::check_keys(j, {"objects", "morphisms"}, {}, "functor");
    auto obj = io::as_function(j["objects"], a.objects, b.objects, "functor objects");
    std::vector<int> mor(static_cast<std::size_t>(a.morphism_count()), -1);
    for (int x = 0; x < a.object_count(); ++x) mor[x] = b.ident(obj[x]);
    for (auto [u, v] : io::as_pairs(j["morphisms"], a.mor_names, b.mor_names, "functor morphisms")) {
      if (u < a.object_count()) throw ParseError("functor morphisms: identities are implied");
      if (mor[u] >= 0) throw ParseError("functor morphisms: \"" + a.mor_names[u] + "\" mapped twice");
      mor[u] = v;
    }
    for (int u = 0; u < a.morphism_count(); ++u) {
      if (mor[u] < 0) throw ParseError("functor morphisms: \"" + a.mor_names[u] + "\" not mapped");
    }
    return make_functor(a, b, std::move(obj), std::move(mor));
  }
  static Json vmor(const Profunctor& m) {
    Json elems = Json::array(), left = Json::array(), right = Json::array();
    for (int u = 0; u < m.size(); ++u) {
      elems.push_back(Json{{"name", m.names[u]}, {"x", m.src.objects[m.x[u]]}, {"xp", m.tgt.objects[m.xp[u]]}});
    }
    for (int a = m.src.object_count(); a < m.src.morphism_count(); ++a) {
      for (int u = 0; u < m.size(); ++u) {
        int v = m.act_left(a, u);
        if (v >= 0) left.push_back(Json::array({m.src.mor_names[a], m.names[u], m.names[v]}));
      }
    }
    for (int u = 0; u < m.size(); ++u) {
      for (int b = m.tgt.object_count(); b < m.tgt.morphism_count(); ++b) {
        int v = m.act_right(u, b);
        if (v >= 0) right.push_back(Json::array({m.names[u], m.tgt.mor_names[b], m.names[v]}));
      }
    }
    return Json{{"elements", elems}, {"left", left}, {"right", right}};
  }
  static Profunctor vmor(const Json& j, const FinCat& a, const FinCat& b) {
    io::check_keys(j, {"elements"}, {"left", "right"}, "profunctor");
    std::vector<std::string> names;
    std::vector<int> xs, xps;
    if (!j["elements"].is_array()) throw ParseError("profunctor elements: expected an array");
    std::set<std::string> seen;
    for (const auto& e : j["elements"]) {
      io::check_keys(e, {"name", "x", "xp"}, {}, "profunctor element");
      names.push_back(io::as_string(e["name"], "element name"));
      if (!seen.insert(names.back()).second) throw ParseError("profunctor: duplicate element \"" + names.back() + "\"");
      xs.push_back(io::lookup(a.objects, e["x"], "element x"));
      xps.push_back(io::lookup(b.objects, e["xp"], "element xp"));
    }
    Profunctor m = blank_profunctor(a, b, names, xs, xps);
    for (int u = 0; u < m.size(); ++u) {
      m.left[static_cast<std::size_t>(a.ident(xs[u]) * m.size() + u)] = u;
      m.right[static_cast<std::size_t>(u * b.morphism_count() + b.ident(xps[u]))] = u;
    }
    auto triples = [&](const char* key, auto&& set) {
      if (!j.contains(key)) return;
      if (!j[key].is_array()) throw ParseError(std::string("profunctor ") + key + ": expected an array");
      for (const auto& t : j[key]) {
        if (!t.is_array() || t.size() != 3) throw ParseError(std::string("profunctor ") + key + ": expected a triple");
        set(t);
      }
    };
    triples("left", [&](const Json& t) {
      int al = io::lookup(a.mor_names, t[0], "left action");
      int u = io::lookup(names, t[1], "left action");
      m.left[static_cast<std::size_t>(al * m.size() + u)] = io::lookup(names, t[2], "left action");
    });
    triples("right", [&](const Json& t) {
      int u = io::lookup(names, t[0], "right action");
      int be = io::lookup(b.mor_names, t[1], "right action");
      m.right[static_cast<std::size_t>(u * b.morphism_count() + be)] = io::lookup(names, t[2], "right action");
    });
    validate_profunctor(m);
    return m;
  }
};

// ---------------------------------------------------------------------------
// vertical morphisms as standalone documents

inline Json to_json(const OrderIdeal& m) {
  Json j{{"source", to_json(m.src)}, {"target", to_json(m.tgt)}};
  j["pairs"] = Codec<PosD>::vmor(m)["pairs"];
  return j;
}

inline OrderIdeal ideal_from_json(const Json& j) {
  io::check_keys(j, {"source", "target", "pairs"}, {}, "ideal");
  return Codec<PosD>::vmor(Json{{"pairs", j["pairs"]}}, poset_from_json(j["source"]), poset_from_json(j["target"]));
}

inline Json to_json(const MeetMap& m) {
  Json j{{"source", to_json(m.src)}, {"target", to_json(m.tgt)}};
  j["map"] = Codec<LocD>::vmor(m)["map"];
  return j;
}

inline MeetMap meetmap_from_json(const Json& j) {
  io::check_keys(j, {"source", "target", "map"}, {}, "meetmap");
  return Codec<LocD>::vmor(Json{{"map", j["map"]}}, frame_from_json(j["source"]), frame_from_json(j["target"]));
}

inline Json to_json(const Profunctor& m) {
  Json j{{"source", to_json(m.src)}, {"target", to_json(m.tgt)}};
  Json body = Codec<CatD>::vmor(m);
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

inline Profunctor profunctor_from_json(const Json& j) {
  io::check_keys(j, {"source", "target", "elements"}, {"left", "right"}, "profunctor");
  Json body{{"elements", j["elements"]}};
  if (j.contains("left")) body["left"] = j["left"];
  if (j.contains("right")) body["right"] = j["right"];
  return Codec<CatD>::vmor(body, category_from_json(j["source"]), category_from_json(j["target"]));
}

// ---------------------------------------------------------------------------
// lax functors over posets, lax slices and slice objects

namespace io {

inline std::string arrow_name(const FinCat& base, int a) {
  return base.objects[base.dom[a]] + "<" + base.objects[base.cod[a]];
}

inline Tag tag_of(const Json& j) {
  auto t = parse_tag(as_string(j, "instance"));
  if (!t) throw ParseError("unknown instance \"" + j.get<std::string>() + "\"");
  return *t;
}

}  // namespace io

template <class D>
Json lax_to_json(const LaxFunctor<D>& F) {
  if (!is_thin_skeletal(F.base)) throw Unsupported("serialising a lax functor over a base that is not a poset");
  const FinCat& B = F.base;
  Json carriers = Json::array(), verticals = Json::array();
  for (int b = 0; b < B.object_count(); ++b) {
    carriers.push_back(Json{{"at", B.objects[b]}, {"object", Codec<D>::object(F.carrier[b])}});
  }
  for (int a = 0; a < B.morphism_count(); ++a) {
    if (B.is_identity(a)) continue;
    verticals.push_back(
        Json{{"from", B.objects[B.dom[a]]}, {"to", B.objects[B.cod[a]]}, {"vertical", Codec<D>::vmor(F.at(a))}});
  }
  Json j{{"instance", tag_name(D::tag)}, {"base", to_json(base_order(B))}, {"carriers", carriers},
         {"verticals", verticals}};
  if constexpr (!D::propositional) {
    Json comps = Json::array();
    for (const auto& [key, w] : F.comparison) {
      auto [a, a2] = key;
      auto src = prof_compose(F.at(a), F.at(a2)).first;
      const auto& tgt = F.at(B.compose(a2, a));
      comps.push_back(Json{{"first", io::arrow_name(B, a)},
                           {"second", io::arrow_name(B, a2)},
                           {"map", io::function_json(w, src.names, tgt.names)}});
    }
    j["comparisons"] = comps;
  }
  return j;
}

template <class D>
LaxFunctor<D> lax_from_json(const Json& j) {
  io::check_keys(j, {"instance", "base", "carriers", "verticals"}, {"comparisons"}, "laxfunctor");
  if (io::tag_of(j["instance"]) != D::tag) throw ParseError("laxfunctor: instance mismatch");
  FinPoset base = poset_from_json(j["base"]);
  std::vector<typename D::Object> carriers(static_cast<std::size_t>(base.size()));
  std::vector<bool> have(static_cast<std::size_t>(base.size()), false);
  if (!j["carriers"].is_array()) throw ParseError("laxfunctor carriers: expected an array");
  for (const auto& c : j["carriers"]) {
    io::check_keys(c, {"at", "object"}, {}, "carrier");
    int b = io::lookup(base.names, c["at"], "carrier at");
    if (have[b]) throw ParseError("laxfunctor: carrier at \"" + base.names[b] + "\" given twice");
    carriers[b] = Codec<D>::object(c["object"]);
    have[b] = true;
  }
  for (int b = 0; b < base.size(); ++b) {
    if (!have[b]) throw ParseError("laxfunctor: missing carrier at \"" + base.names[b] + "\"");
  }
  std::map<std::pair<int, int>, typename D::VMor> vs;
  if (!j["verticals"].is_array()) throw ParseError("laxfunctor verticals: expected an array");
  for (const auto& v : j["verticals"]) {
    io::check_keys(v, {"from", "to", "vertical"}, {}, "vertical");
    int b = io::lookup(base.names, v["from"], "vertical from");
    int b2 = io::lookup(base.names, v["to"], "vertical to");
    if (b == b2 || !base.le(b, b2)) throw ParseError("laxfunctor: vertical on a non-arrow");
    if (vs.count({b, b2})) throw ParseError("laxfunctor: vertical given twice");
    vs[{b, b2}] = Codec<D>::vmor(v["vertical"], carriers[b], carriers[b2]);
  }
  auto F = lax_from_poset<D>(base, carriers, vs);
  if constexpr (!D::propositional) {
    const FinCat& B = F.base;
    std::vector<std::string> arrows;
    for (int a = 0; a < B.morphism_count(); ++a) arrows.push_back(io::arrow_name(B, a));
    if (j.contains("comparisons")) {
      if (!j["comparisons"].is_array()) throw ParseError("laxfunctor comparisons: expected an array");
      for (const auto& c : j["comparisons"]) {
        io::check_keys(c, {"first", "second", "map"}, {}, "comparison");
        int a = io::lookup(arrows, c["first"], "comparison");
        int a2 = io::lookup(arrows, c["second"], "comparison");
        if (B.is_identity(a) || B.is_identity(a2) || B.cod[a] != B.dom[a2]) throw ParseError("comparison: not composable");
        auto src = prof_compose(F.at(a), F.at(a2)).first;
        F.comparison[{a, a2}] = io::as_function(c["map"], src.names, F.at(B.compose(a2, a)).names, "comparison map");
      }
    }
  } else if (j.contains("comparisons")) {
    throw ParseError("laxfunctor: comparisons only apply to cat");
  }
  require_lax_functor(F);
  return F;
}

template <class D>
Json lax_slice_to_json(const LaxSlice<D>& s) {
  Json j = lax_to_json(s.functor);
  const FinCat& B = s.functor.base;
  Json comps = Json::array();
  for (int b = 0; b < B.object_count(); ++b) {
    comps.push_back(Json{{"at", B.objects[b]}, {"map", Codec<D>::hmor(s.map.component[b])}});
  }
  Json over{{"functor", lax_to_json(s.over())}, {"components", comps}};
  if constexpr (!D::propositional) {
    Json sq = Json::array();
    for (int a = 0; a < B.morphism_count(); ++a) {
      if (B.is_identity(a)) continue;
      sq.push_back(Json{{"from", B.objects[B.dom[a]]},
                        {"to", B.objects[B.cod[a]]},
                        {"map", io::function_json(s.map.square[a], s.functor.at(a).names, s.over().at(a).names)}});
    }
    over["squares"] = sq;
  }
  j["over"] = over;
  return j;
}

template <class D>
LaxSlice<D> lax_slice_from_json(const Json& j) {
  io::check_keys(j, {"instance", "base", "carriers", "verticals", "over"}, {"comparisons"}, "laxfunctor over");
  Json plain = j;
  plain.erase("over");
  auto M = lax_from_json<D>(plain);
  const Json& o = j["over"];
  io::check_keys(o, {"functor", "components"}, {"squares"}, "over");
  auto F = lax_from_json<D>(o["functor"]);
  if (!(F.base == M.base)) throw BoundaryMismatch("lax slice: functors over different bases");
  const FinCat& B = M.base;
  std::vector<typename D::HMor> comps(static_cast<std::size_t>(B.object_count()));
  std::vector<bool> have(static_cast<std::size_t>(B.object_count()), false);
  if (!o["components"].is_array()) throw ParseError("over components: expected an array");
  for (const auto& c : o["components"]) {
    io::check_keys(c, {"at", "map"}, {}, "component");
    int b = io::lookup(B.objects, c["at"], "component at");
    if (have[b]) throw ParseError("over: component given twice");
    comps[b] = Codec<D>::hmor(c["map"], M.carrier[b], F.carrier[b]);
    have[b] = true;
  }
  for (int b = 0; b < B.object_count(); ++b) {
    if (!have[b]) throw ParseError("over: missing component at \"" + B.objects[b] + "\"");
  }
  auto t = transformation(M, F, comps);
  if constexpr (!D::propositional) {
    std::vector<std::string> arrows;
    for (int a = 0; a < B.morphism_count(); ++a) arrows.push_back(io::arrow_name(B, a));
    if (o.contains("squares")) {
      for (const auto& s : o["squares"]) {
        io::check_keys(s, {"from", "to", "map"}, {}, "square");
        int b = io::lookup(B.objects, s["from"], "square from");
        int b2 = io::lookup(B.objects, s["to"], "square to");
        int a = poset_arrow(B, b, b2);
        if (a < 0 || B.is_identity(a)) throw ParseError("square: not an arrow");
        t.square[a] = io::as_function(s["map"], M.at(a).names, F.at(a).names, "square map");
      }
    }
  } else if (o.contains("squares")) {
    throw ParseError("over: squares only apply to cat");
  }
  LaxSlice<D> out{M, t};
  auto r = validate_lax_slice(out);
  if (!r.ok()) throw LawViolation("lax slice", r.failures.front());
  return out;
}

/// Slice object X -> D; with "over", D is the collage of that lax functor.
template <class D>
struct ParsedSlice {
  SliceObject<D> slice;
  std::optional<LaxFunctor<D>> over;
};

template <class D>
Json slice_to_json(const SliceObject<D>& s, const LaxFunctor<D>* over = nullptr) {
  Json j{{"instance", tag_name(D::tag)}, {"object", Codec<D>::object(s.object)}, {"base", Codec<D>::object(s.base())},
         {"map", Codec<D>::hmor(s.map)}};
  if (over) j["over"] = lax_to_json(*over);
  return j;
}

template <class D>
Json slice_to_json(const SliceObject<D>& s, const LaxFunctor<D>& over) {
  return slice_to_json(s, &over);
}

template <class D>
ParsedSlice<D> slice_from_json(const Json& j) {
  io::check_keys(j, {"instance", "object", "map"}, {"base", "over"}, "sliceobject");
  if (io::tag_of(j["instance"]) != D::tag) throw ParseError("sliceobject: instance mismatch");
  if (!j.contains("base") && !j.contains("over")) throw ParseError("sliceobject: needs \"base\" or \"over\"");
  auto x = Codec<D>::object(j["object"]);
  std::optional<LaxFunctor<D>> over;
  typename D::Object base;
  if (j.contains("over")) {
    over = lax_from_json<D>(j["over"]);
    base = collage(*over).total;
    if (j.contains("base") && !(Codec<D>::object(j["base"]) == base)) {
      throw BoundaryMismatch("sliceobject: base differs from the collage of \"over\"");
    }
  } else {
    base = Codec<D>::object(j["base"]);
  }
  auto map = Codec<D>::hmor(j["map"], x, base);
  return ParsedSlice<D>{SliceObject<D>{std::move(x), std::move(map)}, std::move(over)};
}

// ---------------------------------------------------------------------------
// documents

inline const std::vector<std::string>& document_kinds() {
  static const std::vector<std::string> kinds{"poset",   "space",      "frame",      "category",   "ideal",
                                              "meetmap", "profunctor", "laxfunctor", "sliceobject"};
  return kinds;
}

struct Document {
  std::string schema_version = kSchemaVersion;
  std::string kind;
  Json body;
};

inline Document parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  io::check_keys(j, {"schema_version", "kind", "body"}, {}, "document");
  Document d{io::as_string(j["schema_version"], "schema_version"), io::as_string(j["kind"], "kind"), j["body"]};
  if (d.schema_version != kSchemaVersion) throw ParseError("unsupported schema_version \"" + d.schema_version + "\"");
  const auto& ks = document_kinds();
  if (std::find(ks.begin(), ks.end(), d.kind) == ks.end()) throw ParseError("unknown kind \"" + d.kind + "\"");
  return d;
}

inline std::string emit_document(const std::string& kind, const Json& body) {
  Json j{{"schema_version", kSchemaVersion}, {"kind", kind}, {"body", body}};
  return j.dump(2) + "\n";
}

/// Instance of a laxfunctor or sliceobject body.
inline Tag document_instance(const Document& d) {
  if (!d.body.is_object() || !d.body.contains("instance")) throw ParseError(d.kind + ": missing field \"instance\"");
  return io::tag_of(d.body["instance"]);
}

template <class D>
std::string object_kind() {
  if constexpr (std::is_same_v<D, PosD>) return "poset";
  else if constexpr (std::is_same_v<D, TopD>) return "space";
  else if constexpr (std::is_same_v<D, LocD>) return "frame";
  else return "category";
}

}  // namespace dblcat

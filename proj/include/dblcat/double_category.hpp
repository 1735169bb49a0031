#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dblcat/category.hpp"
#include "dblcat/errors.hpp"
#include "dblcat/frame.hpp"
#include "dblcat/poset.hpp"
#include "dblcat/space.hpp"

namespace dblcat {

enum class Tag { Pos, Top, Loc, Cat };

inline const char* tag_name(Tag t) {
  switch (t) {
    case Tag::Pos: return "pos";
    case Tag::Top: return "top";
    case Tag::Loc: return "loc";
    case Tag::Cat: return "cat";
  }
  return "?";
}

inline std::optional<Tag> parse_tag(std::string_view s) {
  if (s == "pos") return Tag::Pos;
  if (s == "top") return Tag::Top;
  if (s == "loc") return Tag::Loc;
  if (s == "cat") return Tag::Cat;
  return std::nullopt;
}

/// A cell  left -> right  with top f: src(left) -> src(right) and bottom
/// f': tgt(left) -> tgt(right).
template <class D>
struct Cell {
  typename D::HMor top;
  typename D::HMor bottom;
  typename D::VMor left;
  typename D::VMor right;
  typename D::Witness witness{};

  friend bool operator==(const Cell&, const Cell&) = default;
};

// ---------------------------------------------------------------------------
// instance traits

struct PosD {
  using Object = FinPoset;
  using HMor = MonotoneMap;
  using VMor = OrderIdeal;
  using Witness = std::monostate;
  static constexpr Tag tag = Tag::Pos;
  static constexpr bool propositional = true;

  static const Object& hsrc(const HMor& f) { return f.src; }
  static const Object& htgt(const HMor& f) { return f.tgt; }
  static const Object& vsrc(const VMor& m) { return m.src; }
  static const Object& vtgt(const VMor& m) { return m.tgt; }
  static HMor hid(const Object& x) { return identity_map(x); }
  static VMor vid(const Object& x) { return identity_ideal(x); }
  static HMor hcomp(const HMor& g, const HMor& f) { return compose(g, f); }
  static VMor vcomp(const VMor& n, const VMor& m) { return compose(n, m); }
  static VMor companion_of(const HMor& f) { return companion(f); }
  static VMor conjoint_of(const HMor& f) { return conjoint(f); }
  static std::optional<std::string> cell_failure(const HMor& f, const VMor& m, const VMor& n, const HMor& f2,
                                                 const Witness&) {
    return pos_cell_failure(f, m, n, f2);
  }
  static Object zero() { return empty_poset(); }
  static int size(const Object& x) { return x.size(); }
  static std::vector<HMor> hmors(const Object& a, const Object& b) {
    std::vector<HMor> out;
    for (auto& m : monotone_maps(a, b)) out.push_back(MonotoneMap{a, b, std::move(m)});
    return out;
  }
  static std::vector<VMor> vmors(const Object& a, const Object& b, int = 0) {
    std::vector<VMor> out;
    for (auto& r : all_ideals(a, b)) out.push_back(OrderIdeal{a, b, std::move(r)});
    return out;
  }
  static bool is_iso(const HMor& f) { return is_order_iso(f); }
};

struct LocD {
  using Object = FinFrame;
  using HMor = LocaleMap;
  using VMor = MeetMap;
  using Witness = std::monostate;
  static constexpr Tag tag = Tag::Loc;
  static constexpr bool propositional = true;

  static const Object& hsrc(const HMor& f) { return f.src; }
  static const Object& htgt(const HMor& f) { return f.tgt; }
  static const Object& vsrc(const VMor& m) { return m.src; }
  static const Object& vtgt(const VMor& m) { return m.tgt; }
  static HMor hid(const Object& x) { return identity_locale_map(x); }
  static VMor vid(const Object& x) { return identity_meet_map(x); }
  static HMor hcomp(const HMor& g, const HMor& f) { return compose(g, f); }
  static VMor vcomp(const VMor& n, const VMor& m) { return compose(n, m); }
  static VMor companion_of(const HMor& f) { return direct_image(f); }
  static VMor conjoint_of(const HMor& f) { return inverse_image(f); }
  static std::optional<std::string> cell_failure(const HMor& f, const VMor& m, const VMor& n, const HMor& f2,
                                                 const Witness&) {
    return loc_cell_failure(f, m, n, f2);
  }
  /// The one-element frame (the empty locale).
  static Object zero() { return frame_from_order(FinPoset{{"0"}, {1}}); }
  static int size(const Object& x) { return x.size(); }
  static std::vector<HMor> hmors(const Object& a, const Object& b) {
    std::vector<HMor> out;
    for (auto& h : frame_homs(b, a)) out.push_back(make_locale_map(a, b, std::move(h)));
    return out;
  }
  static std::vector<VMor> vmors(const Object& a, const Object& b, int = 0) {
    std::vector<VMor> out;
    for (auto& m : meet_maps(a, b)) out.push_back(MeetMap{a, b, std::move(m)});
    return out;
  }
  static bool is_iso(const HMor& f) { return is_locale_iso(f); }
};

struct TopD {
  using Object = FinSpace;
  using HMor = ContinuousMap;
  using VMor = OpenMap;
  using Witness = std::monostate;
  static constexpr Tag tag = Tag::Top;
  static constexpr bool propositional = true;

  static const Object& hsrc(const HMor& f) { return f.src; }
  static const Object& htgt(const HMor& f) { return f.tgt; }
  static const Object& vsrc(const VMor& m) { return m.src; }
  static const Object& vtgt(const VMor& m) { return m.tgt; }
  static HMor hid(const Object& x) { return identity_continuous(x); }
  static VMor vid(const Object& x) { return identity_open_map(x); }
  static HMor hcomp(const HMor& g, const HMor& f) { return compose(g, f); }
  static VMor vcomp(const VMor& n, const VMor& m) { return compose(n, m); }
  static VMor companion_of(const HMor& f) { return companion(f); }
  static VMor conjoint_of(const HMor& f) { return conjoint(f); }
  static std::optional<std::string> cell_failure(const HMor& f, const VMor& m, const VMor& n, const HMor& f2,
                                                 const Witness&) {
    return top_cell_failure(f, m, n, f2);
  }
  static Object zero() { return empty_space(); }
  static int size(const Object& x) { return x.size(); }
  static std::vector<HMor> hmors(const Object& a, const Object& b) {
    std::vector<HMor> out;
    for (auto& m : continuous_maps(a, b)) out.push_back(ContinuousMap{a, b, std::move(m)});
    return out;
  }
  static std::vector<VMor> vmors(const Object& a, const Object& b, int = 0) {
    std::vector<VMor> out;
    for (auto& m : open_maps(a, b)) out.push_back(OpenMap{a, b, std::move(m)});
    return out;
  }
  static bool is_iso(const HMor& f) { return is_homeomorphism(f); }
};

namespace detail {

/// Index of the element (x, h) of the companion profunctor of f.
inline int companion_element(const Functor& f, int x, int h) {
  int idx = 0;
  for (int x0 = 0; x0 < f.src.object_count(); ++x0) {
    for (int h0 = 0; h0 < f.tgt.morphism_count(); ++h0) {
      if (f.tgt.dom[h0] != f.obj[x0]) continue;
      if (x0 == x && h0 == h) return idx;
      ++idx;
    }
  }
  return -1;
}

/// Index of the element (h, x) of the conjoint profunctor of f.
inline int conjoint_element(const Functor& f, int h, int x) {
  int idx = 0;
  for (int h0 = 0; h0 < f.tgt.morphism_count(); ++h0) {
    for (int x0 = 0; x0 < f.src.object_count(); ++x0) {
      if (f.tgt.cod[h0] != f.obj[x0]) continue;
      if (x0 == x && h0 == h) return idx;
      ++idx;
    }
  }
  return -1;
}

}  // namespace detail

struct CatD {
  using Object = FinCat;
  using HMor = Functor;
  using VMor = Profunctor;
  using Witness = std::vector<int>;
  static constexpr Tag tag = Tag::Cat;
  static constexpr bool propositional = false;

  static const Object& hsrc(const HMor& f) { return f.src; }
  static const Object& htgt(const HMor& f) { return f.tgt; }
  static const Object& vsrc(const VMor& m) { return m.src; }
  static const Object& vtgt(const VMor& m) { return m.tgt; }
  static HMor hid(const Object& x) { return identity_functor(x); }
  static VMor vid(const Object& x) { return identity_prof(x); }
  static HMor hcomp(const HMor& g, const HMor& f) { return compose(g, f); }
  static VMor vcomp(const VMor& n, const VMor& m) { return vcompose(n, m); }
  static VMor companion_of(const HMor& f) { return companion(f); }
  static VMor conjoint_of(const HMor& f) { return conjoint(f); }
  static std::optional<std::string> cell_failure(const HMor& f, const VMor& m, const VMor& n, const HMor& f2,
                                                 const Witness& w) {
    return cat_cell_failure(f, m, n, f2, w);
  }
  static Object zero() { return empty_cat(); }
  static int size(const Object& x) { return x.morphism_count(); }
  static std::vector<HMor> hmors(const Object& a, const Object& b) {
    std::vector<HMor> out;
    for (auto& [o, m] : functors(a, b)) out.push_back(Functor{a, b, std::move(o), std::move(m)});
    return out;
  }
  /// Profunctors with at most `bound` elements.
  static std::vector<VMor> vmors(const Object& a, const Object& b, int bound = 2) {
    return all_profunctors(a, b, bound);
  }
  static bool is_iso(const HMor& f) { return is_cat_iso(f); }
};

template <class D>
inline constexpr bool is_instance_v =
    std::is_same_v<D, PosD> || std::is_same_v<D, LocD> || std::is_same_v<D, TopD> || std::is_same_v<D, CatD>;

// ---------------------------------------------------------------------------
// cell calculus

template <class D>
void check_cell_boundary(const typename D::HMor& f, const typename D::VMor& m, const typename D::VMor& n,
                         const typename D::HMor& f2) {
  if (!(D::hsrc(f) == D::vsrc(m))) throw BoundaryMismatch("top does not start at the source of the left side");
  if (!(D::htgt(f) == D::vsrc(n))) throw BoundaryMismatch("top does not end at the source of the right side");
  if (!(D::hsrc(f2) == D::vtgt(m))) throw BoundaryMismatch("bottom does not start at the target of the left side");
  if (!(D::htgt(f2) == D::vtgt(n))) throw BoundaryMismatch("bottom does not end at the target of the right side");
}

/// Builds a validated cell. Propositional instances ignore the witness.
template <class D>
Cell<D> make_cell(typename D::HMor f, typename D::VMor m, typename D::VMor n, typename D::HMor f2,
                  typename D::Witness w = {}) {
  check_cell_boundary<D>(f, m, n, f2);
  if (auto fail = D::cell_failure(f, m, n, f2, w)) {
    if constexpr (D::propositional) {
      throw ConditionFails(*fail);
    } else {
      throw NotNatural(*fail);
    }
  }
  return Cell<D>{std::move(f), std::move(f2), std::move(m), std::move(n), std::move(w)};
}

template <class D>
std::optional<std::string> cell_failure(const Cell<D>& c) {
  try {
    check_cell_boundary<D>(c.top, c.left, c.right, c.bottom);
  } catch (const BoundaryMismatch& e) {
    return std::string(e.what());
  }
  return D::cell_failure(c.top, c.left, c.right, c.bottom, c.witness);
}

/// Every cell with the given boundary (at most one for propositional
/// instances).
template <class D>
std::vector<Cell<D>> cells_with_boundary(const typename D::HMor& f, const typename D::VMor& m,
                                         const typename D::VMor& n, const typename D::HMor& f2) {
  std::vector<Cell<D>> out;
  if constexpr (D::propositional) {
    if (!D::cell_failure(f, m, n, f2, {})) out.push_back(Cell<D>{f, f2, m, n, {}});
  } else {
    for (auto& w : cat_cells(f, m, n, f2)) out.push_back(Cell<D>{f, f2, m, n, std::move(w)});
  }
  return out;
}

/// Horizontal identity cell m -> m.
template <class D>
Cell<D> id_cell(const typename D::VMor& m) {
  typename D::Witness w{};
  if constexpr (!D::propositional) {
    w.resize(static_cast<std::size_t>(m.size()));
    std::iota(w.begin(), w.end(), 0);
  }
  return Cell<D>{D::hid(D::vsrc(m)), D::hid(D::vtgt(m)), m, m, std::move(w)};
}

/// Vertical identity cell id(X) -> id(Y) on f: X -> Y.
template <class D>
Cell<D> vid_cell(const typename D::HMor& f) {
  typename D::Witness w{};
  if constexpr (!D::propositional) w = f.mor;
  return Cell<D>{f, f, D::vid(D::hsrc(f)), D::vid(D::htgt(f)), std::move(w)};
}

/// psi after phi, side by side: phi.right must equal psi.left.
template <class D>
Cell<D> hcompose(const Cell<D>& psi, const Cell<D>& phi) {
  if (!(phi.right == psi.left)) throw BoundaryMismatch("horizontal cell composite: shared side differs");
  typename D::Witness w{};
  if constexpr (!D::propositional) {
    w.resize(phi.witness.size());
    for (std::size_t u = 0; u < w.size(); ++u) w[u] = psi.witness[phi.witness[u]];
  }
  return Cell<D>{D::hcomp(psi.top, phi.top), D::hcomp(psi.bottom, phi.bottom), phi.left, psi.right, std::move(w)};
}

/// psi below phi: phi.bottom must equal psi.top.
template <class D>
Cell<D> vcompose(const Cell<D>& psi, const Cell<D>& phi) {
  if (!(phi.bottom == psi.top)) throw BoundaryMismatch("vertical cell composite: shared edge differs");
  if constexpr (D::propositional) {
    return Cell<D>{phi.top, psi.bottom, D::vcomp(psi.left, phi.left), D::vcomp(psi.right, phi.right), {}};
  } else {
    auto [left, lt] = prof_compose(phi.left, psi.left);
    auto [right, rt] = prof_compose(phi.right, psi.right);
    std::vector<int> w(static_cast<std::size_t>(left.size()));
    for (int c = 0; c < left.size(); ++c) {
      auto [u, v] = lt.pairs[lt.representative[c]];
      w[c] = rt.lookup(phi.witness[u], psi.witness[v]);
    }
    return Cell<D>{phi.top, psi.bottom, std::move(left), std::move(right), std::move(w)};
  }
}

/// lambda_m: id(X') after m -> m.
template <class D>
Cell<D> lambda_cell(const typename D::VMor& m) {
  typename D::Witness w{};
  if constexpr (!D::propositional) w = canonical_lambda(m).forward;
  return Cell<D>{D::hid(D::vsrc(m)), D::hid(D::vtgt(m)), D::vcomp(D::vid(D::vtgt(m)), m), m, std::move(w)};
}

template <class D>
Cell<D> lambda_inv_cell(const typename D::VMor& m) {
  typename D::Witness w{};
  if constexpr (!D::propositional) w = canonical_lambda(m).backward;
  return Cell<D>{D::hid(D::vsrc(m)), D::hid(D::vtgt(m)), m, D::vcomp(D::vid(D::vtgt(m)), m), std::move(w)};
}

/// rho_m: m after id(X) -> m.
template <class D>
Cell<D> rho_cell(const typename D::VMor& m) {
  typename D::Witness w{};
  if constexpr (!D::propositional) w = canonical_rho(m).forward;
  return Cell<D>{D::hid(D::vsrc(m)), D::hid(D::vtgt(m)), D::vcomp(m, D::vid(D::vsrc(m))), m, std::move(w)};
}

template <class D>
Cell<D> rho_inv_cell(const typename D::VMor& m) {
  typename D::Witness w{};
  if constexpr (!D::propositional) w = canonical_rho(m).backward;
  return Cell<D>{D::hid(D::vsrc(m)), D::hid(D::vtgt(m)), m, D::vcomp(m, D::vid(D::vsrc(m))), std::move(w)};
}

/// p after (n after m) -> (p after n) after m.
template <class D>
Cell<D> assoc_cell(const typename D::VMor& m, const typename D::VMor& n, const typename D::VMor& p) {
  typename D::Witness w{};
  if constexpr (!D::propositional) w = canonical_assoc(m, n, p).forward;
  return Cell<D>{D::hid(D::vsrc(m)), D::hid(D::vtgt(p)), D::vcomp(p, D::vcomp(n, m)), D::vcomp(D::vcomp(p, n), m),
                 std::move(w)};
}

template <class D>
Cell<D> assoc_inv_cell(const typename D::VMor& m, const typename D::VMor& n, const typename D::VMor& p) {
  typename D::Witness w{};
  if constexpr (!D::propositional) w = canonical_assoc(m, n, p).backward;
  return Cell<D>{D::hid(D::vsrc(m)), D::hid(D::vtgt(p)), D::vcomp(D::vcomp(p, n), m), D::vcomp(p, D::vcomp(n, m)),
                 std::move(w)};
}

// ---------------------------------------------------------------------------
// companions and conjoints

template <class D>
struct CompanionData {
  typename D::HMor f;
  typename D::VMor fstar;
  Cell<D> eta;  // id(X) -> f_*, top id, bottom f
  Cell<D> eps;  // f_* -> id(Y), top f, bottom id
};

template <class D>
struct ConjointData {
  typename D::HMor f;
  typename D::VMor fupperstar;
  Cell<D> alpha;  // id(X) -> f^*, top f, bottom id
  Cell<D> beta;   // f^* -> id(Y), top id, bottom f
};

template <class D>
CompanionData<D> companion_data(const typename D::HMor& f) {
  const auto& X = D::hsrc(f);
  const auto& Y = D::htgt(f);
  auto fs = D::companion_of(f);
  typename D::Witness we{};
  typename D::Witness wp{};
  if constexpr (!D::propositional) {
    for (int a = 0; a < X.morphism_count(); ++a) we.push_back(detail::companion_element(f, X.dom[a], f.mor[a]));
    // eps sends (x, h) to h; elements of f_* are enumerated x-major.
    for (int x = 0; x < X.object_count(); ++x) {
      for (int h = 0; h < Y.morphism_count(); ++h) {
        if (Y.dom[h] == f.obj[x]) wp.push_back(h);
      }
    }
  }
  Cell<D> eta{D::hid(X), f, D::vid(X), fs, std::move(we)};
  Cell<D> eps{f, D::hid(Y), fs, D::vid(Y), std::move(wp)};
  return CompanionData<D>{f, std::move(fs), std::move(eta), std::move(eps)};
}

template <class D>
ConjointData<D> conjoint_data(const typename D::HMor& f) {
  const auto& X = D::hsrc(f);
  const auto& Y = D::htgt(f);
  auto fu = D::conjoint_of(f);
  typename D::Witness wa{};
  typename D::Witness wb{};
  if constexpr (!D::propositional) {
    for (int a = 0; a < X.morphism_count(); ++a) wa.push_back(detail::conjoint_element(f, f.mor[a], X.cod[a]));
    for (int h = 0; h < Y.morphism_count(); ++h) {
      for (int x = 0; x < X.object_count(); ++x) {
        if (Y.cod[h] == f.obj[x]) wb.push_back(h);
      }
    }
  }
  Cell<D> alpha{f, D::hid(X), D::vid(X), fu, std::move(wa)};
  Cell<D> beta{D::hid(Y), f, fu, D::vid(Y), std::move(wb)};
  return ConjointData<D>{f, std::move(fu), std::move(alpha), std::move(beta)};
}

template <class D>
Report check_companion(const CompanionData<D>& c) {
  Report r{"companion", 0, {}};
  auto note = [&](bool ok, const std::string& what) {
    ++r.checked;
    if (!ok) r.fail(what);
  };
  auto fe = cell_failure(c.eta);
  note(!fe, "eta is not a cell: " + fe.value_or(""));
  auto fp = cell_failure(c.eps);
  note(!fp, "eps is not a cell: " + fp.value_or(""));
  if (!r.ok()) return r;
  note(hcompose(c.eps, c.eta) == vid_cell<D>(c.f), "eps after eta differs from the identity cell on f");
  auto lhs = hcompose(lambda_cell<D>(c.fstar), vcompose(c.eps, c.eta));
  note(lhs == rho_cell<D>(c.fstar), "lambda after (eps . eta) differs from rho");
  return r;
}

template <class D>
Report check_conjoint(const ConjointData<D>& c) {
  Report r{"conjoint", 0, {}};
  auto note = [&](bool ok, const std::string& what) {
    ++r.checked;
    if (!ok) r.fail(what);
  };
  auto fa = cell_failure(c.alpha);
  note(!fa, "alpha is not a cell: " + fa.value_or(""));
  auto fb = cell_failure(c.beta);
  note(!fb, "beta is not a cell: " + fb.value_or(""));
  if (!r.ok()) return r;
  note(hcompose(c.beta, c.alpha) == vid_cell<D>(c.f), "beta after alpha differs from the identity cell on f");
  auto lhs = hcompose(rho_cell<D>(c.fupperstar), vcompose(c.alpha, c.beta));
  note(lhs == lambda_cell<D>(c.fupperstar), "rho after (alpha . beta) differs from lambda");
  return r;
}

/// Unit id(X) -> f^* after f_* and counit f_* after f^* -> id(Y) of the
/// adjunction f_* -| f^* in the vertical bicategory.
template <class D>
std::pair<Cell<D>, Cell<D>> adjunction_cells(const CompanionData<D>& c, const ConjointData<D>& d) {
  const auto& X = D::hsrc(c.f);
  const auto& Y = D::htgt(c.f);
  auto unit = hcompose(vcompose(d.alpha, c.eta), rho_inv_cell<D>(D::vid(X)));
  auto counit = hcompose(lambda_cell<D>(D::vid(Y)), vcompose(c.eps, d.beta));
  return {std::move(unit), std::move(counit)};
}

/// Triangle identities of f_* -| f^*, pasted with the canonical isomorphisms.
template <class D>
Report check_triangles(const CompanionData<D>& c, const ConjointData<D>& d) {
  Report r{"triangles", 0, {}};
  auto [unit, counit] = adjunction_cells(c, d);
  auto fu = cell_failure(unit);
  auto fc = cell_failure(counit);
  r.checked += 2;
  if (fu) r.fail("unit is not a cell: " + *fu);
  if (fc) r.fail("counit is not a cell: " + *fc);
  if (!r.ok()) return r;
  const auto& fs = c.fstar;
  const auto& fu_ = d.fupperstar;
  auto t1 = hcompose(vcompose(id_cell<D>(fs), unit), rho_inv_cell<D>(fs));
  t1 = hcompose(assoc_cell<D>(fs, fu_, fs), t1);
  t1 = hcompose(vcompose(counit, id_cell<D>(fs)), t1);
  t1 = hcompose(lambda_cell<D>(fs), t1);
  ++r.checked;
  if (!(t1 == id_cell<D>(fs))) r.fail("first triangle identity");
  auto t2 = hcompose(vcompose(unit, id_cell<D>(fu_)), lambda_inv_cell<D>(fu_));
  t2 = hcompose(assoc_inv_cell<D>(fu_, fs, fu_), t2);
  t2 = hcompose(vcompose(id_cell<D>(fu_), counit), t2);
  t2 = hcompose(rho_cell<D>(fu_), t2);
  ++r.checked;
  if (!(t2 == id_cell<D>(fu_))) r.fail("second triangle identity");
  return r;
}

/// Companion, conjoint and adjunction laws for every morphism in `sample`.
template <class D>
Report validate_framed(const std::vector<typename D::HMor>& sample) {
  Report r{std::string("framed ") + tag_name(D::tag), 0, {}};
  for (const auto& f : sample) {
    auto c = companion_data<D>(f);
    auto d = conjoint_data<D>(f);
    Report a = check_companion(c);
    Report b = check_conjoint(d);
    r.merge(a);
    r.merge(b);
    if (a.ok() && b.ok()) r.merge(check_triangles(c, d));
  }
  return r;
}

/// Middle-four interchange on a 2x2 grid
///   phi  psi
///   phi2 psi2
/// returns nullopt if it holds, else a description.
template <class D>
std::optional<std::string> interchange_failure(const Cell<D>& phi, const Cell<D>& psi, const Cell<D>& phi2,
                                               const Cell<D>& psi2) {
  auto lhs = vcompose(hcompose(psi2, phi2), hcompose(psi, phi));
  auto rhs = hcompose(vcompose(psi2, psi), vcompose(phi2, phi));
  if (!(lhs.top == rhs.top) || !(lhs.bottom == rhs.bottom) || !(lhs.left == rhs.left) || !(lhs.right == rhs.right)) {
    return std::string("boundaries of the two composites differ");
  }
  if (!(lhs.witness == rhs.witness)) return std::string("witness families differ");
  if (auto f = cell_failure(lhs)) return "composite is not a cell: " + *f;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// zero object

/// Checks the zero-object properties against the objects in `family`.
template <class D>
Report check_zero_object(const std::vector<typename D::Object>& family, int vbound = 2) {
  Report r{std::string("zero object ") + tag_name(D::tag), 0, {}};
  const auto z = D::zero();
  for (const auto& x : family) {
    auto from = D::hmors(z, x);
    ++r.checked;
    if (from.size() != 1) {
      r.fail("not horizontally initial");
      continue;
    }
    auto into = D::vmors(z, x, vbound);
    auto out = D::vmors(x, z, vbound);
    ++r.checked;
    if (into.size() != 1 || out.size() != 1) {
      r.fail("verticals to or from the zero object are not unique");
      continue;
    }
    ++r.checked;
    if (!(D::companion_of(from[0]) == into[0]) || !(D::conjoint_of(from[0]) == out[0])) {
      r.fail("companion or conjoint of the initial map is not the unique vertical");
    }
    for (const auto& g : D::hmors(x, z)) {
      ++r.checked;
      if (!D::is_iso(g)) r.fail("a morphism into the zero object is not an isomorphism");
    }
  }
  return r;
}

}  // namespace dblcat

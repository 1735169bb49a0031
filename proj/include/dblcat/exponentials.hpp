#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dblcat/glueing.hpp"

namespace dblcat {

// Inclusions and exponentials are computed for the point-set instances Pos and
// Top, where an inclusion is determined by its image.

namespace detail {

template <class D>
struct PointSet;

template <>
struct PointSet<PosD> {
  static FinPoset sub(const FinPoset& x, Mask s) { return subposet(x, s); }
  static std::optional<MonotoneMap> hmor(const FinPoset& a, const FinPoset& b, std::vector<int> m) {
    if (monotone_failure(a, b, m)) return std::nullopt;
    return MonotoneMap{a, b, std::move(m)};
  }
  static std::vector<std::vector<int>> maps(const FinPoset& a, const FinPoset& b) { return monotone_maps(a, b); }
  static std::vector<FinPoset> classes(int n) { return poset_classes(n); }
};

template <>
struct PointSet<TopD> {
  static FinSpace sub(const FinSpace& x, Mask s) { return subspace(x, s); }
  static std::optional<ContinuousMap> hmor(const FinSpace& a, const FinSpace& b, std::vector<int> m) {
    if (continuity_failure(a, b, m)) return std::nullopt;
    return ContinuousMap{a, b, std::move(m)};
  }
  static std::vector<std::vector<int>> maps(const FinSpace& a, const FinSpace& b) { return continuous_maps(a, b); }
  static std::vector<FinSpace> classes(int n) { return space_classes(n); }
};

template <class D>
constexpr bool point_set = std::is_same_v<D, PosD> || std::is_same_v<D, TopD>;

template <class D>
typename D::HMor point_map(const typename D::Object& a, const typename D::Object& b, std::vector<int> m) {
  auto h = PointSet<D>::hmor(a, b, std::move(m));
  if (!h) throw LawViolation("horizontal morphism", "point map is not structure preserving");
  return *h;
}

template <class D>
typename D::HMor sub_inclusion(const typename D::Object& x, Mask s) {
  return point_map<D>(PointSet<D>::sub(x, s), x, bits_of(s));
}

}  // namespace detail

template <class D>
Mask image_of(const typename D::HMor& f) {
  Mask m = 0;
  for (int v : f.map) m |= bit(v);
  return m;
}

/// True when f is injective and carries the structure induced from its target.
template <class D>
bool is_embedding(const typename D::HMor& f) {
  Mask im = image_of<D>(f);
  if (popcount(im) != D::size(f.src)) return false;
  auto keep = bits_of(im);
  std::vector<int> to_sub;
  for (int v : f.map) to_sub.push_back(static_cast<int>(std::find(keep.begin(), keep.end(), v) - keep.begin()));
  auto g = detail::PointSet<D>::hmor(f.src, detail::PointSet<D>::sub(f.tgt, im), std::move(to_sub));
  return g && D::is_iso(*g);
}

// ---------------------------------------------------------------------------
// classification

enum class InclusionKind { Open, Closed, LocallyClosed, Unclassified };

inline const char* kind_name(InclusionKind k) {
  switch (k) {
    case InclusionKind::Open: return "open";
    case InclusionKind::Closed: return "closed";
    case InclusionKind::LocallyClosed: return "locally closed";
    default: return "unclassified";
  }
}

template <class D>
struct InclusionClass {
  typename D::HMor morphism;
  InclusionKind kind = InclusionKind::Unclassified;
  bool open = false;
  bool closed = false;
  Mask image = 0;
  Mask complement = 0;
  std::vector<typename D::VMor> witnesses;  // l for the reported open/closed square
  Mask open_part = 0;                       // locally closed: A = U n C
  Mask closed_part = 0;
};

/// The two-collage of a witness l with A in position k and the complement C
/// in the other, and the comparison Gl -> D.
template <class D>
struct InclusionSquare {
  Collage<D> collage;
  typename D::HMor comparison;
};

template <class D>
InclusionSquare<D> inclusion_square(const typename D::HMor& i, Mask complement, int k, const typename D::VMor& l) {
  auto jc = detail::sub_inclusion<D>(i.tgt, complement);
  auto c = collage(two_functor<D>(l));
  Cocone<D> cone{i.tgt, k == 0 ? std::vector<typename D::HMor>{i, jc} : std::vector<typename D::HMor>{jc, i},
                 std::vector<typename D::Witness>(3)};
  auto h = mediate(c, cone);
  return InclusionSquare<D>{std::move(c), std::move(h)};
}

/// All verticals l making A (position k) and its complement a lax colimit of
/// the two-collage, with the comparison an isomorphism and the mediator unique.
template <class D>
std::vector<typename D::VMor> collage_witnesses(const typename D::HMor& i, int k, int vbound = 64) {
  static_assert(detail::point_set<D>, "inclusions are classified for Pos and Top");
  std::vector<typename D::VMor> out;
  if (!is_embedding<D>(i)) return out;
  const Mask comp = full_mask(D::size(i.tgt)) & ~image_of<D>(i);
  const auto csub = detail::PointSet<D>::sub(i.tgt, comp);
  auto ls = k == 0 ? D::vmors(i.src, csub, vbound) : D::vmors(csub, i.src, vbound);
  if (static_cast<int>(ls.size()) > vbound) return out;
  for (auto& l : ls) {
    try {
      auto sq = inclusion_square<D>(i, comp, k, l);
      if (!D::is_iso(sq.comparison)) continue;
      Cocone<D> cone{i.tgt, {sq.comparison}, {}};
      cone.legs = {D::hcomp(sq.comparison, sq.collage.inj[0]), D::hcomp(sq.comparison, sq.collage.inj[1])};
      cone.leg_cells.assign(3, {});
      if (count_mediators(sq.collage, cone) != 1) continue;
      out.push_back(l);
    } catch (const NoMediator&) {
    }
  }
  return out;
}

template <class D>
InclusionClass<D> classify_inclusion(const typename D::HMor& i, int size_bound = 6) {
  static_assert(detail::point_set<D>, "inclusions are classified for Pos and Top");
  if (D::size(i.tgt) > size_bound) throw SizeBoundExceeded("classification target too large");
  InclusionClass<D> ic;
  ic.morphism = i;
  ic.image = image_of<D>(i);
  ic.complement = full_mask(D::size(i.tgt)) & ~ic.image;
  if (!is_embedding<D>(i)) return ic;
  auto open_w = collage_witnesses<D>(i, 0);
  auto closed_w = collage_witnesses<D>(i, 1);
  ic.open = !open_w.empty();
  ic.closed = !closed_w.empty();
  if (ic.open) {
    ic.kind = InclusionKind::Open;
    ic.witnesses = std::move(open_w);
    return ic;
  }
  if (ic.closed) {
    ic.kind = InclusionKind::Closed;
    ic.witnesses = std::move(closed_w);
    return ic;
  }
  const auto& d = i.tgt;
  const int n = D::size(d);
  std::vector<int> open_ok(static_cast<std::size_t>(1) << n, -1), closed_ok(static_cast<std::size_t>(1) << n, -1);
  auto status = [&](std::vector<int>& cache, Mask s, int k) {
    if (cache[s] < 0) cache[s] = collage_witnesses<D>(detail::sub_inclusion<D>(d, s), k).empty() ? 0 : 1;
    return cache[s] == 1;
  };
  for (Mask u = 0; u <= full_mask(n); ++u) {
    if ((u & ic.image) != ic.image || !status(open_ok, u, 0)) continue;
    for (Mask c = 0; c <= full_mask(n); ++c) {
      if ((u & c) != ic.image || !status(closed_ok, c, 1)) continue;
      ic.kind = InclusionKind::LocallyClosed;
      ic.open_part = u;
      ic.closed_part = c;
      return ic;
    }
  }
  return ic;
}

/// Locally closed in the 3-indexed sense: D is the collage of some normal lax
/// functor 3 -> D with A in the middle.
template <class D>
bool three_based_locally_closed(const typename D::HMor& i) {
  static_assert(detail::point_set<D>, "inclusions are classified for Pos and Top");
  if (!is_embedding<D>(i)) return false;
  const auto& d = i.tgt;
  const Mask rest = full_mask(D::size(d)) & ~image_of<D>(i);
  for (Mask lo = 0; lo <= rest; ++lo) {
    if ((lo & rest) != lo) continue;
    const Mask hi = rest & ~lo;
    auto j0 = detail::sub_inclusion<D>(d, lo);
    auto j2 = detail::sub_inclusion<D>(d, hi);
    for (auto& F : all_lax_functors<D>(chain_poset(3), {j0.src, i.src, j2.src})) {
      auto c = collage(F);
      Cocone<D> cone{d, {j0, i, j2}, std::vector<typename D::Witness>(static_cast<std::size_t>(F.base.morphism_count()))};
      try {
        if (D::is_iso(mediate(c, cone))) return true;
      } catch (const NoMediator&) {
      }
    }
  }
  return false;
}

/// i f = i g implies f = g for all parallel pairs out of the test objects.
template <class D>
bool check_mono(const typename D::HMor& i, const std::vector<typename D::Object>& tests) {
  for (const auto& x : tests) {
    auto fs = D::hmors(x, D::hsrc(i));
    for (std::size_t a = 0; a < fs.size(); ++a) {
      for (std::size_t b = a + 1; b < fs.size(); ++b) {
        if (D::hcomp(i, fs[a]) == D::hcomp(i, fs[b])) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// slice families and pullbacks

/// Iso-class representatives of slice objects X -> D with |X| <= max_size,
/// and every morphism between them over D.
template <class D>
struct SliceFamily {
  typename D::Object base;
  std::vector<SliceObject<D>> objects;
  std::vector<std::vector<std::vector<std::vector<int>>>> homs;  // homs[a][b]: maps objects[a] -> objects[b]
};

template <class D>
std::vector<SliceObject<D>> slice_objects(const typename D::Object& base, int max_size) {
  static_assert(detail::point_set<D>, "slice families are enumerated for Pos and Top");
  std::vector<SliceObject<D>> out;
  for (int n = 0; n <= max_size; ++n) {
    for (const auto& x : detail::PointSet<D>::classes(n)) {
      std::vector<std::vector<int>> autos;
      for (auto& s : detail::PointSet<D>::maps(x, x)) {
        auto inv = invert_bijection(s, n);
        if ((n == 0 || !inv.empty()) && detail::PointSet<D>::hmor(x, x, inv)) autos.push_back(std::move(s));
      }
      for (auto& m : detail::PointSet<D>::maps(x, base)) {
        bool least = true;
        for (const auto& s : autos) {
          std::vector<int> t(m.size());
          for (int k = 0; k < n; ++k) t[k] = m[s[k]];
          if (t < m) {
            least = false;
            break;
          }
        }
        if (least) out.push_back(SliceObject<D>{x, detail::point_map<D>(x, base, m)});
      }
    }
  }
  return out;
}

/// Point maps a -> b commuting with the maps to the base.
template <class D>
std::vector<std::vector<int>> slice_maps(const SliceObject<D>& a, const SliceObject<D>& b) {
  std::vector<std::vector<int>> out;
  for (auto& m : detail::PointSet<D>::maps(a.object, b.object)) {
    bool over = true;
    for (int x = 0; x < D::size(a.object) && over; ++x) over = b.map.map[m[x]] == a.map.map[x];
    if (over) out.push_back(std::move(m));
  }
  return out;
}

template <class D>
SliceFamily<D> slice_family(const typename D::Object& base, int max_size) {
  SliceFamily<D> f{base, slice_objects<D>(base, max_size), {}};
  const std::size_t n = f.objects.size();
  f.homs.assign(n, std::vector<std::vector<std::vector<int>>>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) f.homs[a][b] = slice_maps(f.objects[a], f.objects[b]);
  }
  return f;
}

/// X x_D A for an inclusion with image `part`: the points of X over the part.
template <class D>
struct Pullback {
  SliceObject<D> object;   // over D
  std::vector<int> points;  // pullback point -> X point
  std::vector<int> index;   // X point -> pullback point or -1
};

template <class D>
Pullback<D> pullback(const SliceObject<D>& x, Mask part) {
  Mask s = 0;
  for (int p = 0; p < D::size(x.object); ++p) {
    if (has(part, x.map.map[p])) s |= bit(p);
  }
  auto sub = detail::PointSet<D>::sub(x.object, s);
  Pullback<D> pb{{}, bits_of(s), std::vector<int>(static_cast<std::size_t>(D::size(x.object)), -1)};
  std::vector<int> m;
  for (std::size_t k = 0; k < pb.points.size(); ++k) {
    pb.index[pb.points[k]] = static_cast<int>(k);
    m.push_back(x.map.map[pb.points[k]]);
  }
  pb.object = SliceObject<D>{sub, detail::point_map<D>(sub, x.base(), std::move(m))};
  return pb;
}

// ---------------------------------------------------------------------------
// exponentials

/// One open or closed step: Z^A is the collage of R_k over the witness, its
/// points are the fiber Z_k and the complement C of A.
struct ExponentStage {
  int k = 0;
  Mask part = 0;                 // image of A in D
  std::vector<int> zpos;         // Z point -> fiber index, or -1
  std::vector<int> zpoint;       // fiber index -> Z point
  std::vector<int> inj_fib;      // fiber index -> result point
  std::vector<int> inj_rest;     // D point outside the part -> result point
  std::vector<int> from_result;  // result point -> Z point, or -1
};

template <class D>
struct ExponentialResult {
  SliceObject<D> argument;  // r: Z -> D
  typename D::HMor exponent;
  InclusionKind kind = InclusionKind::Unclassified;
  SliceObject<D> result;  // Z^A -> D
  std::vector<ExponentStage> stages;  // one stage, or closed then open
  Mask open_part = 0;
};

namespace detail {

template <class D>
std::pair<ExponentStage, SliceObject<D>> exponent_stage(const SliceObject<D>& r, const typename D::HMor& i, int k,
                                                        const typename D::VMor& l) {
  const auto& d = r.base();
  if (!(i.tgt == d)) throw BoundaryMismatch("exponent and argument over different bases");
  ExponentStage st;
  st.k = k;
  st.part = image_of<D>(i);
  const Mask comp = full_mask(D::size(d)) & ~st.part;
  auto sq = inclusion_square<D>(i, comp, k, l);
  if (!D::is_iso(sq.comparison)) throw ConditionFails("witness does not present the inclusion");
  auto back = hinverse(sq.comparison);
  auto p2 = D::hcomp(back, r.map);
  auto fib = fiber(sq.collage, p2, k);
  auto R = right_transport<D>(k, l, fib.map);
  auto glued = glue(R, sq.collage);
  auto cr = collage(R.functor);
  SliceObject<D> res{glued.object, D::hcomp(sq.comparison, glued.map)};
  st.zpos.assign(static_cast<std::size_t>(D::size(r.object)), -1);
  st.zpoint = fib.incl.map;
  for (std::size_t j = 0; j < st.zpoint.size(); ++j) st.zpos[st.zpoint[j]] = static_cast<int>(j);
  st.inj_fib = cr.inj[k].map;
  st.inj_rest.assign(static_cast<std::size_t>(D::size(d)), -1);
  auto cpts = bits_of(comp);
  for (std::size_t j = 0; j < cpts.size(); ++j) st.inj_rest[cpts[j]] = cr.inj[1 - k].map[j];
  st.from_result.assign(static_cast<std::size_t>(D::size(res.object)), -1);
  for (std::size_t j = 0; j < st.inj_fib.size(); ++j) st.from_result[st.inj_fib[j]] = st.zpoint[j];
  return {std::move(st), std::move(res)};
}

/// Point-level transpose for one stage: X -> Z^A from g on X x_D A.
inline std::vector<int> stage_transpose(const ExponentStage& st, const std::vector<int>& xmap, const std::vector<int>& g) {
  std::vector<int> out(xmap.size());
  int k = 0;
  for (std::size_t x = 0; x < xmap.size(); ++x) {
    if (has(st.part, xmap[x])) {
      int z = g[static_cast<std::size_t>(k++)];
      out[x] = st.zpos[z] < 0 ? -1 : st.inj_fib[st.zpos[z]];
    } else {
      out[x] = st.inj_rest[xmap[x]];
    }
  }
  return out;
}

inline std::vector<int> stage_untranspose(const ExponentStage& st, const std::vector<int>& xmap,
                                          const std::vector<int>& h) {
  std::vector<int> out;
  for (std::size_t x = 0; x < xmap.size(); ++x) {
    if (has(st.part, xmap[x])) out.push_back(h[x] < static_cast<int>(st.from_result.size()) ? st.from_result[h[x]] : -1);
  }
  return out;
}

}  // namespace detail

template <class D>
ExponentialResult<D> exponential_open(const SliceObject<D>& r, const InclusionClass<D>& ic, std::size_t witness = 0) {
  if (!ic.open) throw ConditionFails("exponent is not classified open");
  auto [st, res] = detail::exponent_stage<D>(r, ic.morphism, 0, ic.witnesses.at(witness));
  return ExponentialResult<D>{r, ic.morphism, InclusionKind::Open, std::move(res), {std::move(st)}, 0};
}

template <class D>
ExponentialResult<D> exponential_closed(const SliceObject<D>& r, const InclusionClass<D>& ic, std::size_t witness = 0) {
  if (!ic.closed || ic.witnesses.empty()) throw ConditionFails("exponent is not classified closed");
  const auto& ws = ic.kind == InclusionKind::Closed ? ic.witnesses : collage_witnesses<D>(ic.morphism, 1);
  auto [st, res] = detail::exponent_stage<D>(r, ic.morphism, 1, ws.at(witness));
  return ExponentialResult<D>{r, ic.morphism, InclusionKind::Closed, std::move(res), {std::move(st)}, 0};
}

/// (Z^C)^U for A = U n C, closed part first.
template <class D>
ExponentialResult<D> exponential_locally_closed(const SliceObject<D>& r, const typename D::HMor& i, Mask open_part,
                                                Mask closed_part) {
  const auto& d = r.base();
  if ((open_part & closed_part) != image_of<D>(i) || !is_embedding<D>(i)) {
    throw ConditionFails("exponent is not the intersection of the given parts");
  }
  auto jc = detail::sub_inclusion<D>(d, closed_part);
  auto ju = detail::sub_inclusion<D>(d, open_part);
  auto wc = collage_witnesses<D>(jc, 1);
  auto wu = collage_witnesses<D>(ju, 0);
  if (wc.empty()) throw ConditionFails("closed part is not a closed inclusion");
  if (wu.empty()) throw ConditionFails("open part is not an open inclusion");
  auto [s1, zc] = detail::exponent_stage<D>(r, jc, 1, wc.front());
  auto [s2, res] = detail::exponent_stage<D>(zc, ju, 0, wu.front());
  return ExponentialResult<D>{r, i, InclusionKind::LocallyClosed, std::move(res), {std::move(s1), std::move(s2)},
                              open_part};
}

template <class D>
ExponentialResult<D> exponential(const SliceObject<D>& r, const InclusionClass<D>& ic) {
  switch (ic.kind) {
    case InclusionKind::Open: return exponential_open(r, ic);
    case InclusionKind::Closed: return exponential_closed(r, ic);
    case InclusionKind::LocallyClosed: return exponential_locally_closed(r, ic.morphism, ic.open_part, ic.closed_part);
    default: throw Unsupported("exponent is unclassified");
  }
}

/// Transpose of g: X x_D A -> Z (as a point map on the pullback) to X -> Z^A.
template <class D>
std::vector<int> transpose_points(const ExponentialResult<D>& e, const std::vector<int>& xmap, const std::vector<int>& g) {
  if (e.stages.size() == 1) return detail::stage_transpose(e.stages[0], xmap, g);
  std::vector<int> xu;
  for (int v : xmap) {
    if (has(e.open_part, v)) xu.push_back(v);
  }
  auto mid = detail::stage_transpose(e.stages[0], xu, g);
  return detail::stage_transpose(e.stages[1], xmap, mid);
}

template <class D>
std::vector<int> untranspose_points(const ExponentialResult<D>& e, const std::vector<int>& xmap,
                                    const std::vector<int>& h) {
  if (e.stages.size() == 1) return detail::stage_untranspose(e.stages[0], xmap, h);
  std::vector<int> xu;
  for (int v : xmap) {
    if (has(e.open_part, v)) xu.push_back(v);
  }
  auto mid = detail::stage_untranspose(e.stages[1], xmap, h);
  for (int v : mid) {
    if (v < 0) return std::vector<int>(mid.size(), -1);
  }
  return detail::stage_untranspose(e.stages[0], xu, mid);
}

template <class D>
typename D::HMor transpose(const ExponentialResult<D>& e, const SliceObject<D>& x, const typename D::HMor& g) {
  auto m = transpose_points(e, x.map.map, g.map);
  for (int v : m) {
    if (v < 0) throw LawViolation("transpose", "argument does not lie over the exponent");
  }
  auto h = detail::PointSet<D>::hmor(x.object, e.result.object, std::move(m));
  if (!h) throw LawViolation("transpose", "transposed map is not a morphism");
  return *h;
}

template <class D>
typename D::HMor untranspose(const ExponentialResult<D>& e, const SliceObject<D>& x, const typename D::HMor& h) {
  Mask part = image_of<D>(e.exponent);
  auto pb = pullback(x, part);
  auto m = untranspose_points(e, x.map.map, h.map);
  for (int v : m) {
    if (v < 0) throw LawViolation("untranspose", "map does not lie over the exponent");
  }
  auto g = detail::PointSet<D>::hmor(pb.object.object, e.argument.object, std::move(m));
  if (!g) throw LawViolation("untranspose", "restricted map is not a morphism");
  return *g;
}

/// Bijection Hom(X x_D A, Z) = Hom(X, Z^A) over D for every X of the family,
/// mutually inverse transposes, and naturality along every family morphism.
template <class D>
Report adjunction_audit(const ExponentialResult<D>& e, const SliceFamily<D>& fam) {
  Report r{"adjunction audit", 0, {}};
  const Mask part = image_of<D>(e.exponent);
  const auto& zmap = e.argument.map.map;
  const auto& wmap = e.result.map.map;
  const std::size_t n = fam.objects.size();
  std::vector<Pullback<D>> pbs;
  std::vector<std::vector<std::vector<int>>> left(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& x = fam.objects[a];
    pbs.push_back(pullback(x, part));
    left[a] = slice_maps(pbs.back().object, e.argument);
    auto right = slice_maps(x, e.result);
    ++r.checked;
    if (left[a].size() != right.size()) {
      r.fail("hom-set sizes differ for X #" + std::to_string(a) + ": " + std::to_string(left[a].size()) + " vs " +
             std::to_string(right.size()));
      continue;
    }
    for (const auto& g : left[a]) {
      ++r.checked;
      auto t = transpose_points(e, x.map.map, g);
      bool valid = std::find(t.begin(), t.end(), -1) == t.end();
      for (std::size_t p = 0; p < t.size() && valid; ++p) valid = wmap[t[p]] == x.map.map[p];
      if (!valid || !detail::PointSet<D>::hmor(x.object, e.result.object, t)) {
        r.fail("transpose of a map from the pullback of X #" + std::to_string(a) + " is not a morphism over D");
        continue;
      }
      if (untranspose_points(e, x.map.map, t) != g) r.fail("untranspose after transpose differs at X #" + std::to_string(a));
    }
    for (const auto& h : right) {
      ++r.checked;
      auto g = untranspose_points(e, x.map.map, h);
      bool valid = std::find(g.begin(), g.end(), -1) == g.end();
      for (std::size_t p = 0; p < g.size() && valid; ++p) valid = zmap[g[p]] == pbs[a].object.map.map[p];
      if (!valid || !detail::PointSet<D>::hmor(pbs[a].object.object, e.argument.object, g)) {
        r.fail("untranspose of a map from X #" + std::to_string(a) + " is not a morphism over D");
        continue;
      }
      if (transpose_points(e, x.map.map, g) != h) r.fail("transpose after untranspose differs at X #" + std::to_string(a));
    }
  }
  if (!r.ok()) return r;
  // naturality: transpose(g . (u x A)) = transpose(g) . u for u: X' -> X
  std::vector<std::vector<std::vector<int>>> trans(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (const auto& g : left[a]) trans[a].push_back(transpose_points(e, fam.objects[a].map.map, g));
  }
  for (std::size_t b = 0; b < n; ++b) {
    const auto& xb = fam.objects[b];
    for (std::size_t a = 0; a < n; ++a) {
      for (const auto& u : fam.homs[b][a]) {
        std::vector<int> ua;
        for (int p : pbs[b].points) ua.push_back(pbs[a].index[u[p]]);
        for (std::size_t gi = 0; gi < left[a].size(); ++gi) {
          ++r.checked;
          const auto& g = left[a][gi];
          std::vector<int> gu;
          for (int p : ua) gu.push_back(g[p]);
          auto lhs = transpose_points(e, xb.map.map, gu);
          bool same = true;
          for (std::size_t p = 0; p < u.size() && same; ++p) same = lhs[p] == trans[a][gi][u[p]];
          if (!same) {
            r.fail("naturality fails along a map X #" + std::to_string(b) + " -> X #" + std::to_string(a));
          }
        }
      }
    }
  }
  return r;
}

/// Brute-force right adjoint: every candidate W -> D from the candidate list
/// whose hom counts match Hom(X x_D A, Z) for all test X.
template <class D>
std::vector<SliceObject<D>> brute_force_exponentials(const typename D::HMor& i, const SliceObject<D>& z,
                                                     const std::vector<SliceObject<D>>& candidates,
                                                     const std::vector<SliceObject<D>>& tests) {
  const Mask part = image_of<D>(i);
  std::vector<std::size_t> want;
  for (const auto& x : tests) want.push_back(slice_maps(pullback(x, part).object, z).size());
  std::vector<SliceObject<D>> out;
  for (const auto& w : candidates) {
    bool ok = true;
    for (std::size_t t = 0; t < tests.size() && ok; ++t) ok = slice_maps(tests[t], w).size() == want[t];
    if (ok) out.push_back(w);
  }
  return out;
}

}  // namespace dblcat

// dblcat: command-line front end over the header-only library.
//
// Reports go to stdout as JSON with a fixed field order; wall-clock timing
// goes to stderr so that stdout is reproducible byte-for-byte.

#include <CLI11.hpp>

#include <dblcat/sweeps.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <type_traits>

namespace {

using namespace dblcat;

enum Exit { kOk = 0, kPropertyFailure = 1, kInputError = 2, kUnsupported = 3 };

struct Options {
  std::string command;
  std::vector<std::string> inputs;
  std::string instance;
  int bound = 3;
  bool round_trip = false;
  std::string output;
  unsigned seed = 1;
};

/// What a command hands back: outcome, counts, extra report fields and an
/// optional result document.
struct Result {
  std::string outcome = "pass";
  std::vector<std::string> counterexamples;
  long objects = 0;
  long homs = 0;
  Json details = Json::object();
  std::optional<std::pair<std::string, Json>> document;
  int code = kOk;
};

Json command_echo(const Options& o) {
  Json j{{"name", o.command}, {"inputs", o.inputs}};
  j["instance"] = o.instance.empty() ? Json(nullptr) : Json(o.instance);
  j["bound"] = o.bound;
  j["round_trip"] = o.round_trip;
  j["seed"] = o.seed;
  return j;
}

Json document_json(const std::string& kind, const Json& body) {
  return Json{{"schema_version", kSchemaVersion}, {"kind", kind}, {"body", body}};
}

Json report_json(const Options& o, const Result& r) {
  Json j;
  j["command"] = command_echo(o);
  j["outcome"] = r.outcome;
  j["counterexamples"] = r.counterexamples;
  j["timing"] = "stderr";
  j["counts"] = Json{{"objects", r.objects}, {"homs", r.homs}};
  for (auto& [k, v] : r.details.items()) j[k] = v;
  if (r.document) j["result"] = document_json(r.document->first, r.document->second);
  return j;
}

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const LawViolation*>(&e)) return "LawViolation";
  if (dynamic_cast<const BoundaryMismatch*>(&e)) return "BoundaryMismatch";
  if (dynamic_cast<const ConditionFails*>(&e)) return "ConditionFails";
  if (dynamic_cast<const NotNatural*>(&e)) return "NotNatural";
  if (dynamic_cast<const SizeBoundExceeded*>(&e)) return "SizeBoundExceeded";
  if (dynamic_cast<const NoMediator*>(&e)) return "NoMediator";
  if (dynamic_cast<const NonUnique*>(&e)) return "NonUnique";
  if (dynamic_cast<const Unsupported*>(&e)) return "Unsupported";
  return "Error";
}

Document read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

Document read_kind(const Options& o, std::size_t k, const std::string& kind) {
  if (o.inputs.size() <= k) throw ParseError(o.command + ": missing input file");
  auto d = read_document(o.inputs[k]);
  if (d.kind != kind) throw ParseError(o.inputs[k] + ": expected a " + kind + " document, got " + d.kind);
  Tag t = document_instance(d);
  if (!o.instance.empty() && o.instance != tag_name(t)) {
    throw ParseError(o.inputs[k] + ": instance " + tag_name(t) + " but --instance " + o.instance);
  }
  return d;
}

template <class F>
auto with_instance(Tag t, F&& f) {
  switch (t) {
    case Tag::Pos: return f(std::type_identity<PosD>{});
    case Tag::Top: return f(std::type_identity<TopD>{});
    case Tag::Loc: return f(std::type_identity<LocD>{});
    default: return f(std::type_identity<CatD>{});
  }
}

template <class D>
constexpr bool point_set_v = std::is_same_v<D, PosD> || std::is_same_v<D, TopD>;

bool is_two(const FinCat& B) {
  return B.object_count() == 2 && B.morphism_count() == 3 && poset_arrow(B, 0, 1) >= 0;
}

// ---------------------------------------------------------------------------
// a slice object together with the lax functor whose collage is its base

template <class D>
struct Over {
  Collage<D> cl;
  typename D::HMor p;  // X -> cl.total
};

/// Without "over", a Pos or Top base is read as the collage of the terminal
/// functor on its own order, point x being (x, 0).
template <class D>
Over<D> resolve_over(const ParsedSlice<D>& ps) {
  const auto& base = ps.slice.base();
  if (ps.over) {
    auto cl = collage(*ps.over);
    if (!(cl.total == base)) throw BoundaryMismatch("base is not the collage of \"over\"");
    return Over<D>{cl, ps.slice.map};
  }
  if constexpr (point_set_v<D>) {
    FinPoset order;
    if constexpr (std::is_same_v<D, PosD>) order = base;
    else order = specialization(base);
    auto cl = collage(terminal_lax<D>(poset_cat(order)));
    if (cl.total == base) return Over<D>{cl, ps.slice.map};
    std::vector<int> m;
    for (int x = 0; x < D::size(base); ++x) m.push_back(cl.element(x, 0));
    auto iso = detail::point_map<D>(base, cl.total, m);
    if (!D::is_iso(iso)) throw BoundaryMismatch("base is not the collage of its terminal functor");
    return Over<D>{cl, D::hcomp(iso, ps.slice.map)};
  } else {
    (void)base;
    throw ParseError(std::string("sliceobject: a ") + tag_name(D::tag) + " base needs \"over\"");
  }
}

template <class D>
LaxSlice<D> unglue_any(const Collage<D>& cl, const typename D::HMor& p) {
  if (is_two(cl.F.base)) return unglue2(cl, p);
  if constexpr (D::propositional) {
    return b_unglue(cl, p).slice;
  } else {
    throw Unsupported("cat unglueing over a base other than the 2-chain");
  }
}

// ---------------------------------------------------------------------------
// commands

template <class D>
Result cmd_collage(const Options& o) {
  auto d = read_kind(o, 0, "laxfunctor");
  auto F = lax_from_json<D>(d.body);
  auto c = collage(F);
  auto v = validate_collage(c);
  Result r;
  r.objects = F.base.object_count();
  r.homs = F.base.morphism_count();
  r.counterexamples = v.failures;
  if (!v.ok()) {
    r.outcome = "fail";
    r.code = kPropertyFailure;
  }
  Json inj = Json::array();
  for (int b = 0; b < F.base.object_count(); ++b) {
    inj.push_back(Json{{"at", F.base.objects[b]}, {"map", Codec<D>::hmor(c.inj[b])}});
  }
  r.details["injections"] = inj;
  r.details["cells_checked"] = v.checked;
  r.document = {object_kind<D>(), Codec<D>::object(c.total)};
  return r;
}

template <class D>
Result cmd_glue(const Options& o) {
  auto d = read_kind(o, 0, "laxfunctor");
  if (!d.body.contains("over")) throw ParseError("glue: the laxfunctor needs \"over\"");
  auto s = lax_slice_from_json<D>(d.body);
  auto cl = collage(s.over());
  auto g = glue(s, cl);
  Result r;
  r.objects = s.functor.base.object_count();
  r.homs = s.functor.base.morphism_count();
  if (o.round_trip) {
    auto u = unglue_any(cl, g.map);
    bool iso = find_lax_slice_iso(u, s).has_value();
    r.details["isomorphic"] = iso;
    if (!iso) {
      r.outcome = "fail";
      r.counterexamples.push_back("unglue of glue is not isomorphic to the input");
      r.code = kPropertyFailure;
    }
  }
  r.document = {"sliceobject", slice_to_json(g, s.over())};
  return r;
}

template <class D>
Result cmd_unglue(const Options& o) {
  auto d = read_kind(o, 0, "sliceobject");
  auto ov = resolve_over(slice_from_json<D>(d.body));
  auto u = unglue_any(ov.cl, ov.p);
  Result r;
  r.objects = ov.cl.F.base.object_count();
  r.homs = ov.cl.F.base.morphism_count();
  if (o.round_trip) {
    auto g = glue(u, ov.cl);
    bool iso = detail::slices_isomorphic(g, SliceObject<D>{D::hsrc(ov.p), ov.p});
    r.details["isomorphic"] = iso;
    if (!iso) {
      r.outcome = "fail";
      r.counterexamples.push_back("glue of unglue is not isomorphic to the input over the base");
      r.code = kPropertyFailure;
    }
  }
  r.document = {"laxfunctor", lax_slice_to_json(u)};
  return r;
}

template <class D>
Json fiber_points(const Fiber<D>& fb, const typename D::Object& x) {
  if constexpr (point_set_v<D>) {
    return set_string(image_of<D>(fb.incl), x.names);
  } else if constexpr (std::is_same_v<D, CatD>) {
    Json objs = Json::array();
    for (int v : fb.incl.obj) objs.push_back(x.objects[v]);
    return objs;
  } else {
    return Codec<D>::object(fb.object);
  }
}

template <class D>
Result cmd_fibers(const Options& o) {
  auto d = read_kind(o, 0, "sliceobject");
  auto ov = resolve_over(slice_from_json<D>(d.body));
  const auto& x = D::hsrc(ov.p);
  const FinCat& B = ov.cl.F.base;
  auto u = unglue_any(ov.cl, ov.p);
  Result r;
  r.objects = B.object_count();
  r.homs = B.morphism_count();
  Json fibers = Json::array();
  for (int b = 0; b < B.object_count(); ++b) {
    fibers.push_back(Json{{"at", B.objects[b]}, {"fiber", fiber_points(fiber(ov.cl, ov.p, b), x)}});
  }
  Json verticals = Json::array();
  for (int a = 0; a < B.morphism_count(); ++a) {
    if (B.is_identity(a)) continue;
    verticals.push_back(Json{{"from", B.objects[B.dom[a]]},
                             {"to", B.objects[B.cod[a]]},
                             {"vertical", Codec<D>::vmor(u.functor.at(a))}});
  }
  r.details["fibers"] = fibers;
  r.details["verticals"] = verticals;
  return r;
}

template <class D>
Json classification_json(const InclusionClass<D>& ic) {
  const auto& d = ic.morphism.tgt;
  Json j{{"kind", kind_name(ic.kind)},
         {"embedding", is_embedding<D>(ic.morphism)},
         {"image", set_string(ic.image, d.names)},
         {"complement", set_string(ic.complement, d.names)},
         {"open", ic.open},
         {"closed", ic.closed},
         {"witnesses", ic.witnesses.size()}};
  if (!ic.witnesses.empty()) j["witness"] = Codec<D>::vmor(ic.witnesses.front());
  if (ic.kind == InclusionKind::LocallyClosed) {
    j["open_part"] = set_string(ic.open_part, d.names);
    j["closed_part"] = set_string(ic.closed_part, d.names);
  }
  j["three_based"] = three_based_locally_closed<D>(ic.morphism);
  return j;
}

template <class D>
Result cmd_classify(const Options& o) {
  auto d = read_kind(o, 0, "sliceobject");
  if constexpr (!point_set_v<D>) {
    throw Unsupported(std::string("classification in ") + tag_name(D::tag));
  } else {
    auto ps = slice_from_json<D>(d.body);
    auto ic = classify_inclusion<D>(ps.slice.map);
    Result r;
    r.objects = D::size(ps.slice.base());
    r.details["classification"] = classification_json(ic);
    if (ic.kind == InclusionKind::Unclassified) {
      r.outcome = "unclassified";
      r.code = kUnsupported;
    }
    return r;
  }
}

template <class D>
Result cmd_exponential(const Options& o) {
  auto di = read_kind(o, 0, "sliceobject");
  auto dz = read_kind(o, 1, "sliceobject");
  if (document_instance(di) != document_instance(dz)) throw ParseError("exponent and argument in different instances");
  if constexpr (!point_set_v<D>) {
    throw Unsupported(std::string("exponentials in ") + tag_name(D::tag));
  } else {
    auto i = slice_from_json<D>(di.body).slice;
    auto z = slice_from_json<D>(dz.body).slice;
    if (!(i.base() == z.base())) throw BoundaryMismatch("exponent and argument over different bases");
    auto ic = classify_inclusion<D>(i.map);
    Result r;
    r.details["classification"] = classification_json(ic);
    if (ic.kind == InclusionKind::Unclassified) {
      r.outcome = "unclassified";
      r.code = kUnsupported;
      return r;
    }
    auto e = exponential(z, ic);
    auto fam = slice_family<D>(i.base(), o.bound);
    auto audit = adjunction_audit(e, fam);
    r.objects = static_cast<long>(fam.objects.size());
    for (const auto& row : fam.homs) {
      for (const auto& h : row) r.homs += static_cast<long>(h.size());
    }
    r.counterexamples = audit.failures;
    r.details["audit"] = Json{{"outcome", audit.ok() ? "pass" : "fail"}, {"checked", audit.checked}};
    r.details["size"] = D::size(e.result.object);
    if (!audit.ok()) {
      r.outcome = "fail";
      r.code = kPropertyFailure;
    }
    r.document = {"sliceobject", slice_to_json(e.result)};
    return r;
  }
}

// ---------------------------------------------------------------------------
// verify

std::vector<Sweep> laws_suite(Tag t, int bound, unsigned seed) {
  return with_instance(t, [&](auto id) {
    using D = typename decltype(id)::type;
    return std::vector<Sweep>{law_sweep<D>(std::min(bound, 2), 1000, bound, seed)};
  });
}

std::vector<Sweep> glueing_suite(Tag t, int bound) {
  switch (t) {
    case Tag::Pos: return {collage_identity_sweep(bound), pos_glue2_sweep(bound), bglue_sweep<PosD>(bound)};
    case Tag::Top: return {top_glue2_sweep(bound), bglue_sweep<TopD>(bound)};
    case Tag::Loc: return {loc_terminal_sweep(bound)};
    default: return {cat_glue2_sweep(std::min(bound, 2), std::min(bound + 1, 4))};
  }
}

std::vector<Sweep> exponentials_suite(Tag t, int bound) {
  auto run = [&](auto id) {
    using D = typename decltype(id)::type;
    std::vector<typename D::HMor> found;
    auto e = exponential_sweep<D>(ExponentialSweepOptions{bound, bound, bound}, &found);
    return std::vector<Sweep>{e, mono_sweep<D>(found, bound)};
  };
  if (t == Tag::Pos) return run(std::type_identity<PosD>{});
  if (t == Tag::Top) return run(std::type_identity<TopD>{});
  throw Unsupported(std::string("exponentials in ") + tag_name(t));
}

Result cmd_verify(const Options& o) {
  if (o.inputs.size() != 1) throw ParseError("verify: expected one suite");
  const std::string& suite = o.inputs[0];
  if (suite != "laws" && suite != "glueing" && suite != "exponentials" && suite != "all") {
    throw ParseError("verify: unknown suite \"" + suite + "\"");
  }
  if (o.bound < 0) throw ParseError("verify: negative bound");
  std::vector<Tag> tags{Tag::Pos, Tag::Top, Tag::Loc, Tag::Cat};
  if (!o.instance.empty()) tags = {*parse_tag(o.instance)};
  Result r;
  Json suites = Json::array();
  Json skipped = Json::array();
  auto add = [&](const std::vector<Sweep>& ss) {
    for (const auto& s : ss) {
      std::cerr << "timing: " << s.report.name << " " << s.seconds << " s\n";
      suites.push_back(sweep_json(s));
      r.objects += s.objects;
      r.homs += s.homs;
      for (const auto& f : s.report.failures) r.counterexamples.push_back(s.report.name + ": " + f);
    }
  };
  for (Tag t : tags) {
    if (suite == "laws" || suite == "all") add(laws_suite(t, o.bound, o.seed));
    if (suite == "glueing" || suite == "all") add(glueing_suite(t, o.bound));
    if (suite == "exponentials" || suite == "all") {
      if (t == Tag::Pos || t == Tag::Top) add(exponentials_suite(t, o.bound));
      else if (o.instance.empty()) skipped.push_back(std::string("exponentials ") + tag_name(t));
      else throw Unsupported(std::string("exponentials in ") + tag_name(t));
    }
  }
  if (!r.counterexamples.empty()) {
    r.outcome = "fail";
    r.code = kPropertyFailure;
  }
  r.details["suites"] = suites;
  if (!skipped.empty()) r.details["skipped"] = skipped;
  return r;
}

Result dispatch(const Options& o) {
  if (o.command == "verify") return cmd_verify(o);
  if (o.inputs.empty()) throw ParseError(o.command + ": missing input file");
  Tag t = document_instance(read_document(o.inputs[0]));
  return with_instance(t, [&](auto id) -> Result {
    using D = typename decltype(id)::type;
    if (o.command == "collage") return cmd_collage<D>(o);
    if (o.command == "glue") return cmd_glue<D>(o);
    if (o.command == "unglue") return cmd_unglue<D>(o);
    if (o.command == "fibers") return cmd_fibers<D>(o);
    if (o.command == "classify") return cmd_classify<D>(o);
    return cmd_exponential<D>(o);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dblcat: collages, glueing and exponentials over finite double categories"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--instance", o.instance, "pos, top, loc or cat")
      ->check(CLI::IsMember({"pos", "top", "loc", "cat"}));
  app.add_option("--bound", o.bound, "size bound for enumerated families");
  app.add_flag("--round-trip", o.round_trip, "re-glue (or re-unglue) and report isomorphism");
  app.add_option("--output", o.output, "write the result document here");
  app.add_option("--seed", o.seed, "seed for sampled law suites");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"collage", "lax colimit of a laxfunctor document"},
      {"glue", "glue a laxfunctor document with \"over\""},
      {"unglue", "unglue a sliceobject document"},
      {"fibers", "fibers and verticals of a sliceobject document"},
      {"classify", "classify the inclusion in a sliceobject document"},
      {"exponential", "exponential: EXPONENT ARGUMENT"},
      {"verify", "run a suite: laws, glueing, exponentials or all"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("inputs", o.inputs, name == "verify" ? "suite" : "input files")->required();
    sub->callback([&o, n = name] { o.command = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  Result r;
  try {
    r = dispatch(o);
  } catch (const Error& e) {
    const bool unsupported =
        dynamic_cast<const Unsupported*>(&e) != nullptr || dynamic_cast<const SizeBoundExceeded*>(&e) != nullptr;
    r = Result{};
    r.outcome = unsupported ? "unsupported" : "error";
    r.code = unsupported ? kUnsupported : kInputError;
    r.details["error"] = Json{{"type", error_type(e)}, {"message", e.what()}};
    r.document.reset();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const Json report = report_json(o, r);
  std::cout << report.dump(2) << "\n";
  std::cerr << "timing: " << o.command << " " << secs << " s\n";
  if (!o.output.empty()) {
    std::ofstream out(o.output);
    if (!out) {
      std::cerr << "cannot write " << o.output << "\n";
      return kInputError;
    }
    out << (r.document ? emit_document(r.document->first, r.document->second) : report.dump(2) + "\n");
  }
  return r.code;
}

#include <gtest/gtest.h>

#include <dblcat/sweeps.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dblcat;

#ifndef DBLCAT_SAMPLES_DIR
#define DBLCAT_SAMPLES_DIR "samples"
#endif

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class D>
Json reencode_lax_or_slice(const Document& d) {
  if (d.kind == "laxfunctor") return lax_to_json(lax_from_json<D>(d.body));
  auto ps = slice_from_json<D>(d.body);
  Json j = slice_to_json(ps.slice, ps.over ? &*ps.over : nullptr);
  if (!d.body.contains("base")) j.erase("base");
  return j;
}

// parse and re-emit through the typed values
std::string reencode(const std::string& text) {
  auto d = parse_document(text);
  Json body;
  if (d.kind == "poset") body = to_json(poset_from_json(d.body));
  else if (d.kind == "space") body = to_json(space_from_json(d.body));
  else if (d.kind == "frame") body = to_json(frame_from_json(d.body));
  else if (d.kind == "category") body = to_json(category_from_json(d.body));
  else if (d.kind == "ideal") body = to_json(ideal_from_json(d.body));
  else if (d.kind == "meetmap") body = to_json(meetmap_from_json(d.body));
  else if (d.kind == "profunctor") body = to_json(profunctor_from_json(d.body));
  else {
    switch (document_instance(d)) {
      case Tag::Pos: body = reencode_lax_or_slice<PosD>(d); break;
      case Tag::Top: body = reencode_lax_or_slice<TopD>(d); break;
      case Tag::Loc: body = reencode_lax_or_slice<LocD>(d); break;
      case Tag::Cat: body = reencode_lax_or_slice<CatD>(d); break;
    }
  }
  return emit_document(d.kind, body);
}

void expect_round_trip(const std::string& kind, const Json& body) {
  auto text = emit_document(kind, body);
  EXPECT_EQ(reencode(text), text) << kind;
}

}  // namespace

TEST(Serialize, ObjectsRoundTrip) {
  for (int n = 0; n <= 3; ++n) {
    for (const auto& p : poset_classes(n)) expect_round_trip("poset", to_json(p));
    for (const auto& x : all_spaces(n)) expect_round_trip("space", to_json(x));
  }
  for (const auto& f : frame_classes(4)) expect_round_trip("frame", to_json(f));
  for (const auto& c : cat_classes(2, 4)) expect_round_trip("category", to_json(c));
}

TEST(Serialize, VerticalsRoundTrip) {
  for (const auto& a : poset_classes(2)) {
    for (const auto& b : poset_classes(2)) {
      for (const auto& m : PosD::vmors(a, b)) expect_round_trip("ideal", to_json(m));
    }
  }
  for (const auto& m : LocD::vmors(chain_frame(2), chain_frame(3))) expect_round_trip("meetmap", to_json(m));
  for (const auto& c : cat_classes(2, 3)) {
    for (const auto& m : all_profunctors(c, c, 2)) expect_round_trip("profunctor", to_json(m));
  }
}

TEST(Serialize, LaxFunctorsAndSlicesRoundTrip) {
  auto B = poset_cat(chain_poset(2));
  expect_round_trip("laxfunctor", lax_to_json(terminal_lax<PosD>(B)));
  expect_round_trip("laxfunctor", lax_to_json(terminal_lax<TopD>(B)));
  expect_round_trip("laxfunctor", lax_to_json(terminal_lax<LocD>(B)));
  expect_round_trip("laxfunctor", lax_to_json(terminal_lax<CatD>(B)));
  auto F = terminal_lax<PosD>(poset_cat(vee_poset()));
  auto cl = collage(F);
  for (const auto& x : poset_classes(2)) {
    for (const auto& p : PosD::hmors(x, cl.total)) {
      expect_round_trip("sliceobject", slice_to_json(SliceObject<PosD>{x, p}));
      expect_round_trip("sliceobject", slice_to_json(SliceObject<PosD>{x, p}, F));
    }
  }
}

TEST(Serialize, SamplesParseAndRoundTrip) {
  int seen = 0;
  for (const auto& e : std::filesystem::directory_iterator(DBLCAT_SAMPLES_DIR)) {
    if (e.path().extension() != ".json") continue;
    const auto name = e.path().stem().string();
    const auto text = slurp(e.path());
    ++seen;
    if (name == "pos_nontransitive") {
      EXPECT_THROW(reencode(text), LawViolation);
    } else if (name == "top_base_mismatch") {
      EXPECT_THROW(reencode(text), BoundaryMismatch);
    } else {
      EXPECT_EQ(reencode(text), text) << name;
    }
  }
  EXPECT_GE(seen, 10);
}

TEST(Serialize, RejectsMalformedDocuments) {
  const std::string body = to_json(chain_poset(2)).dump();
  EXPECT_NO_THROW(parse_document(R"({"schema_version":"1","kind":"poset","body":)" + body + "}"));
  EXPECT_THROW(parse_document(R"({"schema_version":"2","kind":"poset","body":)" + body + "}"), ParseError);
  EXPECT_THROW(parse_document(R"({"schema_version":"1","kind":"lattice","body":)" + body + "}"), ParseError);
  EXPECT_THROW(parse_document(R"({"schema_version":"1","kind":"poset","body":)" + body + R"(,"extra":1})"),
               ParseError);
  EXPECT_THROW(parse_document(R"({"schema_version":"1","kind":"poset"})"), ParseError);
  EXPECT_THROW(parse_document("{not json"), ParseError);
}

TEST(Serialize, RejectsUnknownFieldsAndNames) {
  Json p = to_json(chain_poset(2));
  p["colour"] = "red";
  EXPECT_THROW(poset_from_json(p), ParseError);
  Json q = to_json(chain_poset(2));
  q["le"].push_back(Json::array({"0", "7"}));
  EXPECT_THROW(poset_from_json(q), ParseError);
  Json s = lax_to_json(terminal_lax<PosD>(poset_cat(chain_poset(2))));
  s["instance"] = "top";
  EXPECT_THROW(lax_from_json<PosD>(s), ParseError);
}

TEST(Serialize, NamesSurviveTheCollage) {
  auto cl = collage(terminal_lax<PosD>(poset_cat(chain_poset(2))));
  auto back = poset_from_json(to_json(cl.total));
  EXPECT_EQ(back, cl.total);
  EXPECT_EQ(back.names, cl.total.names);
}

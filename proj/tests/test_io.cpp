// pgroup-v1 definitions and analysis reports: parsing, rejection of
// malformed input and byte-identical JSON round trips.

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "pgroup/pgroup.hpp"

using namespace pgroup;

namespace {

ErrorKind parse_kind(const std::string& text) {
  try {
    build_definition(parse_definition(text));
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorKind::ParseError;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::string kDataDir = PGROUP_DATA_DIR;

}  // namespace

TEST(Definitions, PcFileBuildsHeisenberg) {
  GroupDefinition d = parse_definition(slurp(kDataDir + "/groups/heisenberg27_pc.json"));
  FiniteGroup G = build_definition(d);
  EXPECT_EQ(G.label(), "heisenberg-27");
  EXPECT_EQ(G.order(), 27u);
  EXPECT_EQ(G.exponent(), 3u);
  EXPECT_FALSE(G.is_abelian());
}

TEST(Definitions, EveryShippedExampleBuilds) {
  for (const char* f : {"heisenberg27_pc.json", "modular27_pc.json", "ut3_z9.json", "wreath3.json", "mann_nonpf.json"}) {
    FiniteGroup G = build_definition(parse_definition(slurp(kDataDir + "/groups/" + f)));
    EXPECT_GT(G.order(), 1u) << f;
  }
  EXPECT_EQ(build_definition(parse_definition(slurp(kDataDir + "/groups/ut3_z9.json"))).order(), 729u);
  EXPECT_TRUE(is_maximal_class(build_definition(parse_definition(slurp(kDataDir + "/groups/wreath3.json")))));
}

TEST(Definitions, MalformedInputIsAParseError) {
  EXPECT_EQ(parse_kind(slurp(kDataDir + "/groups/broken.json")), ErrorKind::ParseError);
  EXPECT_EQ(parse_kind(slurp(kDataDir + "/groups/unknown_field.json")), ErrorKind::ParseError);
  EXPECT_EQ(parse_kind(R"({"format": "pgroup-v2", "kind": "abelian", "prime": 3, "exponents": [1]})"),
            ErrorKind::ParseError);
  EXPECT_EQ(parse_kind(R"({"format": "pgroup-v1", "kind": "tree", "prime": 3})"), ErrorKind::ParseError);
  EXPECT_EQ(parse_kind(R"({"format": "pgroup-v1", "kind": "abelian", "prime": 3})"), ErrorKind::ParseError);
  EXPECT_EQ(parse_kind(R"({"format": "pgroup-v1", "kind": "abelian", "prime": "3", "exponents": [1]})"),
            ErrorKind::ParseError);
  EXPECT_EQ(parse_kind(R"({"format": "pgroup-v1", "kind": "pc", "prime": 3, "ngens": 2,
                           "conjugates": {"2-1": [[2, 1]]}})"),
            ErrorKind::ParseError);
  EXPECT_EQ(parse_kind(R"([1, 2, 3])"), ErrorKind::ParseError);
}

TEST(Definitions, SemanticErrorsKeepTheirKinds) {
  EXPECT_EQ(parse_kind(R"({"format": "pgroup-v1", "kind": "pc", "prime": 3, "ngens": 2,
                           "powers": {"1": [[1, 1]]}})"),
            ErrorKind::InvalidWord);
  EXPECT_EQ(parse_kind(R"({"format": "pgroup-v1", "kind": "semidirect", "prime": 3, "module": [1, 1],
                           "alpha": [[0, 1], [1, 0]], "t": 1})"),
            ErrorKind::OrderMismatch);
  EXPECT_EQ(parse_kind(R"({"format": "pgroup-v1", "kind": "catalog", "prime": 3, "name": "nosuch"})"),
            ErrorKind::UnknownName);
  EXPECT_EQ(parse_kind(R"({"format": "pgroup-v1", "kind": "abelian", "prime": 3, "exponents": [13]})"),
            ErrorKind::SizeLimitExceeded);
}

TEST(Definitions, RoundTripThroughJson) {
  for (const char* f : {"heisenberg27_pc.json", "modular27_pc.json", "ut3_z9.json", "wreath3.json", "mann_nonpf.json"}) {
    GroupDefinition d = parse_definition(slurp(kDataDir + "/groups/" + f));
    std::string once = dump_canonical(definition_to_json(d));
    std::string twice = dump_canonical(definition_to_json(parse_definition(once)));
    EXPECT_EQ(once, twice) << f;
  }
}

TEST(Definitions, CatalogDefinitionRebuildsTheSameGroup) {
  for (const auto& c : catalog_instances()) {
    if (instance_order(c) > 729) continue;
    std::string text = dump_canonical(definition_to_json(catalog_definition(c.ref)));
    FiniteGroup G = build_definition(parse_definition(text));
    FiniteGroup H = c.ref.build();
    EXPECT_EQ(G.label(), H.label());
    ASSERT_EQ(G.order(), H.order());
    for (Elem x = 0; x < G.order(); x += 3) EXPECT_EQ(G.mul(x, x), H.mul(x, x));
  }
}

TEST(Reports, JsonRoundTripIsByteIdentical) {
  for (const char* name : {"heisenberg", "mann_nonpf", "wreath", "modular"}) {
    AnalysisReport r = analyze(make_ref(name, 3).build());
    std::string once = dump_canonical(to_json(r));
    AnalysisReport back = report_from_json(Json::parse(once));
    EXPECT_EQ(back, r) << name;
    EXPECT_EQ(dump_canonical(to_json(back)), once) << name;
  }
}

TEST(Reports, SkippedSectionsAreNull) {
  AnalysisOptions opt;
  opt.skip = {"pf", "shalev"};
  AnalysisReport r = analyze(make_ref("heisenberg", 3).build(), opt);
  EXPECT_FALSE(r.pf.has_value());
  EXPECT_FALSE(r.shalev.has_value());
  EXPECT_TRUE(r.omega.has_value());
  Json j = to_json(r);
  EXPECT_TRUE(j["pf"].is_null());
  EXPECT_EQ(report_from_json(j), r);
  opt.skip = {"nonsense"};
  EXPECT_THROW(analyze(make_ref("heisenberg", 3).build(), opt), Error);
}

TEST(Reports, UnknownFieldIsRejected) {
  Json j = to_json(analyze(make_ref("heisenberg", 3).build()));
  j["extra"] = 1;
  try {
    report_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
}

TEST(Reports, HeisenbergAndMannValues) {
  AnalysisReport h = analyze(make_ref("heisenberg", 3).build());
  EXPECT_EQ(h.powerful_class, 2);
  EXPECT_EQ(h.eta.size(), 3u);
  ASSERT_TRUE(h.pf.has_value());
  EXPECT_TRUE(h.pf->is_pf);
  AnalysisReport m = analyze(make_ref("mann_nonpf", 3).build());
  EXPECT_EQ(m.powerful_class, 3);
  EXPECT_FALSE(m.pf->is_pf);
  ASSERT_FALSE(m.power_surjective.empty());
  EXPECT_EQ(m.power_surjective.front(), std::make_pair(1, false));
  EXPECT_NE(render_text(m).find("powerful class"), std::string::npos);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <string>
#include <vector>

#include "crsym/classify.hpp"
#include "crsym/errors.hpp"
#include "crsym/identify.hpp"
#include "crsym/json_io.hpp"
#include "crsym/prolong.hpp"
#include "crsym/symbol.hpp"

using namespace crsym;
using nlohmann::json;

namespace {

SymbolInput roundtrip(const SymbolInput& in) {
  return parse_symbol_json(symbol_to_json(in));
}

}  // namespace

TEST_CASE("explicit symbols round-trip through JSON") {
  const std::vector<FamilyTag> tags = {
      TagDefinite{2, 1}, TagSplit{1}, TagNilpotent{{{3, 1}, {1, -1}}},
      TagNonNilpotent{2, 1, 1, 1, -1}};
  for (const auto& tag : tags) {
    CAPTURE(to_string(tag));
    const SymbolInput in = emit_normal_form(tag);
    const SymbolInput back = roundtrip(in);
    CHECK(back.H == in.H);
    REQUIRE(back.Ms.size() == in.Ms.size());
    for (std::size_t k = 0; k < in.Ms.size(); ++k) CHECK(back.Ms[k] == in.Ms[k]);
  }
}

TEST_CASE("descriptor forms expand to their normal forms") {
  struct Row {
    std::string text;
    FamilyTag tag;
  };
  const std::vector<Row> rows = {
      {R"({"form":"I","p":2,"q":1})", TagDefinite{2, 1}},
      {R"({"form":"II","p":2})", TagSplit{2}},
      {R"({"form":"nilpotent","blocks":[{"k":3,"eps":1},{"k":1,"eps":-1}]})",
       TagNilpotent{{{3, 1}, {1, -1}}}},
      {R"({"form":"non_nilpotent","p":2,"q":1,"p1":1,"q1":1,"alpha_sign":-1})",
       TagNonNilpotent{2, 1, 1, 1, -1}}};
  for (const auto& row : rows) {
    CAPTURE(row.text);
    const SymbolInput want = emit_normal_form(row.tag);
    const SymbolInput got = parse_symbol_json(row.text);
    CHECK(got.H == want.H);
    CHECK(got.Ms[0] == want.Ms[0]);
  }
}

TEST_CASE("matrix entries accept integers, rational strings, and re/im pairs") {
  const std::string text = R"({
    "hermitian": [[1, "0/1"], ["0/1", "-3/2"]],
    "operators": [[[{"re":"1/1","im":"2/1"}, 0], [0, "1/3"]]]
  })";
  const SymbolInput in = parse_symbol_json(text);
  CHECK(in.H.at(0, 0) == GR(1));
  CHECK(in.H.at(1, 1) == GR(Rational(-3, 2)));
  CHECK(in.Ms[0].at(0, 0) == GR(Rational(1), Rational(2)));
  CHECK(in.Ms[0].at(1, 1) == GR(Rational(1, 3)));
}

TEST_CASE("malformed symbol files are rejected") {
  CHECK_THROWS_AS(parse_symbol_json("not json"), MalformedInput);
  CHECK_THROWS_AS(parse_symbol_json(R"({"hermitian":[[1]]})"), MalformedInput);
  CHECK_THROWS_AS(parse_symbol_json(R"({"operators":[[[1]]]})"), MalformedInput);
  // Ragged rows.
  CHECK_THROWS_AS(
      parse_symbol_json(R"({"hermitian":[[1,0],[0]],"operators":[[[1,0],[0,1]]]})"),
      MalformedInput);
  // Mismatched declared size.
  CHECK_THROWS_AS(
      parse_symbol_json(R"({"n":3,"hermitian":[[1]],"operators":[[[1]]]})"),
      MalformedInput);
  // Unknown descriptor family.
  CHECK_THROWS_AS(parse_symbol_json(R"({"form":"III","p":1})"), MalformedInput);
  // Bad rational literal.
  CHECK_THROWS_AS(
      parse_symbol_json(R"({"hermitian":[["1/x"]],"operators":[[[1]]]})"),
      MalformedInput);
}

TEST_CASE("algebra files round-trip byte-for-byte") {
  const auto pro = prolong(build_symbol(emit_normal_form(TagDefinite{1, 0})));
  const std::string first = algebra_to_json(pro.algebra);
  const BigradedAlgebra back = algebra_from_json(first);
  CHECK(back.jacobi_check().ok());
  CHECK(back.involution_check().empty());
  CHECK(algebra_to_json(back) == first);
  CHECK(back.total_dim() == pro.algebra.total_dim());
}

TEST_CASE("prolongation files reload as consistent algebras") {
  const auto pro = prolong(build_symbol(emit_normal_form(TagSplit{1})));
  const std::string text = prolongation_to_json(pro);
  const BigradedAlgebra back = algebra_from_json(text);
  CHECK(back.jacobi_check().ok());
  CHECK(back.total_dim() == pro.algebra.total_dim());
  const json j = json::parse(text);
  CHECK(j.at("total_complex").get<int>() == 15);
  CHECK(j.at("dims").at("(-2,0)").get<int>() == 1);
  CHECK(j.at("capped").get<bool>() == false);
}

TEST_CASE("tampered algebra files are rejected") {
  const auto pro = prolong(build_symbol(emit_normal_form(TagDefinite{1, 0})));
  json j = json::parse(algebra_to_json(pro.algebra));
  SUBCASE("bracket landing outside the grading") {
    j["brackets"][0]["value"] = json::array();
    j["brackets"][0]["a"] = json::array({-2, 0, 5});
    CHECK_THROWS_AS(algebra_from_json(j.dump()), MalformedInput);
  }
  SUBCASE("involution matrix of the wrong size") {
    j["involution"][0]["matrix"] =
        json::array({json::array({"1/1", "0/1"}), json::array({"0/1", "1/1"})});
    CHECK_THROWS_AS(algebra_from_json(j.dump()), MalformedInput);
  }
  SUBCASE("component with duplicate labels") {
    j["components"][1]["labels"][0] = j["components"][1]["labels"][1];
    CHECK_THROWS_AS(algebra_from_json(j.dump()), MalformedInput);
  }
}

TEST_CASE("classification reports carry the family, witness, and invariants") {
  const Classification c = classify(emit_normal_form(TagNonNilpotent{2, 1, 1, 1, 1}));
  const json j = json::parse(classification_to_json(c));
  CHECK(j.at("family").get<std::string>() == "non_nilpotent");
  CHECK(j.at("p").get<int>() == 2);
  CHECK(j.at("q").get<int>() == 1);
  CHECK(j.at("p1").get<int>() == 1);
  CHECK(j.at("q1").get<int>() == 1);
  CHECK(j.at("alpha_sign").get<int>() == 1);
  CHECK(j.at("verified").get<bool>());
  CHECK(j.at("invariants").contains("alpha"));
  CHECK(j.at("invariants").contains("sig_l"));
  CHECK(j.at("basis_change").contains("g"));
  CHECK(j.at("basis_change").at("exact").get<bool>());
}

TEST_CASE("identification reports match the documented shape") {
  const auto pro = prolong(build_symbol(emit_normal_form(TagDefinite{2, 0})));
  const json j = json::parse(identification_to_json(identify_real_form(pro)));
  CHECK(j.at("name").get<std::string>() == "so(4,2)");
  CHECK(j.at("matched_golden").get<bool>());
  CHECK(j.at("fingerprint").at("dim").get<int>() == 15);
  const auto sig = j.at("fingerprint").at("killing_signature");
  CHECK(sig[0].get<int>() == 8);
  CHECK(sig[1].get<int>() == 7);
  CHECK(j.at("fingerprint").at("semisimple").get<bool>());
}

TEST_CASE("model files expose the fingerprint next to the algebra") {
  const json j = json::parse(golden_to_json(build_golden("so(3,2)")));
  CHECK(j.at("name").get<std::string>() == "so(3,2)");
  CHECK(j.at("fingerprint").at("dim").get<int>() == 10);
  CHECK(j.at("field").get<std::string>() == "gaussian_rational");
  const BigradedAlgebra back = algebra_from_json(j.dump());
  CHECK(back.jacobi_check().ok());
}

TEST_CASE("serialization is deterministic across calls") {
  const auto pro = prolong(build_symbol(emit_normal_form(TagNilpotent{{{2, 1}}})));
  CHECK(prolongation_to_json(pro) == prolongation_to_json(pro));
  const SymbolInput in = emit_normal_form(TagDefinite{1, 1});
  CHECK(symbol_to_json(in) == symbol_to_json(in));
}

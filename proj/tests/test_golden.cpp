#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "crsym/classify.hpp"
#include "crsym/errors.hpp"
#include "crsym/golden.hpp"
#include "crsym/identify.hpp"
#include "crsym/prolong.hpp"
#include "crsym/symbol.hpp"

using namespace crsym;

namespace {

ProlongationResult run(const FamilyTag& tag) {
  return prolong(build_symbol(emit_normal_form(tag)));
}

}  // namespace

TEST_CASE("models close under the bracket and satisfy Jacobi") {
  struct Row {
    std::string name;
    std::size_t dim;
  };
  const std::vector<Row> rows = {
      {"so(3,2)", 10},       {"so(4,2)", 15},       {"so(3,3)", 15},
      {"so*(6)", 15},        {"so*(8)", 28},        {"nilpotent(3)", 16},
      {"nilpotent(3,1)", 21}};
  for (const auto& row : rows) {
    CAPTURE(row.name);
    const GoldenModel g = build_golden(row.name);
    CHECK(g.name == row.name);
    CHECK(g.algebra.total_dim() == row.dim);
    CHECK(g.fingerprint.complex_dim == static_cast<int>(row.dim));
    CHECK(g.algebra.jacobi_check().ok());
  }
}

TEST_CASE("orthogonal models have dimension N(N-1)/2") {
  for (int p = 1; p <= 3; ++p) {
    for (int q = 0; q <= p; ++q) {
      if (p + q < 1) continue;
      CAPTURE(p);
      CAPTURE(q);
      const GoldenModel g = golden_so(p, q);
      const int N = p + q + 4;
      CHECK(g.algebra.total_dim() == static_cast<std::size_t>(N * (N - 1) / 2));
    }
  }
}

TEST_CASE("Killing signatures separate the dimension-15 models") {
  const Signature s42 = build_golden("so(4,2)").fingerprint.killing_signature;
  const Signature s33 = build_golden("so(3,3)").fingerprint.killing_signature;
  const Signature s6 = build_golden("so*(6)").fingerprint.killing_signature;
  CHECK(s42 == Signature{8, 7, 0});
  CHECK(s33 == Signature{9, 6, 0});
  CHECK(s6 == Signature{6, 9, 0});
  CHECK_FALSE(s42 == s33);
  CHECK_FALSE(s42 == s6);
  CHECK_FALSE(s33 == s6);
}

TEST_CASE("expected Killing data across the table") {
  CHECK(build_golden("so(3,2)").fingerprint.killing_signature ==
        Signature{6, 4, 0});
  CHECK(build_golden("so*(8)").fingerprint.killing_signature ==
        Signature{12, 16, 0});
  CHECK(build_golden("so(3,2)").fingerprint.semisimple);
  const Fingerprint n3 = build_golden("nilpotent(3)").fingerprint;
  CHECK_FALSE(n3.semisimple);
  CHECK(n3.killing_signature == Signature{4, 4, 8});
  const Fingerprint n31 = build_golden("nilpotent(3,1)").fingerprint;
  CHECK_FALSE(n31.semisimple);
  CHECK(n31.killing_signature == Signature{4, 5, 12});
}

TEST_CASE("computed prolongations structure-match their models") {
  struct Row {
    FamilyTag tag;
    std::string model;
  };
  const std::vector<Row> rows = {{TagDefinite{1, 0}, "so(3,2)"},
                                 {TagDefinite{2, 0}, "so(4,2)"},
                                 {TagDefinite{1, 1}, "so(3,3)"},
                                 {TagSplit{1}, "so*(6)"}};
  for (const auto& row : rows) {
    CAPTURE(row.model);
    const MatchReport rep = match_structure(run(row.tag), build_golden(row.model));
    CAPTURE(rep.detail);
    CHECK(rep.matched);
    CHECK(rep.detail.empty());
  }
}

TEST_CASE("wrong models are rejected with a reason") {
  const MatchReport a = match_structure(run(TagDefinite{2, 0}), build_golden("so(3,3)"));
  CHECK_FALSE(a.matched);
  CHECK(a.detail.find("Killing") != std::string::npos);
  const MatchReport b = match_structure(run(TagDefinite{1, 1}), build_golden("so*(6)"));
  CHECK_FALSE(b.matched);
  CHECK_FALSE(b.detail.empty());
}

TEST_CASE("model names are parsed strictly") {
  CHECK(build_golden("so_star(6)").name == "so*(6)");
  CHECK_THROWS_AS(build_golden("so(3)"), MalformedName);
  CHECK_THROWS_AS(build_golden("so(2,2)"), MalformedName);
  CHECK_THROWS_AS(build_golden("so(2,3)"), MalformedName);
  CHECK_THROWS_AS(build_golden("so*(7)"), MalformedName);
  CHECK_THROWS_AS(build_golden("so*(4)"), MalformedName);
  CHECK_THROWS_AS(build_golden("nilpotent(2)"), MalformedName);
  CHECK_THROWS_AS(build_golden("nilpotent(3,2)"), MalformedName);
  CHECK_THROWS_AS(build_golden("sp(4)"), MalformedName);
  CHECK_THROWS_AS(build_golden(""), MalformedName);
}

TEST_CASE("block extension cross-check accepts mixed-sign profiles") {
  const TagNilpotent tag{{{3, 1}, {1, -1}}};
  const SymbolAlgebra sym = build_symbol(emit_normal_form(tag));
  const ProlongationResult pro = prolong(sym);
  std::string detail;
  const bool ok = verify_block3_extension(sym, pro, &detail);
  CAPTURE(detail);
  CHECK(ok);
}

TEST_CASE("a truncated result cannot be fingerprinted or matched") {
  const SymbolAlgebra sym = build_symbol(emit_normal_form(TagDefinite{1, 0}));
  ProlongationOptions opt;
  opt.max_degree = 1;
  const ProlongationResult pro = prolong(sym, opt);
  REQUIRE(pro.capped);
  CHECK_THROWS_AS(fingerprint_of(pro), MalformedInput);
  const MatchReport rep = match_structure(pro, build_golden("so(3,2)"));
  CHECK_FALSE(rep.matched);
  CHECK(rep.detail.find("truncated") != std::string::npos);
}

TEST_CASE("identification resolves the shared-fingerprint pair") {
  const Identification a = identify_real_form(run(TagDefinite{4, 0}));
  CHECK(a.name == "so(6,2)");
  CHECK(a.matched_golden);
  const Identification b = identify_real_form(run(TagSplit{2}));
  CHECK(b.name == "so*(8)");
  CHECK(b.matched_golden);
  CHECK(a.fingerprint.complex_dim == b.fingerprint.complex_dim);
  CHECK(a.fingerprint.killing_signature == b.fingerprint.killing_signature);
}

TEST_CASE("identification names block profiles from the dimension ledger") {
  const Identification a = identify_real_form(run(TagNilpotent{{{2, 1}}}));
  CHECK(a.name == "nilpotent(2)");
  CHECK_FALSE(a.matched_golden);
  const Identification b =
      identify_real_form(run(TagNilpotent{{{3, 1}, {1, -1}}}));
  CHECK(b.name == "nilpotent(3,1)");
  const Identification c =
      identify_real_form(run(TagNilpotent{{{2, 1}, {1, 1}, {1, -1}}}));
  CHECK(c.name == "nilpotent(2,1,1)");
}

TEST_CASE("algebras with no positive part are reported g0-only") {
  const Identification id =
      identify_real_form(run(TagNonNilpotent{2, 0, 1, 0, +1}));
  CHECK(id.name == "g0-only");
  CHECK_FALSE(id.matched_golden);
}

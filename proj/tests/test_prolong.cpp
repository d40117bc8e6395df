#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "crsym/classify.hpp"
#include "crsym/prolong.hpp"
#include "crsym/symbol.hpp"

using namespace crsym;

namespace {

SymbolAlgebra sym_of(const FamilyTag& tag) { return build_symbol(emit_normal_form(tag)); }

int binom2(int m) { return m * (m - 1) / 2; }

struct NilCounts {
  int n1 = 0, n2 = 0, n3 = 0;
};

NilCounts counts(const TagNilpotent& t) {
  NilCounts c;
  for (const auto& b : t.blocks) {
    if (b.k == 1) ++c.n1;
    if (b.k == 2) ++c.n2;
    if (b.k == 3) ++c.n3;
  }
  return c;
}

int level_dim(const ProlongationResult& pro, int w1) {
  int d = 0;
  for (const auto& [w, dd] : pro.dims)
    if (w.w1 == w1) d += dd;
  return d;
}

}  // namespace

TEST_CASE("untrimmed degree-one blocks have the expected dimensions") {
  struct Row {
    FamilyTag tag;
    int outer;  // dim at (1, +-3)
    int inner;  // dim at (1, +-1)
  };
  const std::vector<Row> rows = {
      {TagDefinite{1, 0}, 1, 2},        {TagDefinite{2, 0}, 0, 2},
      {TagDefinite{1, 1}, 0, 2},        {TagSplit{1}, 0, 2},
      {TagNilpotent{{{2, 1}}}, 1, 3},   {TagNilpotent{{{3, 1}}}, 0, 1},
  };
  for (const auto& row : rows) {
    const std::string name = to_string(row.tag);
    CAPTURE(name);
    const auto sym = sym_of(row.tag);
    const auto dims = first_prolongation_uncut_dims(sym);
    CHECK(dims.at({1, 3}) == row.outer);
    CHECK(dims.at({1, -3}) == row.outer);
    CHECK(dims.at({1, 1}) == row.inner);
    CHECK(dims.at({1, -1}) == row.inner);
  }
}

TEST_CASE("trimmed blocks sit inside the untrimmed ones and mirror each other") {
  for (const FamilyTag& tag : std::vector<FamilyTag>{
           TagDefinite{1, 0}, TagSplit{1}, TagNilpotent{{{2, 1}, {1, 1}}}}) {
    const std::string name = to_string(tag);
    CAPTURE(name);
    const auto sym = sym_of(tag);
    for (int s : {-1, 1}) {
      const BiWeight deg{1, s};
      const auto full = first_prolongation_block(sym, deg);
      const auto cut = first_bigraded_block(sym, deg);
      CHECK(cut.size() <= full.size());
      for (const auto& f : cut) {
        const auto coords = express_in_basis(sym.algebra, full, f);
        CHECK(coords.has_value());
      }
    }
    CHECK(first_bigraded_block(sym, {1, 1}).size() == first_bigraded_block(sym, {1, -1}).size());
  }
}

TEST_CASE("the smallest definite symbol extends to the ten-dimensional ladder") {
  const auto sym = sym_of(TagDefinite{1, 0});

  int uncut_total = 0;
  for (const auto& [w, d] : first_prolongation_uncut_dims(sym)) uncut_total += d;
  CHECK(uncut_total == 6);

  const auto pro = prolong(sym);
  const std::map<BiWeight, int> expected = {
      {{-2, 0}, 1}, {{-1, -1}, 1}, {{-1, 1}, 1}, {{0, -2}, 1}, {{0, 0}, 2},
      {{0, 2}, 1},  {{1, -1}, 1},  {{1, 1}, 1},  {{2, 0}, 1},
  };
  CHECK(pro.dims == expected);
  CHECK(pro.total_complex == 10);
  CHECK(pro.terminated_at == 3);
  CHECK_FALSE(pro.capped);
  // per-first-weight ladder 1,2,4,2,1
  CHECK(level_dim(pro, -2) == 1);
  CHECK(level_dim(pro, -1) == 2);
  CHECK(level_dim(pro, 0) == 4);
  CHECK(level_dim(pro, 1) == 2);
  CHECK(level_dim(pro, 2) == 1);
}

TEST_CASE("strongly regular totals match the closed form") {
  struct Row {
    FamilyTag tag;
    int n;
  };
  const std::vector<Row> rows = {
      {TagDefinite{1, 0}, 1}, {TagDefinite{2, 0}, 2}, {TagDefinite{1, 1}, 2},
      {TagSplit{1}, 2},       {TagDefinite{2, 1}, 3}, {TagDefinite{4, 0}, 4},
      {TagSplit{2}, 4},       {TagDefinite{3, 2}, 5},
  };
  for (const auto& row : rows) {
    const std::string name = to_string(row.tag);
    CAPTURE(name);
    const auto pro = prolong(sym_of(row.tag));
    CHECK(pro.total_complex == (row.n + 4) * (row.n + 3) / 2);  // C(n+4, 2)
    CHECK(level_dim(pro, 2) == 1);
    CHECK(pro.dims.count({2, 0}) == 1);
    CHECK(pro.terminated_at == 3);
    // first weight 1 only carries second weights -1 and +1
    for (const auto& [w, d] : pro.dims) {
      if (w.w1 == 1) CHECK(std::abs(w.w2) == 1);
    }
  }
}

TEST_CASE("nilpotent profiles match the dimension formulas") {
  const std::vector<TagNilpotent> tags = {
      TagNilpotent{{{3, 1}}},
      TagNilpotent{{{3, 1}, {1, 1}}},
      TagNilpotent{{{3, 1}, {1, 1}, {1, -1}}},
      TagNilpotent{{{2, 1}}},
      TagNilpotent{{{2, 1}, {1, 1}}},
      TagNilpotent{{{2, 1}, {2, 1}}},
      TagNilpotent{{{2, 1}, {1, 1}, {1, -1}}},
  };
  for (const auto& tag : tags) {
    const std::string name = to_string(FamilyTag{tag});
    CAPTURE(name);
    const auto c = counts(tag);
    const int n = c.n1 + 2 * c.n2 + 3 * c.n3;
    const auto pro = prolong(sym_of(tag));
    const int g_minus = 1 + 2 * n;
    CHECK(level_dim(pro, -2) + level_dim(pro, -1) == g_minus);
    if (c.n3 == 1 && c.n2 == 0) {
      CHECK(pro.algebra.dim({0, 0}) == 5 + 2 * c.n1 + c.n1 * c.n1);
      CHECK(level_dim(pro, 1) == 2);
      CHECK(level_dim(pro, 2) == 0);
      CHECK(pro.terminated_at == 2);
    } else {
      REQUIRE(c.n3 == 0);
      CHECK(pro.algebra.dim({0, 0}) ==
            3 + c.n2 + 4 * binom2(c.n2) + 2 * c.n1 * c.n2 + c.n1 * c.n1);
      CHECK(level_dim(pro, 1) == 4 * c.n2 + 2 * c.n1);
      CHECK(level_dim(pro, 2) == 1);
      CHECK(pro.terminated_at == 3);
    }
  }
}

TEST_CASE("mixed nilpotent profiles stop at the zero level") {
  // a 3-block together with a 2-block: no extension at all
  const auto pro = prolong(sym_of(TagNilpotent{{{3, 1}, {2, 1}}}));
  CHECK(level_dim(pro, 1) == 0);
  CHECK(pro.terminated_at == 1);
  CHECK(pro.total_complex == pro.algebra.total_dim());
  for (const auto& [w, d] : pro.dims) CHECK(w.w1 <= 0);
}

TEST_CASE("weakly non-nilpotent symbols do not extend") {
  const std::vector<TagNonNilpotent> tags = {
      {1, 1, 1, 0, 1}, {2, 0, 1, 0, 1}, {2, 1, 1, 1, 1}, {2, 1, 1, 1, -1}, {2, 2, 1, 1, -1},
  };
  for (const auto& tag : tags) {
    const std::string name = to_string(FamilyTag{tag});
    CAPTURE(name);
    const auto pro = prolong(sym_of(tag));
    CHECK(level_dim(pro, 1) == 0);
    CHECK(pro.terminated_at == 1);
    const int n = tag.p + tag.q;
    const int n1 = tag.p1 + tag.q1;
    CHECK(pro.algebra.dim({0, 0}) == 2 + binom2(n1) + (n - n1) * (n - n1));
  }
}

TEST_CASE("assembled algebras pass closure and involution sweeps") {
  for (const FamilyTag& tag : std::vector<FamilyTag>{
           TagDefinite{1, 1}, TagSplit{1}, TagNilpotent{{{2, 1}, {1, 1}}},
           TagNonNilpotent{1, 1, 1, 0, 1}}) {
    const std::string name = to_string(tag);
    CAPTURE(name);
    const auto pro = prolong(sym_of(tag));  // verify=true throws on failure
    CHECK(pro.algebra.jacobi_check().ok());
    CHECK(pro.algebra.involution_check().empty());
    // conj maps (1,1) onto (1,-1) when present
    if (pro.algebra.has_component({1, 1})) {
      for (int k = 0; k < pro.algebra.dim({1, 1}); ++k) {
        const Element c = pro.algebra.conj(pro.algebra.basis_element({1, 1}, k));
        for (const auto& [w, v] : c.parts) CHECK(w == BiWeight{1, -1});
        CHECK_FALSE(c.is_zero());
      }
    }
  }
}

TEST_CASE("grading elements exist and transform correctly under conjugation") {
  for (const FamilyTag& tag : std::vector<FamilyTag>{
           TagDefinite{1, 0}, TagSplit{1}, TagNilpotent{{{2, 1}}}}) {
    const std::string name = to_string(tag);
    CAPTURE(name);
    const auto pro = prolong(sym_of(tag));
    const auto& a = pro.algebra;

    const auto h1 = grading_element(a, 1);
    REQUIRE(h1.has_value());
    for (const auto& [w, c] : a.components())
      for (int i = 0; i < c.dim; ++i) {
        const Element x = a.basis_element(w, i);
        CHECK(a.bracket(*h1, x) == GR(w.w1) * x);
      }
    CHECK(a.conj(*h1) == *h1);

    const auto h2 = grading_element(a, 2);
    REQUIRE(h2.has_value());
    for (const auto& [w, c] : a.components())
      for (int i = 0; i < c.dim; ++i) {
        const Element x = a.basis_element(w, i);
        CHECK(a.bracket(*h2, x) == GR(w.w2) * x);
      }
    CHECK(a.conj(*h2) == GR(-1) * *h2);
  }
}

TEST_CASE("real forms are rational, closed, and full-dimensional") {
  struct Row {
    FamilyTag tag;
    int pos, neg;
  };
  const std::vector<Row> rows = {
      {TagDefinite{1, 0}, 6, 4},
      {TagDefinite{2, 0}, 8, 7},
      {TagDefinite{1, 1}, 9, 6},
      {TagSplit{1}, 6, 9},
  };
  for (const auto& row : rows) {
    const std::string name = to_string(row.tag);
    CAPTURE(name);
    const auto pro = prolong(sym_of(row.tag));
    const auto rf = real_form(pro);
    CHECK(rf.dim == pro.total_complex);
    CHECK(rf.algebra.jacobi_check().ok());
    // every structure constant is a real rational
    for (const auto& [wa, ca] : rf.algebra.components())
      for (const auto& [wb, cb] : rf.algebra.components())
        for (int ia = 0; ia < ca.dim; ++ia)
          for (int ib = 0; ib < cb.dim; ++ib) {
            const Element v = rf.algebra.bracket_basis(wa, ia, wb, ib);
            for (const auto& [w, vec] : v.parts)
              for (const auto& entry : vec) CHECK(entry.is_real());
          }
    const Signature sig = hermitian_signature(rf.algebra.killing());
    CHECK(sig.pos == row.pos);
    CHECK(sig.neg == row.neg);
    CHECK(sig.zero == 0);
  }
}

TEST_CASE("a nilpotent real form has a degenerate Killing form") {
  const auto pro = prolong(sym_of(TagNilpotent{{{2, 1}}}));
  const auto rf = real_form(pro);
  CHECK(rf.dim == pro.total_complex);
  const Signature sig = hermitian_signature(rf.algebra.killing());
  CHECK(sig.zero > 0);
}

TEST_CASE("capping the degree reports a truncation") {
  ProlongationOptions opt;
  opt.max_degree = 1;
  const auto pro = prolong(sym_of(TagDefinite{1, 0}), opt);
  CHECK(pro.capped);
  CHECK(pro.terminated_at == 2);
  CHECK(pro.algebra.has_component({1, 1}));
  CHECK_FALSE(pro.algebra.has_component({2, 0}));
}

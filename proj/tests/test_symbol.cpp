#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "crsym/symbol.hpp"

using namespace crsym;

namespace {

GR gr(long re, long im = 0) { return GR(Rational(re), Rational(im)); }

Matrix diag(std::vector<long> d) {
  Matrix m(int(d.size()), int(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.at(int(i), int(i)) = gr(d[i]);
  return m;
}

// signature (p,q) diagonal form with the identity operator
SymbolInput type_I(int p, int q) {
  std::vector<long> d(size_t(p), 1);
  d.insert(d.end(), size_t(q), -1);
  return {diag(d), {Matrix::identity(p + q)}};
}

// split form with the standard complex-symplectic-style operator
SymbolInput type_II(int p) {
  std::vector<long> d(size_t(p), 1);
  d.insert(d.end(), size_t(p), -1);
  Matrix m(2 * p, 2 * p);
  for (int a = 0; a < p; ++a) {
    m.at(a, p + a) = gr(-1);
    m.at(p + a, a) = gr(1);
  }
  return {diag(d), {m}};
}

// direct sum of (k_i, eps_i) blocks: shift operator J_k with the eps-scaled
// antidiagonal pairing
SymbolInput nilpotent(std::vector<std::pair<int, int>> blocks) {
  int n = 0;
  for (auto [k, eps] : blocks) n += k;
  Matrix h(n, n), m(n, n);
  int off = 0;
  for (auto [k, eps] : blocks) {
    for (int i = 0; i < k; ++i) h.at(off + i, off + k - 1 - i) = gr(eps);
    for (int i = 0; i + 1 < k; ++i) m.at(off + i, off + i + 1) = gr(1);
    off += k;
  }
  return {h, {m}};
}

int g00_dim(const SymbolInput& in) { return int(compute_g00(in.H, in.Ms).size()); }

}  // namespace

TEST_CASE("validation: malformed inputs") {
  CHECK_THROWS_AS(validate_symbol({Matrix(), {}}), MalformedInput);
  CHECK_THROWS_AS(validate_symbol({Matrix(1, 2), {Matrix::identity(1)}}), MalformedInput);
  CHECK_THROWS_AS(validate_symbol({Matrix::identity(2), {}}), MalformedInput);
  CHECK_THROWS_AS(validate_symbol({Matrix::identity(2), {Matrix::identity(3)}}), MalformedInput);
}

TEST_CASE("validation: hermitian and nondegeneracy checks") {
  Matrix bad(2, 2);
  bad.at(0, 0) = gr(1);
  bad.at(0, 1) = GR::i();
  bad.at(1, 0) = GR::i();  // hermitian would need -i
  bad.at(1, 1) = gr(1);
  CHECK_THROWS_AS(validate_symbol({bad, {Matrix::identity(2)}}), NotHermitian);

  CHECK_THROWS_AS(validate_symbol({diag({1, 0}), {Matrix::identity(2)}}), DegenerateLeviForm);
}

TEST_CASE("validation: operators must be self-adjoint and independent") {
  Matrix skew(2, 2);
  skew.at(0, 1) = gr(1);
  skew.at(1, 0) = gr(-1);
  CHECK_THROWS_AS(validate_symbol({Matrix::identity(2), {skew}}), NotSelfAdjoint);

  Matrix two = 2 * Matrix::identity(2);
  CHECK_THROWS_AS(validate_symbol({Matrix::identity(2), {Matrix::identity(2), two}}),
                  NotTwoNondegenerate);

  // a valid two-operator family passes
  Matrix e11(2, 2), e22(2, 2);
  e11.at(0, 0) = gr(1);
  e22.at(1, 1) = gr(1);
  CHECK_NOTHROW(validate_symbol({Matrix::identity(2), {e11, e22}}));
}

TEST_CASE("dimension bookkeeping") {
  CHECK(type_I(1, 0).dim_M() == 5);
  CHECK(type_I(2, 1).dim_M() == 9);
  CHECK(type_II(1).dim_M() == 7);
  SymbolInput two_ops{Matrix::identity(2), {diag({1, 0}), diag({0, 1})}};
  CHECK(two_ops.dim_M() == 9);
}

TEST_CASE("weight-(0,0) derivation space dimensions: identity operator family") {
  CHECK(g00_dim(type_I(1, 0)) == 2);
  CHECK(g00_dim(type_I(2, 0)) == 3);
  CHECK(g00_dim(type_I(1, 1)) == 3);
  CHECK(g00_dim(type_I(2, 1)) == 5);
  CHECK(g00_dim(type_I(3, 1)) == 8);  // 2 + C(4,2)
}

TEST_CASE("weight-(0,0) derivation space dimensions: split operator family") {
  CHECK(g00_dim(type_II(1)) == 3);   // 2 + C(2,2)... = 2 + 1
  CHECK(g00_dim(type_II(2)) == 8);   // 2 + C(4,2)
}

TEST_CASE("weight-(0,0) derivation space dimensions: nilpotent operator families") {
  CHECK(g00_dim(nilpotent({{2, 1}})) == 4);            // 3 + n2
  CHECK(g00_dim(nilpotent({{3, 1}})) == 5);            // 5 + 2 n1 + n1^2
  CHECK(g00_dim(nilpotent({{3, 1}, {1, 1}})) == 8);    // 5 + 2 + 1
  CHECK(g00_dim(nilpotent({{3, -1}, {1, 1}})) == 8);   // signs do not change dims
  CHECK(g00_dim(nilpotent({{2, 1}, {2, -1}})) == 9);   // 3 + 2 + 4 C(2,2)...: 3+2+4
  CHECK(g00_dim(nilpotent({{2, 1}, {1, 1}})) == 7);    // 3 + 1 + 2 + 1
}

TEST_CASE("weight-(0,0) derivation space dimensions: operators with kernel") {
  // invertible-plus-zero operator: the zero part contributes a full gl factor
  SymbolInput w1{diag({1, -1, 1}), {diag({1, 1, 0})}};
  CHECK(g00_dim(w1) == 4);  // 2 + C(2,2)... = 2 + 1 + 1
  SymbolInput w2{diag({1, 1}), {diag({1, 0})}};
  CHECK(g00_dim(w2) == 3);  // 2 + 0 + 1
}

TEST_CASE("the two canonical scale derivations always appear") {
  for (const SymbolInput& in :
       {type_I(2, 1), type_II(1), nilpotent({{3, 1}}), SymbolInput{diag({1, 1}), {diag({1, 0})}}}) {
    auto basis = compute_g00(in.H, in.Ms);
    int n = in.n();
    CHECK(express_in_g00(basis, {Matrix::identity(n), -Matrix::identity(n), gr(0)}).has_value());
    CHECK(express_in_g00(basis, {Matrix::identity(n), Matrix::identity(n), gr(2)}).has_value());
    // every derivation satisfies the compatibility relation X^T H + H Y = lambda H
    for (const Derivation& d : basis) {
      Matrix lhs = d.X.transpose() * in.H + in.H * d.Y;
      CHECK(lhs == d.lambda * in.H);
    }
  }
}

TEST_CASE("regularity and the cubic invariant of a single operator") {
  RegularityReport r1 = check_regular(type_I(2, 1));
  CHECK(r1.regular);
  CHECK(r1.has_alpha);
  CHECK(r1.alpha == Rational(1));

  RegularityReport r2 = check_regular(type_II(2));
  CHECK(r2.regular);
  CHECK(r2.alpha == Rational(-1));

  RegularityReport r3 = check_regular(nilpotent({{2, 1}, {3, -1}}));
  CHECK(r3.regular);
  CHECK(r3.alpha == Rational(0));

  // scaling the operator scales alpha quadratically: M -> 2M gives alpha = 4
  SymbolInput scaled = type_I(1, 1);
  scaled.Ms[0] = 2 * Matrix::identity(2);
  RegularityReport r4 = check_regular(scaled);
  CHECK(r4.regular);
  CHECK(r4.alpha == Rational(4));
}

TEST_CASE("a non-regular symbol is detected by both criteria consistently") {
  SymbolInput in{Matrix::identity(2), {diag({1, 2})}};
  RegularityReport r = check_regular(in);
  CHECK(!r.regular);
  CHECK(!r.has_alpha);
  CHECK(!r.witness.empty());
  CHECK_THROWS_AS(build_symbol(in), NotRegular);
}

TEST_CASE("regular two-operator family builds a Lie algebra") {
  SymbolInput in{Matrix::identity(2), {diag({1, 0}), diag({0, 1})}};
  RegularityReport r = check_regular(in);
  CHECK(r.regular);
  CHECK(!r.has_alpha);  // cubic invariant only defined for a single operator
  SymbolAlgebra sym = build_symbol(in);
  CHECK(sym.algebra.jacobi_check().ok());
  CHECK(sym.algebra.involution_check().empty());
  CHECK(sym.algebra.dim(BiWeight{0, 2}) == 2);
}

TEST_CASE("symbol algebra structure constants for the simplest definite form") {
  SymbolAlgebra sym = build_symbol(type_I(1, 0));
  const BigradedAlgebra& a = sym.algebra;
  CHECK(a.total_dim() == 7);  // 1 + 1 + 1 + 1 + 2 + 1
  CHECK(a.dim(BiWeight{0, 0}) == 2);

  const BiWeight wE0{-2, 0}, wEbar{-1, -1}, wE{-1, 1}, wFbar{0, -2}, wF{0, 2};
  Element e0 = a.basis_element(wE0, 0), e1 = a.basis_element(wE, 0);
  Element eb1 = a.basis_element(wEbar, 0), f1 = a.basis_element(wF, 0);
  Element fb1 = a.basis_element(wFbar, 0);

  CHECK(a.bracket(e1, eb1) == e0);
  CHECK(a.bracket(f1, eb1) == e1);
  CHECK(a.bracket(fb1, e1) == eb1);
  CHECK(a.bracket(e0, e1).is_zero());
  CHECK(a.bracket(e0, f1).is_zero());

  // [f, fbar] acts on e/ebar/e0 as the grading derivation (+1, -1, 0)
  Element ff = a.bracket(f1, fb1);
  CHECK(!ff.is_zero());
  CHECK(a.bracket(ff, e1) == e1);
  CHECK(a.bracket(ff, eb1) == -GR(1) * eb1);
  CHECK(a.bracket(ff, e0).is_zero());

  // involution swaps the two sides and negates the center
  CHECK(a.conj(e0) == -GR(1) * e0);
  CHECK(a.conj(e1) == eb1);
  CHECK(a.conj(f1) == fb1);
  CHECK(a.conj(ff) == -GR(1) * ff);

  CHECK(a.jacobi_check().ok());
  CHECK(a.involution_check().empty());
}

TEST_CASE("symbol algebras are Lie algebras with compatible involution across families") {
  for (const SymbolInput& in : {type_I(2, 1), type_II(1), nilpotent({{2, 1}}),
                                nilpotent({{3, 1}, {1, -1}}),
                                SymbolInput{diag({1, -1, 1}), {diag({1, 1, 0})}}}) {
    SymbolAlgebra sym = build_symbol(in);
    CHECK(sym.algebra.jacobi_check().ok());
    CHECK(sym.algebra.involution_check().empty());
    CHECK(int(sym.g00_basis.size()) == sym.algebra.dim(BiWeight{0, 0}));
    // the central element pairs the two middle components via the form
    Element br = sym.algebra.bracket(sym.algebra.basis_element(BiWeight{-1, 1}, 0),
                                     sym.algebra.basis_element(BiWeight{-1, -1}, 0));
    Element expect;
    if (!in.H.at(0, 0).is_zero())
      expect.parts[BiWeight{-2, 0}] = Vec{in.H.at(0, 0)};
    CHECK(br == expect);
  }
}

TEST_CASE("operator spans with complex entries work exactly") {
  // H = I, M = [[1, 1+i], [1+i, -i]]: M conj(M) M = 3 M with alpha = 3
  Matrix m(2, 2);
  m.at(0, 0) = gr(1);
  m.at(0, 1) = gr(1, 1);
  m.at(1, 0) = gr(1, 1);
  m.at(1, 1) = gr(0, -1);
  SymbolInput in{Matrix::identity(2), {m}};
  RegularityReport r = check_regular(in);
  CHECK(r.regular);
  CHECK(r.alpha == Rational(3));
  SymbolAlgebra sym = build_symbol(in);
  CHECK(sym.algebra.jacobi_check().ok());
  CHECK(sym.algebra.involution_check().empty());
}

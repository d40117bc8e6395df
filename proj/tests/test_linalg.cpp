#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "crsym/matrix.hpp"
#include "crsym/numbertheory.hpp"

using namespace crsym;

namespace {

GR gr(long re, long im = 0) { return GR(Rational(re), Rational(im)); }

Matrix mat(std::vector<std::vector<GR>> rows) {
  Matrix m(int(rows.size()), int(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m.at(int(i), int(j)) = rows[i][j];
  return m;
}

Matrix random_matrix(std::mt19937& rng, int rows, int cols, int density_pct = 70) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3), pct(0, 99);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (pct(rng) < density_pct)
        m.at(i, j) = GR(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
  return m;
}

}  // namespace

TEST_CASE("gaussian rational arithmetic and parsing") {
  GR a(Rational(1, 2), Rational(3));
  GR b(Rational(-2), Rational(1, 5));
  CHECK((a + b) - b == a);
  CHECK(a * b == b * a);
  CHECK((a / b) * b == a);
  CHECK(a * a.conj() == GR(a.norm()));
  CHECK(GR::i() * GR::i() == gr(-1));
  CHECK_THROWS_AS(a / GR(0), std::domain_error);

  CHECK(to_string(Rational(3, 4)) == "3/4");
  CHECK(to_string(Rational(-6, 8)) == "-3/4");
  CHECK(to_string(Rational(5)) == "5/1");
  CHECK(parse_rational("22/7") == Rational(22, 7));
  CHECK(parse_rational("-9") == Rational(-9));
  CHECK(parse_rational("4/6") == Rational(2, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rref on a rank-one hermitian matrix") {
  // [[1, i], [-i, 1]] row-reduces to [[1, i], [0, 0]] with pivot column 0.
  Matrix m = mat({{gr(1), GR::i()}, {-GR::i(), gr(1)}});
  RrefResult r = rref(m);
  CHECK(r.rank() == 1);
  REQUIRE(r.pivots == std::vector<int>{0});
  CHECK(r.m.at(0, 0) == gr(1));
  CHECK(r.m.at(0, 1) == GR::i());
  CHECK(r.m.at(1, 0) == gr(0));
  CHECK(r.m.at(1, 1) == gr(0));

  auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0] == Vec{-GR::i(), gr(1)});
}

TEST_CASE("rref pivoting is leftmost-column first") {
  Matrix m = mat({{gr(0), gr(2), gr(4)}, {gr(1), gr(1), gr(1)}});
  RrefResult r = rref(m);
  CHECK(r.pivots == std::vector<int>{0, 1});
  CHECK(r.m.at(0, 0) == gr(1));
  CHECK(r.m.at(0, 1) == gr(0));
  CHECK(r.m.at(1, 1) == gr(1));
}

TEST_CASE("nullspace vectors have unit free coordinates in increasing column order") {
  Matrix m = mat({{gr(1), gr(2), gr(3), gr(4)}});
  auto ns = nullspace(m);
  REQUIRE(ns.size() == 3);
  // free columns 1,2,3 in that order, each with entry 1 at its own position
  CHECK(ns[0][1] == gr(1));
  CHECK(ns[1][2] == gr(1));
  CHECK(ns[2][3] == gr(1));
  for (const Vec& v : ns) CHECK(vec_is_zero(m * v));
}

TEST_CASE("solve and inverse round-trip") {
  Matrix a = mat({{gr(2), GR::i()}, {gr(0), gr(1, 1)}});
  Vec b{gr(1), gr(-3, 2)};
  auto x = solve(a, b);
  REQUIRE(x.has_value());
  CHECK(a * *x == b);

  auto ainv = inverse(a);
  REQUIRE(ainv.has_value());
  CHECK(a * *ainv == Matrix::identity(2));
  CHECK(*ainv * a == Matrix::identity(2));

  // singular matrix has no inverse, and inconsistent systems have no solution
  Matrix s = mat({{gr(1), gr(2)}, {gr(2), gr(4)}});
  CHECK(!inverse(s).has_value());
  CHECK(!solve(s, Vec{gr(0), gr(1)}).has_value());
}

TEST_CASE("solve_all solves for several right-hand sides at once") {
  Matrix a = mat({{gr(1), gr(1)}, {gr(0), gr(2)}});
  Matrix b = mat({{gr(3), gr(0)}, {gr(4), gr(2)}});
  auto x = solve_all(a, b);
  REQUIRE(x.has_value());
  CHECK(a * *x == b);
}

TEST_CASE("incremental elimination matches batch rref on random input") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 25; ++trial) {
    int rows = 1 + int(rng() % 8), cols = 1 + int(rng() % 8);
    Matrix m = random_matrix(rng, rows, cols);
    IncrementalRref acc(cols);
    for (int i = 0; i < rows; ++i) acc.add_row(m.row(i));
    RrefResult batch = rref(m);
    CHECK(acc.rank() == batch.rank());
    CHECK(acc.pivots() == batch.pivots);
    // the RREF of the row space is unique, so the nonzero rows must agree
    Matrix inc = acc.matrix();
    for (int i = 0; i < batch.rank(); ++i)
      for (int j = 0; j < cols; ++j) CHECK(inc.at(i, j) == batch.m.at(i, j));
  }
}

TEST_CASE("incremental elimination reports rank growth per row") {
  IncrementalRref acc(2);
  CHECK(acc.add_row(Vec{gr(1), gr(2)}));
  CHECK(!acc.add_row(Vec{gr(2), gr(4)}));
  CHECK(acc.add_row(Vec{gr(0), gr(1)}));
  CHECK(acc.rank() == 2);
}

TEST_CASE("complex scalars realify to rotation-like blocks") {
  // multiplication by i on C^1 = the 2x2 block [[0,-1],[1,0]]
  Matrix mi = mat({{GR::i()}});
  Matrix r = realify_linear(mi);
  CHECK(r == mat({{gr(0), gr(-1)}, {gr(1), gr(0)}}));

  // anti-linear conj with matrix [1]: (x,y) -> (x,-y)
  CHECK(realify_antilinear(mat({{gr(1)}})) == mat({{gr(1), gr(0)}, {gr(0), gr(-1)}}));
  // anti-linear y -> i conj(y): (x,y) -> (y,x)
  CHECK(realify_antilinear(mat({{GR::i()}})) == mat({{gr(0), gr(1)}, {gr(1), gr(0)}}));
}

TEST_CASE("realification is multiplicative") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = random_matrix(rng, 3, 3), b = random_matrix(rng, 3, 3);
    CHECK(realify_linear(a * b) == realify_linear(a) * realify_linear(b));
    // (A conj(.)) then (B conj(.)) composes to (B conj(A) .) linear
    CHECK(realify_antilinear(b) * realify_antilinear(a) == realify_linear(b * a.conjugate()));
  }
}

TEST_CASE("hermitian diagonalization: diagonal inputs pass through") {
  Matrix h = mat({{gr(1), gr(0)}, {gr(0), gr(-1)}});
  HermDiag d = hermitian_diagonalize(h);
  CHECK(d.g == Matrix::identity(2));
  CHECK(d.diag == std::vector<Rational>{1, -1});
  CHECK(d.signature() == Signature{1, 1, 0});
}

TEST_CASE("hermitian diagonalization handles zero diagonal (hyperbolic plane)") {
  Matrix h = mat({{gr(0), gr(1)}, {gr(1), gr(0)}});
  HermDiag d = hermitian_diagonalize(h);
  CHECK(d.signature() == Signature{1, 1, 0});
  // witness property: g^T h conj(g) is the claimed diagonal
  Matrix dd = d.g.transpose() * h * d.g.conjugate();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(dd.at(i, j) == (i == j ? GR(d.diag[size_t(i)]) : gr(0)));
}

TEST_CASE("hermitian diagonalization congruence property on random hermitian matrices") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + int(rng() % 5);
    Matrix x = random_matrix(rng, n, n, 60);
    Matrix h = x + x.transpose().conjugate();  // hermitian by construction
    REQUIRE(is_hermitian(h));
    HermDiag d = hermitian_diagonalize(h);
    Matrix dd = d.g.transpose() * h * d.g.conjugate();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(dd.at(i, j) == (i == j ? GR(d.diag[size_t(i)]) : gr(0)));
    CHECK(d.signature().pos + d.signature().neg == rank(h));
  }
}

TEST_CASE("signature of the flat quadric form in 5 real dimensions") {
  // Q = antidiag hyperbolic pair plus definite part: signature (3,2) for
  // one positive direction (p=1, q=0 levi part)
  Matrix q = mat({{gr(0), gr(0), gr(1), gr(0), gr(0)},
                  {gr(0), gr(0), gr(0), gr(1), gr(0)},
                  {gr(1), gr(0), gr(0), gr(0), gr(0)},
                  {gr(0), gr(1), gr(0), gr(0), gr(0)},
                  {gr(0), gr(0), gr(0), gr(0), gr(1)}});
  CHECK(hermitian_signature(q) == Signature{3, 2, 0});
}

TEST_CASE("norm_split finds exact Gaussian factorizations") {
  for (long v : {2L, 5L, 13L, 25L, 50L, 1L}) {
    auto z = norm_split(Rational(v));
    REQUIRE(z.has_value());
    CHECK(z->norm() == Rational(v));
  }
  auto half = norm_split(Rational(1, 2));
  REQUIRE(half.has_value());
  CHECK(half->norm() == Rational(1, 2));
  auto frac = norm_split(Rational(5, 13));
  REQUIRE(frac.has_value());
  CHECK(frac->norm() == Rational(5, 13));

  // primes = 3 (mod 4) to an odd power are not norms
  CHECK(!norm_split(Rational(3)).has_value());
  CHECK(!norm_split(Rational(7)).has_value());
  CHECK(!norm_split(Rational(6)).has_value());
  CHECK(!norm_split(Rational(1, 3)).has_value());
  CHECK(norm_split(Rational(9)).has_value());
  CHECK(!norm_split(Rational(0)).has_value());
  CHECK(!norm_split(Rational(-4)).has_value());

  CHECK(is_norm(Rational(13)));
  CHECK(!is_norm(Rational(21)));
  CHECK(is_norm(Rational(49, 2)));
}

TEST_CASE("factorize returns increasing prime powers") {
  auto f = factorize(Integer(360));
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<Integer, int>{2, 3});
  CHECK(f[1] == std::pair<Integer, int>{3, 2});
  CHECK(f[2] == std::pair<Integer, int>{5, 1});
  auto big = factorize(Integer("1000003") * Integer("1000033"));
  REQUIRE(big.size() == 2);
  CHECK(big[0].first == Integer("1000003"));
  CHECK(big[1].first == Integer("1000033"));
}

TEST_CASE("gaussian gcd divides both arguments") {
  GR a(Rational(5), Rational(3)), b(Rational(2), Rational(-1));
  GR g = gaussian_gcd(a, b);
  GR qa = a / g, qb = b / g;
  CHECK(denominator(qa.re) == 1);
  CHECK(denominator(qa.im) == 1);
  CHECK(denominator(qb.re) == 1);
  CHECK(denominator(qb.im) == 1);
}

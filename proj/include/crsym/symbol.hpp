#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crsym/algebra.hpp"
#include "crsym/errors.hpp"
#include "crsym/matrix.hpp"

namespace crsym {

// Input data for a symbol algebra: a nondegenerate Hermitian n x n matrix H
// (the reduced Levi form l(u,v) = u^T H conj(v)) and r anti-linear operators
// A_k(y) = M_k conj(y), each self-adjoint with respect to l.
struct SymbolInput {
  Matrix H;
  std::vector<Matrix> Ms;

  int n() const { return H.rows(); }
  int r() const { return static_cast<int>(Ms.size()); }
  // Dimension of the corresponding CR manifold of hypersurface type.
  int dim_M() const { return 2 * (n() + r()) + 1; }
};

// A weight-(0,0) derivation of the negative part, stored by its action on the
// three components: X on g_{-1,1}, Y on g_{-1,-1}, lambda on g_{-2,0}.
// Compatibility with the bracket [e_a, ebar_b] = H_ab e0 forces
//   X^T H + H Y = lambda H.
struct Derivation {
  Matrix X;
  Matrix Y;
  GR lambda;
};

struct RegularityReport {
  bool regular = false;
  // r == 1 only: A^3 = alpha A with alpha real.
  bool has_alpha = false;
  Rational alpha = 0;
  // Human-readable description of the violated condition when !regular.
  std::string witness;
};

struct SymbolAlgebra {
  BigradedAlgebra algebra;
  std::vector<Derivation> g00_basis;
  SymbolInput meta;
};

// Structural validation: H hermitian and nondegenerate, each M_k the matrix of
// a self-adjoint anti-linear operator (M_k^T H symmetric), and the operators
// linearly independent (injectivity of v -> sum v_k A_k).
// Throws NotHermitian / DegenerateLeviForm / NotSelfAdjoint /
// NotTwoNondegenerate / MalformedInput.
SymbolInput validate_symbol(const SymbolInput& in);

// Maximal space of weight-(0,0) derivations d with [d, g_{0,+-2}] inside
// g_{0,+-2}: solves X M_k - M_k Y in span{M_j} and
// Y conj(M_k) - conj(M_k) X in span{conj(M_j)} for all k,
// with Y = lambda I - H^{-1} X^T H. Deterministic basis.
std::vector<Derivation> compute_g00(const Matrix& H, const std::vector<Matrix>& Ms);

// Span-membership test used for regularity and bracket assembly: express the
// derivation d in the basis returned by compute_g00. Empty optional when d is
// not in the span (after checking the linear relation defining Y as well).
std::optional<Vec> express_in_g00(const std::vector<Derivation>& basis, const Derivation& d);

// Decides whether the symbol is a Lie algebra: every composite
// [A_k, conj-dual of A_m], realized as the derivation
// (X, Y, 0) = (M_k conj(M_m), -conj(M_m) M_k, 0), must lie in g_{0,0}.
// For r = 1 additionally extracts alpha from M conj(M) M = alpha M.
RegularityReport check_regular(const SymbolInput& in);
RegularityReport check_regular(const SymbolAlgebra& sym);

// Builds the full bigraded algebra with components
// (-2,0), (-1,-1), (-1,1), (0,-2), (0,0), (0,2), all brackets, and the
// anti-linear involution. Throws NotRegular when a required bracket does not
// close into g_{0,0}.
SymbolAlgebra build_symbol(const SymbolInput& in);

}  // namespace crsym

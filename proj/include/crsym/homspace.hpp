#pragma once

#include <optional>

#include "crsym/algebra.hpp"

namespace crsym {

/// Degree-`deg` linear map on the negative part of a bigraded algebra,
/// stored blockwise: `blocks[w]` maps component w into component w + deg
/// (shape dim(w+deg) x dim(w)).  Absent blocks are zero.
struct HomElement {
  BiWeight deg;
  std::map<BiWeight, Matrix> blocks;

  bool is_zero() const;
  HomElement& operator+=(const HomElement& o);
  HomElement& operator*=(const GaussianRational& c);
  friend HomElement operator+(HomElement a, const HomElement& b) { return a += b; }
  friend HomElement operator*(const GaussianRational& c, HomElement f) { return f *= c; }
  bool operator==(const HomElement& o) const;

  /// f(x): apply blockwise.  Parts of x with no block map to zero.
  Element apply(const Element& x) const;
};

/// Sources of a degree-`deg` hom on algebra `a`: the negative components of
/// `a` (first weight < 0) whose shifted target component exists in `a`.
/// Blocks over other sources are forced zero.  Order fixes the flat layout.
std::vector<BiWeight> hom_sources(const BigradedAlgebra& a, BiWeight deg);

int hom_flat_dim(const BigradedAlgebra& a, BiWeight deg);

/// Row-major flattening of the blocks over hom_sources(a, deg).
Vec hom_to_flat(const BigradedAlgebra& a, const HomElement& f);
HomElement hom_from_flat(const BigradedAlgebra& a, BiWeight deg, const Vec& v);

/// Basis (canonical nullspace order) of all degree-`deg` maps f on the
/// negative components of `a` satisfying the Leibniz rule
///   f([u,v]) = [f(u),v] + [u,f(v)]
/// over every pair of negative basis elements.  The right-hand brackets use
/// the table of `a`, so `a` must already contain full tables for pairs
/// (negative, negative) and (solved nonnegative, negative).
std::vector<HomElement> solve_prolongation(const BigradedAlgebra& a, BiWeight deg);

/// solve_prolongation plus extra homogeneous linear side conditions, each a
/// row over the hom_to_flat coordinates (length hom_flat_dim(a, deg)).
std::vector<HomElement> solve_derivations(const BigradedAlgebra& a, BiWeight deg,
                                          const std::vector<Vec>& side_conditions);

/// [x, f] for a homogeneous algebra element x and a hom f: the map
/// v -> [x, f(v)] - f([x, v]), of degree deg(x) + deg(f).
HomElement hom_bracket(const BigradedAlgebra& a, const Element& x, const HomElement& f);

/// Coordinates of g in the span of `basis` (homs of one common degree);
/// nullopt if g is not in the span.
std::optional<Vec> express_in_basis(const BigradedAlgebra& a, const std::vector<HomElement>& basis,
                                    const HomElement& g);

}  // namespace crsym

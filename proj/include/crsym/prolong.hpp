#pragma once

#include <map>
#include <optional>

#include "crsym/homspace.hpp"
#include "crsym/symbol.hpp"

namespace crsym {

struct ProlongationOptions {
  // Highest first weight to solve for before giving up.  Every family handled
  // here terminates at first weight <= 3, so the default is a safety net, not
  // a tuning knob.
  int max_degree = 10;
  // Re-verify the assembled algebra (Jacobi sweep, involution compatibility,
  // faithfulness of the nonnegative part on the negative part) and throw
  // InternalVerification on any failure.  The assembly already guards each
  // step; this adds an end-to-end sweep that costs O(dim^3).
  bool verify = true;
};

// The maximal bigraded extension of a symbol algebra: components of first
// weight 1 carry second weights -1 and +1 only and are trimmed so that
// brackets with g_{0,+-2} stay inside the stated components; higher first
// weights are the usual maximal extension over what was already built.
struct ProlongationResult {
  BigradedAlgebra algebra;       // sealed, with brackets and involution
  std::map<BiWeight, int> dims;  // complex dimension per component
  int total_complex = 0;
  int terminated_at = 0;  // first empty level (== max_degree + 1 when capped)
  bool capped = false;    // hit max_degree with a nonzero top level
};

ProlongationResult prolong(const SymbolAlgebra& sym, const ProlongationOptions& opt = {});

// Basis of the untrimmed degree-(1,j) block, j in {-3,-1,1,3}: all maps on
// the negative part with the Leibniz property, before bracket conditions.
std::vector<HomElement> first_prolongation_block(const SymbolAlgebra& sym, BiWeight deg);

// Basis of the trimmed degree-(1,j) block, j in {-1,1}: Leibniz maps f with
// [f, g_{0,2j/|j|}] = 0 and [[f, g_{0,-2j/|j|}], g_{0,-2j/|j|}] = 0, i.e. the
// first-weight-one components the extended algebra actually keeps.
std::vector<HomElement> first_bigraded_block(const SymbolAlgebra& sym, BiWeight deg);

// Dimensions of the untrimmed degree-one extension, per second weight
// j in {-3,-1,1,3}.
std::map<BiWeight, int> first_prolongation_uncut_dims(const SymbolAlgebra& sym);

// Element h of g_{0,0} with [h, x] = w(x) x for every basis element x, where
// w is the first (which == 1) or second (which == 2) weight.  Empty when no
// such element exists.
std::optional<Element> grading_element(const BigradedAlgebra& a, int which);

// Fixed points of the involution, as a real Lie algebra graded by first
// weight: components (i, 0), all structure constants real.
struct RealFormResult {
  BigradedAlgebra algebra;
  int dim = 0;
};
RealFormResult real_form(const ProlongationResult& pro);

}  // namespace crsym

#pragma once

#include <map>
#include <string>

#include "crsym/algebra.hpp"
#include "crsym/matrix.hpp"
#include "crsym/prolong.hpp"
#include "crsym/symbol.hpp"

namespace crsym {

// Invariants that pin down a real Lie algebra inside the finite table of
// candidate models: complex dimension, Killing signature of the real form,
// semisimplicity (Killing form nondegenerate), and the per-weight dimension
// ledger of the complex bigraded algebra.
struct Fingerprint {
  int complex_dim = 0;
  Signature killing_signature;
  bool semisimple = false;
  std::map<BiWeight, int> dims;

  bool operator==(const Fingerprint&) const = default;
};

// A reference model with a labeled bigraded basis.  For the orthogonal and
// quaternionic-orthogonal families the structure constants come from exact
// commutators of explicit matrices, computed here and never copied from the
// assembly pipeline; the fingerprint is computed from a separate real matrix
// realization of the same algebra.  The matrix models carry no involution —
// they are pure complex structure-constant tables — while the block-profile
// model is assembled through the standard pipeline and keeps its involution.
struct GoldenModel {
  std::string name;
  BigradedAlgebra algebra;
  Fingerprint fingerprint;
};

// Matrices preserving a symmetric bilinear form of signature (p+2, q+2),
// presented in a basis graded by the two weights.  Requires p, q >= 0 and
// p + q >= 1.  Model name: "so(p+2,q+2)".
GoldenModel golden_so(int p, int q);

// The quaternionic real form of the even orthogonal algebra in the split
// presentation [[A,B],[C,-A^T]] with B, C skew, complexified and presented in
// a bigraded basis.  Requires p >= 1.  Model name: "so*(2p+4)".
GoldenModel golden_so_star(int p);

// Assembled extension of the nilpotent normal form with one 3-block and n1
// extra plus-sign 1-blocks, cross-checked against the explicit degree-one
// derivation pair (verify_block3_extension).  Model name: "nilpotent(3[,1..])".
GoldenModel golden_block3(int n1);

// Dispatch by model name: "so(a,b)" with a >= b >= 2, "so*(2m)" or
// "so_star(2m)" with even argument >= 6, "nilpotent(3)" optionally followed
// by ",1" repeats.  Throws MalformedName for anything else.
GoldenModel build_golden(const std::string& name);

// Outcome of matching a computed prolongation against a reference model.
struct MatchReport {
  bool matched = false;
  std::string detail;  // first difference found; empty when matched
};

// Structure match: compares fingerprints (dimension ledger and real Killing
// signature), then builds the component-wise change of basis that sends each
// model basis element to the computed element with the same adjoint action on
// the negative components (identity on the negative and second-weight
// components, which share labels), checks that these images exist and span,
// and finally compares every structure constant through that correspondence.
// The first difference found is reported; a truncated (capped) result never
// matches.
MatchReport match_structure(const ProlongationResult& computed,
                            const GoldenModel& golden);

// For a symbol in the block normal form with one 3-block (plus optional
// 1-blocks): checks that the computed degree-(1,1) component is spanned by
// the explicit derivation built from the named weight-zero operators, that
// the degree-(1,-1) component is spanned by its conjugate, and that the
// algebra's involution exchanges the two.  Returns false with a description
// in *detail when any step fails.
bool verify_block3_extension(const SymbolAlgebra& sym,
                             const ProlongationResult& pro,
                             std::string* detail = nullptr);

// Fingerprint of a computed prolongation: its dimension ledger plus the
// Killing data of its real form.  Requires an uncapped result.
Fingerprint fingerprint_of(const ProlongationResult& pro);

}  // namespace crsym

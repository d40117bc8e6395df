#pragma once

#include <string>
#include <variant>
#include <vector>

#include "crsym/symbol.hpp"

namespace crsym {

// --- Family tags ---------------------------------------------------------
//
// A rank-one symbol (H, M) is classified by the anti-linear operator
// A(y) = M conj(y), which satisfies A^3 = alpha A for a real rational alpha.
//
//   alpha > 0, A invertible: TagDefinite   -- A scales to an anti-involution;
//                                             the form has signature (p, q).
//   alpha < 0, A invertible: TagSplit      -- A scales to a quaternionic
//                                             structure; signature is (p, p).
//   alpha != 0, A singular:  TagNonNilpotent -- V = W + Z with A invertible
//                                             on W and zero on Z.
//   alpha == 0:              TagNilpotent  -- A is nilpotent; Jordan blocks
//                                             of size k <= 3 carry signs.
//
// Tags are canonical: TagDefinite has p >= q; TagNonNilpotent has p > q or
// (p == q and p1 >= q1); nilpotent blocks are sorted (k descending, +1
// before -1), even blocks always carry sign +1, and the overall sign
// ambiguity (the form may be negated wholesale) is resolved by taking the
// lexicographically smaller of the two sign patterns.

struct TagDefinite {
  int p = 0, q = 0;
  friend bool operator==(const TagDefinite&, const TagDefinite&) = default;
};

struct TagSplit {
  int p = 0;
  friend bool operator==(const TagSplit&, const TagSplit&) = default;
};

struct NilBlock {
  int k = 1;     // block size, 1 <= k <= 3
  int eps = 1;   // sign, +1 or -1 (always +1 when k is even)
  friend bool operator==(const NilBlock&, const NilBlock&) = default;
};

struct TagNilpotent {
  std::vector<NilBlock> blocks;  // sorted: k descending, eps +1 before -1
  friend bool operator==(const TagNilpotent&, const TagNilpotent&) = default;
};

struct TagNonNilpotent {
  int p = 0, q = 0;    // signature of the whole form
  int p1 = 0, q1 = 0;  // signature of the form restricted to W
  int alpha_sign = 1;  // sign of the cubic coefficient
  friend bool operator==(const TagNonNilpotent&, const TagNonNilpotent&) = default;
};

using FamilyTag = std::variant<TagDefinite, TagSplit, TagNilpotent, TagNonNilpotent>;

std::string to_string(const FamilyTag& tag);

// --- Classification result -----------------------------------------------

struct ClassificationInvariants {
  Rational alpha;      // cubic coefficient of A
  int alpha_sign = 0;  // sign of alpha
  Signature sig_l;     // signature of the form (as given, before any flip)
  int rank_A = 0;      // rank of M
  int rank_A2 = 0;     // rank of M conj(M)
};

// Change of basis carrying the input to the emitted normal form:
//   H_normal = l_scale * g^T H conj(g),   M_normal = a_scale * g^{-1} M conj(g).
// Columns of g are the new basis vectors in the input coordinates.
struct BasisChange {
  Matrix g;
  Rational l_scale = Rational(1);
  GR a_scale = GR(Rational(1), Rational(0));
  bool exact = true;  // false when a scale factor has no exact representation
  std::vector<std::string> residuals;  // what obstructed exactness
};

struct Classification {
  FamilyTag tag;
  ClassificationInvariants invariants;
  BasisChange change;
  bool verified = false;  // transported input matches the normal form exactly
};

// Normal-form (H, M) for a tag.  Throws MalformedTag when the parameters are
// inconsistent (negative counts, empty form, nilpotent tag with no block of
// size > 1, split tag on an odd-dimensional space, ...).
SymbolInput emit_normal_form(const FamilyTag& tag);

// Classify a validated kernel-rank-one symbol.  Throws KernelRankUnsupported
// for kernel rank != 1, NotRegular when the symbol fails the regularity
// test, and the validation errors of validate_symbol for malformed input.
Classification classify(const SymbolInput& in);

// True iff the two symbols have the same canonical tag.
bool equivalent(const SymbolInput& a, const SymbolInput& b);

}  // namespace crsym

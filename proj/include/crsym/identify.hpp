#pragma once

#include <string>

#include "crsym/golden.hpp"
#include "crsym/prolong.hpp"

namespace crsym {

// Outcome of looking up a computed prolongation in the model table.
struct Identification {
  // Canonical name: "so(a,b)" with a >= b, "so*(2m)", a block profile such as
  // "nilpotent(3,1)" or "nilpotent(2,2,1)", "g0-only" when the algebra has no
  // positive part, or "unrecognized".
  std::string name;
  Fingerprint fingerprint;
  // True when the name came from an exact fingerprint match against a model
  // built from explicit matrices (the orthogonal and quaternionic families).
  bool matched_golden = false;
};

// Names the real form of a completed prolongation.  Semisimple algebras are
// matched by exact fingerprint (dimension ledger plus real Killing data)
// against the model table, which is built lazily and cached for the life of
// the process; degenerate-Killing algebras are named by their dimension
// ledger alone.  Requires an uncapped result.
Identification identify_real_form(const ProlongationResult& pro);

}  // namespace crsym

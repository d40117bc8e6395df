#pragma once

#include <string>

#include "crsym/algebra.hpp"
#include "crsym/classify.hpp"
#include "crsym/identify.hpp"
#include "crsym/prolong.hpp"
#include "crsym/symbol.hpp"

namespace crsym {

// Reads a symbol from JSON text.  Two shapes are accepted: explicit matrices
//   {"n":2,"kernel_rank":1,"hermitian":[[...]],"operators":[[[...]]]}
// (the "n"/"kernel_rank" fields are optional cross-checks), or a normal-form
// descriptor expanded through emit_normal_form:
//   {"form":"I","p":2,"q":0} | {"form":"II","p":1}
//   | {"form":"nilpotent","blocks":[{"k":2,"eps":1},...]}
//   | {"form":"non_nilpotent","p":2,"q":1,"p1":1,"q1":1,"alpha_sign":1}.
// Matrix entries may be JSON integers, rational strings "p/q", or objects
// {"re":"p/q","im":"r/s"}.  Throws MalformedInput for structural problems and
// MalformedTag for inconsistent descriptor parameters.  The result is not
// validated; run validate_symbol for that.
SymbolInput parse_symbol_json(const std::string& text);

// Explicit-matrix symbol serialization (canonical entry objects).
std::string symbol_to_json(const SymbolInput& in);

// Byte-reproducible bigraded-algebra serialization: components sorted by
// weight, one entry per nonzero bracket of flat basis pairs in order, entry
// values sorted by index, every rational written as "p/q".
std::string algebra_to_json(const BigradedAlgebra& a);

// Parses the algebra format back into a sealed algebra.  Extra top-level keys
// (dimension ledgers, fingerprints) are ignored, so prolongation and model
// files load too.  Throws MalformedInput on structural problems, including
// grading violations the seal step would reject.
BigradedAlgebra algebra_from_json(const std::string& text);

// A model with its name and fingerprint alongside the full algebra format.
std::string golden_to_json(const GoldenModel& g);

// Classification report: family tag fields, invariants, the change-of-basis
// witness, and the verification flag.
std::string classification_to_json(const Classification& c);

// Prolongation output: the algebra format plus a dimension ledger,
// the total complex dimension, the last computed degree, and the cap flag.
std::string prolongation_to_json(const ProlongationResult& pro);

// Identification result: name, fingerprint (dimension, real Killing
// signature, semisimplicity), and whether a model was matched exactly.
std::string identification_to_json(const Identification& id);

}  // namespace crsym

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crsym/matrix.hpp"

namespace crsym {

/// Pair of integer weights; ordered lexicographically (first weight, then
/// second), which fixes basis enumeration and serialization order everywhere.
struct BiWeight {
  int w1 = 0;
  int w2 = 0;
  auto operator<=>(const BiWeight&) const = default;
  BiWeight operator+(const BiWeight& o) const { return {w1 + o.w1, w2 + o.w2}; }
  BiWeight mirror() const { return {w1, -w2}; }
};

std::string to_string(const BiWeight& w);

/// Element of a bigraded algebra: coordinates per component, sparse over
/// components (absent component = zero there).
struct Element {
  std::map<BiWeight, Vec> parts;

  bool is_zero() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const GaussianRational& c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const GaussianRational& c, Element a) { return a *= c; }
  bool operator==(const Element& o) const;
  /// Drop zero vectors / zero components.
  void prune();
};

struct JacobiViolation {
  // flat basis indices of the violating triple and the residual element
  int i, j, k;
  Element residual;
};

struct JacobiReport {
  std::vector<JacobiViolation> violations;
  long long triples_checked = 0;
  bool ok() const { return violations.empty(); }
};

/// Finite-dimensional (Z x Z)-bigraded complex Lie algebra with explicit
/// structure constants and an anti-linear involution mapping component (i,j)
/// onto (i,-j).  Built through the mutating API, then sealed; all queries
/// require a sealed (verified) object.
class BigradedAlgebra {
 public:
  struct Component {
    BiWeight w;
    int dim = 0;
    std::vector<std::string> labels;
  };

  // ---- construction ----
  void add_component(BiWeight w, int dim, std::vector<std::string> labels);
  /// Set [basis ia of a, basis ib of b] = value.  Stored only for a < b or
  /// (a == b && ia < ib); the mirrored entry is implied by antisymmetry and
  /// passing it is an error.  Unset pairs are zero.
  void set_bracket(BiWeight a, int ia, BiWeight b, int ib, const Element& value);
  /// conj(e_k of component w) = sum_m c(m,k) e_m of component mirror(w).
  void set_involution(BiWeight w, Matrix c);
  /// Freeze.  Verifies bracket values land in the additive component, the
  /// involution squares to the identity, and shapes agree.
  void seal();
  bool sealed() const { return sealed_; }

  // ---- queries ----
  const std::map<BiWeight, Component>& components() const { return comps_; }
  bool has_component(BiWeight w) const { return comps_.count(w) != 0; }
  int dim(BiWeight w) const;
  int total_dim() const;

  Element basis_element(BiWeight w, int i) const;
  Element bracket(const Element& x, const Element& y) const;
  /// Bracket of two basis vectors (table lookup, sign-adjusted).
  Element bracket_basis(BiWeight a, int ia, BiWeight b, int ib) const;

  bool has_involution() const { return !invol_.empty(); }
  const Matrix& involution_matrix(BiWeight w) const;
  Element conj(const Element& x) const;

  // flat basis enumeration: components in BiWeight order, then index
  int flat_dim() const { return total_dim(); }
  std::pair<BiWeight, int> flat_to_comp(int flat) const;
  int comp_to_flat(BiWeight w, int i) const;
  Vec element_to_flat(const Element& x) const;
  Element flat_to_element(const Vec& v) const;

  /// Adjoint matrix of x acting on the flat basis.
  Matrix ad(const Element& x) const;

  JacobiReport jacobi_check() const;

  /// Involution checks: anti-involution (squares to id via conjugation) and
  /// bracket compatibility conj[x,y] = [conj x, conj y] over all basis pairs.
  /// Returns an empty string on success, else a description of the failure.
  std::string involution_check() const;

  /// Killing form K(x,y) = tr(ad x ad y) on the flat basis.
  Matrix killing() const;

  /// Forget the second weight: component (i,j) is merged into (i,0), with
  /// basis order inside the merged component following increasing j.  Brackets
  /// are carried over; the involution is dropped.  Used to solve for
  /// derivations that preserve only the first grading.
  BigradedAlgebra collapsed_second_weight() const;

 private:
  std::map<BiWeight, Component> comps_;
  // key: (a, ia, b, ib) with (a,ia) < (b,ib) lexicographically
  std::map<std::tuple<BiWeight, int, BiWeight, int>, Element> table_;
  std::map<BiWeight, Matrix> invol_;
  bool sealed_ = false;
};

}  // namespace crsym

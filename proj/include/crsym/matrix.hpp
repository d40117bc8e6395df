#pragma once

#include <optional>
#include <vector>

#include "crsym/rational.hpp"

namespace crsym {

using Vec = std::vector<GaussianRational>;

/// Dense row-major matrix over Q(i).
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = GR(1);
    return m;
  }

  static Matrix from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(int(rows.size()), int(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[size_t(i)][size_t(j)];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  GaussianRational& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const GaussianRational& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  Vec row(int i) const { return Vec(a_.begin() + size_t(i) * cols_, a_.begin() + size_t(i + 1) * cols_); }
  Vec col(int j) const {
    Vec v(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) v[size_t(i)] = at(i, j);
    return v;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  Matrix conjugate() const {
    Matrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).conj();
    return m;
  }

  Matrix operator*(const Matrix& o) const;
  Vec operator*(const Vec& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  friend Matrix operator*(const GaussianRational& c, Matrix m) {
    for (auto& x : m.a_) x *= c;
    return m;
  }

  bool operator==(const Matrix&) const = default;

 private:
  int rows_, cols_;
  std::vector<GaussianRational> a_;
};

// ---- vector helpers -------------------------------------------------------

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const GaussianRational& c, const Vec& v);
bool vec_is_zero(const Vec& v);
Vec vec_conj(const Vec& v);

// ---- elimination ----------------------------------------------------------

/// Reduced row echelon form with deterministic pivoting: columns are scanned
/// left to right and the first row with a nonzero entry becomes the pivot row.
struct RrefResult {
  Matrix m;
  std::vector<int> pivots;  // pivot column per pivot row, increasing
  int rank() const { return int(pivots.size()); }
};
RrefResult rref(Matrix m);

int rank(const Matrix& m);

/// Row-space accumulator kept in reduced row echelon form.  Feeding rows one
/// at a time yields the same canonical RREF as batch reduction (RREF is
/// unique per row space) without storing dependent rows.
class IncrementalRref {
 public:
  explicit IncrementalRref(int cols) : cols_(cols) {}
  /// Reduce r against the current rows; insert the normalized remainder if
  /// independent.  Returns true if the rank grew.
  bool add_row(Vec r);
  int rank() const { return int(rows_.size()); }
  int cols() const { return cols_; }
  /// rank x cols matrix, rows in increasing pivot order (RREF).
  Matrix matrix() const;
  const std::vector<int>& pivots() const { return pivots_; }

 private:
  int cols_;
  std::vector<Vec> rows_;    // fully reduced at all times
  std::vector<int> pivots_;  // increasing, parallel to rows_
};

/// Canonical nullspace basis: one vector per free column in increasing column
/// order, with entry 1 in that free position.  Size = cols - rank.
std::vector<Vec> nullspace(const Matrix& m);

/// One solution of A x = b with all free variables set to zero, if consistent.
std::optional<Vec> solve(const Matrix& a, const Vec& b);

/// Solve A X = B column-by-column; nullopt if any column is inconsistent.
std::optional<Matrix> solve_all(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& m);

// ---- real structure -------------------------------------------------------

/// Complex n-dim space as a real 2n-dim one: coordinates (Re z | Im z);
/// z = x+iy acts by [[x,-y],[y,x]].
Matrix realify_linear(const Matrix& m);

/// Anti-linear map y -> M conj(y) as a real 2n x 2n matrix [[X,Y],[Y,-X]]
/// for M = X + iY.
Matrix realify_antilinear(const Matrix& m);

// ---- signatures -----------------------------------------------------------

struct Signature {
  int pos = 0;
  int neg = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};

/// Exact congruence diagonalization of a Hermitian matrix (conj(H)^T = H):
/// returns g and real diagonal d with g^T H conj(g) = diag(d).  Pivots use the
/// first nonzero diagonal entry; an all-zero diagonal is repaired by a
/// row/column addition that creates the entry 2|h_ij|^2.  Already-diagonal
/// inputs come back unchanged with g = I.
struct HermDiag {
  Matrix g;
  std::vector<Rational> diag;
  Signature signature() const {
    Signature s;
    for (const auto& d : diag) {
      if (d > 0)
        ++s.pos;
      else if (d < 0)
        ++s.neg;
      else
        ++s.zero;
    }
    return s;
  }
};
HermDiag hermitian_diagonalize(const Matrix& h);

bool is_hermitian(const Matrix& h);

Signature hermitian_signature(const Matrix& h);

}  // namespace crsym

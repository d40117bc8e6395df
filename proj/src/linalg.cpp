#include "crsym/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace crsym {

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const GaussianRational& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) += x * o.at(k, j);
      }
    }
  return r;
}

Vec Matrix::operator*(const Vec& v) const {
  if (cols_ != int(v.size())) throw std::invalid_argument("matrix-vector shape mismatch");
  Vec r(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[size_t(j)].is_zero()) r[size_t(i)] += at(i, j) * v[size_t(j)];
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  for (auto& x : r.a_) x = -x;
  return r;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec vec_scale(const GaussianRational& c, const Vec& v) {
  Vec r = v;
  for (auto& x : r) x *= c;
  return r;
}

bool vec_is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec vec_conj(const Vec& v) {
  Vec r = v;
  for (auto& x : r) x = x.conj();
  return r;
}

RrefResult rref(Matrix m) {
  RrefResult res;
  int lead = 0;
  for (int col = 0; col < m.cols() && lead < m.rows(); ++col) {
    int pivot = -1;
    for (int i = lead; i < m.rows(); ++i)
      if (!m.at(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != lead)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(lead, j));
    GaussianRational inv = GR(1) / m.at(lead, col);
    for (int j = col; j < m.cols(); ++j) m.at(lead, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == lead || m.at(i, col).is_zero()) continue;
      GaussianRational f = m.at(i, col);
      for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(lead, j);
    }
    res.pivots.push_back(col);
    ++lead;
  }
  res.m = std::move(m);
  return res;
}

int rank(const Matrix& m) { return rref(m).rank(); }

bool IncrementalRref::add_row(Vec r) {
  if (int(r.size()) != cols_) throw std::invalid_argument("IncrementalRref row size mismatch");
  for (size_t k = 0; k < rows_.size(); ++k) {
    const GaussianRational& c = r[size_t(pivots_[k])];
    if (c.is_zero()) continue;
    GaussianRational f = c;  // pivot entries are 1
    for (int j = pivots_[k]; j < cols_; ++j)
      if (!rows_[k][size_t(j)].is_zero()) r[size_t(j)] -= f * rows_[k][size_t(j)];
  }
  int lead = -1;
  for (int j = 0; j < cols_; ++j)
    if (!r[size_t(j)].is_zero()) {
      lead = j;
      break;
    }
  if (lead < 0) return false;
  GaussianRational inv = GR(1) / r[size_t(lead)];
  for (int j = lead; j < cols_; ++j)
    if (!r[size_t(j)].is_zero()) r[size_t(j)] *= inv;
  for (size_t k = 0; k < rows_.size(); ++k) {
    const GaussianRational c = rows_[k][size_t(lead)];
    if (c.is_zero()) continue;
    for (int j = lead; j < cols_; ++j)
      if (!r[size_t(j)].is_zero()) rows_[k][size_t(j)] -= c * r[size_t(j)];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
  size_t idx = size_t(pos - pivots_.begin());
  pivots_.insert(pos, lead);
  rows_.insert(rows_.begin() + long(idx), std::move(r));
  return true;
}

Matrix IncrementalRref::matrix() const {
  Matrix m(int(rows_.size()), cols_);
  for (size_t i = 0; i < rows_.size(); ++i)
    for (int j = 0; j < cols_; ++j) m.at(int(i), j) = rows_[i][size_t(j)];
  return m;
}

std::vector<Vec> nullspace(const Matrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(size_t(m.cols()), false);
  for (int p : r.pivots) is_pivot[size_t(p)] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[size_t(f)]) continue;
    Vec v(static_cast<size_t>(m.cols()));
    v[size_t(f)] = GR(1);
    for (int row = 0; row < r.rank(); ++row) v[size_t(r.pivots[size_t(row)])] = -r.m.at(row, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  Matrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[size_t(i)];
  }
  RrefResult r = rref(std::move(aug));
  Vec x(static_cast<size_t>(a.cols()));
  for (int row = 0; row < r.rank(); ++row) {
    if (r.pivots[size_t(row)] == a.cols()) return std::nullopt;  // 0 = 1 row
    x[size_t(r.pivots[size_t(row)])] = r.m.at(row, a.cols());
  }
  return x;
}

std::optional<Matrix> solve_all(const Matrix& a, const Matrix& b) {
  Matrix aug(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) aug.at(i, a.cols() + j) = b.at(i, j);
  }
  RrefResult r = rref(std::move(aug));
  Matrix x(a.cols(), b.cols());
  for (int row = 0; row < r.rank(); ++row) {
    if (r.pivots[size_t(row)] >= a.cols()) return std::nullopt;
    for (int j = 0; j < b.cols(); ++j) x.at(r.pivots[size_t(row)], j) = r.m.at(row, a.cols() + j);
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto x = solve_all(m, Matrix::identity(m.rows()));
  if (!x) return std::nullopt;
  // solve_all gives a right inverse candidate; for square full-rank it is exact,
  // for rank-deficient input some column was inconsistent and we got nullopt,
  // except when the system is consistent but underdetermined -- verify.
  if (!(m * *x == Matrix::identity(m.rows()))) return std::nullopt;
  return x;
}

Matrix realify_linear(const Matrix& m) {
  int n = m.rows(), c = m.cols();
  Matrix r(2 * n, 2 * c);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < c; ++j) {
      r.at(i, j) = GR(m.at(i, j).re);
      r.at(i, c + j) = GR(-m.at(i, j).im);
      r.at(n + i, j) = GR(m.at(i, j).im);
      r.at(n + i, c + j) = GR(m.at(i, j).re);
    }
  return r;
}

Matrix realify_antilinear(const Matrix& m) {
  int n = m.rows(), c = m.cols();
  Matrix r(2 * n, 2 * c);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < c; ++j) {
      r.at(i, j) = GR(m.at(i, j).re);
      r.at(i, c + j) = GR(m.at(i, j).im);
      r.at(n + i, j) = GR(m.at(i, j).im);
      r.at(n + i, c + j) = GR(-m.at(i, j).re);
    }
  return r;
}

bool is_hermitian(const Matrix& h) {
  if (h.rows() != h.cols()) return false;
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j <= i; ++j)
      if (h.at(i, j) != h.at(j, i).conj()) return false;
  return true;
}

HermDiag hermitian_diagonalize(const Matrix& h) {
  if (!is_hermitian(h)) throw std::invalid_argument("hermitian_diagonalize: input not Hermitian");
  int n = h.rows();
  Matrix a = h;
  Matrix g = Matrix::identity(n);
  // Column operations v_j -> v_j + c v_k act as a -> a + (updates);  we keep
  // g so that g^T h conj(g) = a throughout.  Column op on basis: new basis
  // vector b_j += c b_k means g column j += c * (g column k), and
  // a_ij' = l(b_i, b_j): a.col j += c-bar contributions.
  auto col_add = [&](int j, int k, const GaussianRational& c) {
    // b_j += c b_k
    for (int i = 0; i < n; ++i) g.at(i, j) += c * g.at(i, k);
    for (int i = 0; i < n; ++i) a.at(i, j) += c.conj() * a.at(i, k);
    for (int i = 0; i < n; ++i) a.at(j, i) += c * a.at(k, i);
  };
  auto col_swap = [&](int j, int k) {
    for (int i = 0; i < n; ++i) std::swap(g.at(i, j), g.at(i, k));
    for (int i = 0; i < n; ++i) std::swap(a.at(i, j), a.at(i, k));
    for (int i = 0; i < n; ++i) std::swap(a.at(j, i), a.at(k, i));
  };
  for (int k = 0; k < n; ++k) {
    if (a.at(k, k).is_zero()) {
      int d = -1;
      for (int i = k + 1; i < n; ++i)
        if (!a.at(i, i).is_zero()) {
          d = i;
          break;
        }
      if (d >= 0) {
        col_swap(k, d);
      } else {
        // all remaining diagonal entries vanish; mix in an off-diagonal one
        int bi = -1, bj = -1;
        for (int i = k; i < n && bi < 0; ++i)
          for (int j = i + 1; j < n; ++j)
            if (!a.at(i, j).is_zero()) {
              bi = i;
              bj = j;
              break;
            }
        if (bi < 0) break;  // remaining block is zero
        if (bi != k) col_swap(k, bi);
        // now a(k, bj) != 0; v_k += a(k,bj) * v_bj gives diagonal 2|a_kbj|^2
        col_add(k, bj, a.at(k, bj));
      }
    }
    GaussianRational d = a.at(k, k);
    for (int j = k + 1; j < n; ++j) {
      if (a.at(k, j).is_zero()) continue;
      col_add(j, k, -(a.at(k, j).conj() / d.conj()));
    }
  }
  HermDiag out;
  out.g = std::move(g);
  out.diag.resize(size_t(n));
  for (int i = 0; i < n; ++i) {
    if (!a.at(i, i).is_real()) throw std::logic_error("hermitian diagonalization produced non-real diagonal");
    out.diag[size_t(i)] = a.at(i, i).re;
  }
  return out;
}

Signature hermitian_signature(const Matrix& h) { return hermitian_diagonalize(h).signature(); }

}  // namespace crsym

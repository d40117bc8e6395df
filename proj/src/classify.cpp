#include "crsym/classify.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "crsym/errors.hpp"
#include "crsym/numbertheory.hpp"

namespace crsym {

namespace {

// ---- small generic helpers -------------------------------------------------

// l(x, y) = x^T H conj(y)
GR lform(const Matrix& h, const Vec& x, const Vec& y) {
  Vec hy = h * vec_conj(y);
  GR s;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * hy[i];
  return s;
}

Vec unit_vec(int n, int i) {
  Vec v(static_cast<size_t>(n));
  v[static_cast<size_t>(i)] = GR(1);
  return v;
}

Matrix from_columns(const std::vector<Vec>& cols) {
  if (cols.empty()) return Matrix(0, 0);
  Matrix m(int(cols[0].size()), int(cols.size()));
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) m.at(i, j) = cols[size_t(j)][size_t(i)];
  return m;
}

// x -> sum x_i basis_i
Vec combo(const std::vector<Vec>& basis, const Vec& x) {
  Vec out(basis.empty() ? 0 : basis[0].size());
  for (size_t k = 0; k < basis.size(); ++k)
    if (!x[k].is_zero()) out = vec_add(out, vec_scale(x[k], basis[k]));
  return out;
}

// Form restricted to span(cols): entries l(c_i, c_j).
Matrix restrict_form(const Matrix& h, const std::vector<Vec>& cols) {
  Matrix b = from_columns(cols);
  return b.transpose() * h * b.conjugate();
}

// Anti-linear operator restricted to an operator-stable span: the matrix M'
// with B M' = M conj(B).
Matrix restrict_antilinear(const Matrix& m, const std::vector<Vec>& cols) {
  Matrix b = from_columns(cols);
  std::optional<Matrix> sol = solve_all(b, m * b.conjugate());
  if (!sol) throw InternalVerification("subspace is not stable under the anti-linear operator");
  return *sol;
}

// Basis of { x : l(x, s) = 0 for all s in span }, working in the coordinates
// of the matrices given (span vectors in the same coordinates).
std::vector<Vec> orth_complement(const Matrix& h, const std::vector<Vec>& span) {
  std::vector<Vec> rows;
  rows.reserve(span.size());
  for (const Vec& s : span) rows.push_back(h * vec_conj(s));
  return nullspace(Matrix::from_rows(rows));
}

// Search pool for chain tops and isotropic vectors: basis vectors, then the
// pairwise combinations e_i + e_j, e_i - e_j, e_i + i e_j.  By polarization
// this pool always contains a vector where a not-identically-zero Hermitian
// or conjugate-symmetric quadratic value is nonzero.
std::vector<Vec> search_pool(int n) {
  std::vector<Vec> pool;
  for (int i = 0; i < n; ++i) pool.push_back(unit_vec(n, i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec a = unit_vec(n, i);
      pool.push_back(vec_add(a, unit_vec(n, j)));
      pool.push_back(vec_sub(a, unit_vec(n, j)));
      pool.push_back(vec_add(a, vec_scale(GR::i(), unit_vec(n, j))));
    }
  return pool;
}

std::string describe(const Rational& r) { return to_string(r); }
std::string describe(const GR& z) { return to_string(z); }

// ---- family-specific constructions ------------------------------------------
//
// All builders work in the coordinates of the matrices they are given and
// return basis columns in those coordinates; callers lift to ambient
// coordinates when classifying a subspace.

struct DefiniteBasis {
  std::vector<Vec> pos, neg;  // l = +1 columns, l = -1 columns
  GR c_op{Rational(1)};       // operator rescale
  bool exact = true;
  std::vector<std::string> residuals;
};

struct SplitBasis {
  std::vector<std::pair<Vec, Vec>> pairs;  // (v, A'v) with l(v,v)=1, l(A'v,A'v)=-1
  GR c_op{Rational(1)};
  bool exact = true;
  std::vector<std::string> residuals;
};

struct OneBasis {
  std::vector<Vec> pos, neg;
  bool exact = true;
  std::vector<std::string> residuals;
};

struct BuiltBlock {
  int k = 1;
  int eps = 1;
  std::vector<Vec> cols;  // k columns in normal-form order
};

struct NilBasis {
  std::vector<BuiltBlock> blocks;
  bool exact = true;
  std::vector<std::string> residuals;
};

// Candidate scale factors c with |c|^2 = q.  The unit ambiguity in c changes
// the fixed space of the rescaled operator and with it the exactness of the
// later diagonal normalization, so several representatives are offered; a
// real one, when it exists, comes first.
std::vector<GR> norm_scale_candidates(const Rational& q) {
  std::vector<GR> out;
  if (std::optional<Rational> s = rational_sqrt(q)) out.push_back(GR(*s));
  if (std::optional<GR> z = norm_split(q)) {
    if (out.empty() || !(*z == out[0])) out.push_back(*z);
    out.push_back(GR::i() * *z);
  }
  return out;
}

// Zero operator: diagonalize the form and scale the diagonal to +-1.
// Complex rescalings are allowed, so each |d| only needs to be a sum of two
// rational squares.
OneBasis build_one_blocks(const Matrix& h) {
  OneBasis out;
  HermDiag hd = hermitian_diagonalize(h);
  for (int j = 0; j < h.cols(); ++j) {
    Vec col = hd.g.col(j);
    Rational d = hd.diag[size_t(j)];
    if (d == 0) throw InternalVerification("degenerate diagonal entry on a nondegenerate form");
    Rational ad = d > 0 ? d : Rational(-d);
    std::vector<GR> cands = norm_scale_candidates(Rational(1) / ad);
    if (!cands.empty()) {
      col = vec_scale(cands[0], col);
    } else {
      out.exact = false;
      out.residuals.push_back("diagonal value " + describe(d) +
                              " is not a sum of two rational squares; the unit rescale of this "
                              "vector has no exact coefficients");
    }
    (d > 0 ? out.pos : out.neg).push_back(col);
  }
  return out;
}

// alpha > 0, operator invertible.  After a rescale c with |c|^2 = 1/alpha
// the operator is an anti-involution; its fixed space is a real form on which
// the form is real symmetric.  Only real rescalings keep vectors inside the
// fixed space, so diagonal entries must be squares of rationals.
DefiniteBasis build_definite_with(const GR& c, const Matrix& h, const Matrix& m);

DefiniteBasis build_definite(const Matrix& h, const Matrix& m, const Rational& alpha) {
  std::vector<GR> cands = norm_scale_candidates(Rational(1) / alpha);
  if (cands.empty()) {
    DefiniteBasis out;
    out.exact = false;
    out.residuals.push_back("cube coefficient " + describe(alpha) +
                            " is not a sum of two rational squares; the involutive rescale of the "
                            "operator has no exact coefficients");
    // The signature still fixes the tag; produce a diagonalizing basis so the
    // reported change of basis at least splits the form by sign.
    OneBasis diag = build_one_blocks(h);
    out.pos = std::move(diag.pos);
    out.neg = std::move(diag.neg);
    out.residuals.insert(out.residuals.end(), diag.residuals.begin(), diag.residuals.end());
    return out;
  }
  DefiniteBasis first;
  for (size_t i = 0; i < cands.size(); ++i) {
    DefiniteBasis db = build_definite_with(cands[i], h, m);
    if (db.exact) return db;
    if (i == 0) first = std::move(db);
  }
  return first;
}

DefiniteBasis build_definite_with(const GR& c, const Matrix& h, const Matrix& m) {
  DefiniteBasis out;
  const int n = h.rows();
  out.c_op = c;
  Matrix mp = c * m;
  if (!(mp * mp.conjugate() == Matrix::identity(n)))
    throw InternalVerification("rescaled operator is not an anti-involution");

  // Fixed space over R: kernel of (realified operator - id).
  std::vector<Vec> fix = nullspace(realify_antilinear(mp) - Matrix::identity(2 * n));
  if (int(fix.size()) != n)
    throw InternalVerification("fixed space of the anti-involution has wrong dimension");
  std::vector<Vec> basis;
  for (const Vec& w : fix) {
    Vec v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (!w[size_t(i)].is_real() || !w[size_t(n + i)].is_real())
        throw InternalVerification("real kernel computation produced complex entries");
      v[size_t(i)] = GR(w[size_t(i)].re, w[size_t(n + i)].re);
    }
    basis.push_back(v);
  }
  if (rank(from_columns(basis)) != n)
    throw InternalVerification("fixed-space vectors do not span over C");

  Matrix hfix = restrict_form(h, basis);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!hfix.at(i, j).is_real())
        throw InternalVerification("form is not real on the fixed space");

  HermDiag hd = hermitian_diagonalize(hfix);
  for (int j = 0; j < n; ++j) {
    Vec col = combo(basis, hd.g.col(j));
    Rational d = hd.diag[size_t(j)];
    if (d == 0) throw InternalVerification("degenerate diagonal entry on a nondegenerate form");
    Rational ad = d > 0 ? d : Rational(-d);
    if (std::optional<Rational> s = rational_sqrt(ad)) {
      col = vec_scale(GR(Rational(1) / *s), col);
    } else {
      out.exact = false;
      out.residuals.push_back("fixed-space diagonal value " + describe(d) +
                              " is not the square of a rational; only real rescalings preserve "
                              "the fixed space, so this vector stays unnormalized");
    }
    (d > 0 ? out.pos : out.neg).push_back(col);
  }
  return out;
}

// alpha < 0, operator invertible.  After a rescale with |c|^2 = -1/alpha the
// operator squares to -id; the space splits into pairs (v, A'v) with
// l(v, v) = 1, l(A'v, A'v) = -1 and l(v, A'v) = 0.
SplitBasis build_split_with(const GR& c, const Matrix& h, const Matrix& m);

SplitBasis build_split(const Matrix& h, const Matrix& m, const Rational& alpha) {
  std::vector<GR> cands = norm_scale_candidates(Rational(-1) / alpha);
  if (cands.empty()) {
    SplitBasis out;
    out.exact = false;
    out.residuals.push_back("cube coefficient " + describe(alpha) +
                            " is not the negative of a sum of two rational squares; the "
                            "quaternionic rescale of the operator has no exact coefficients");
    return out;
  }
  SplitBasis first;
  for (size_t i = 0; i < cands.size(); ++i) {
    SplitBasis sb = build_split_with(cands[i], h, m);
    if (sb.exact) return sb;
    if (i == 0) first = std::move(sb);
  }
  return first;
}

SplitBasis build_split_with(const GR& c, const Matrix& h, const Matrix& m) {
  SplitBasis out;
  const int n = h.rows();
  out.c_op = c;
  Matrix mp = c * m;
  if (!(mp * mp.conjugate() == GR(Rational(-1)) * Matrix::identity(n)))
    throw InternalVerification("rescaled operator does not square to minus the identity");

  std::vector<Vec> cur;  // current orthogonal complement, ambient coordinates
  for (int i = 0; i < n; ++i) cur.push_back(unit_vec(n, i));
  while (!cur.empty()) {
    Matrix hr = restrict_form(h, cur);
    Matrix mr = restrict_antilinear(mp, cur);
    Matrix omega = mr.transpose() * hr;  // pairing l(A'x, y) = conj(x)^T omega conj(y)
    std::optional<Vec> found;
    for (const Vec& cand : search_pool(int(cur.size()))) {
      Vec cc = vec_conj(cand);
      Vec oc = omega * cc;
      GR qo;
      for (size_t i = 0; i < cc.size(); ++i) qo += cc[i] * oc[i];
      if (!qo.is_zero()) continue;
      if (lform(hr, cand, cand).is_zero()) continue;
      found = cand;
      break;
    }
    if (!found) {
      out.exact = false;
      out.residuals.push_back(
          "no rational vector in the search pool is isotropic for the pairing with nonzero "
          "length; the pair basis is incomplete");
      out.pairs.clear();
      return out;
    }
    Vec v = *found;
    GR len = lform(hr, v, v);
    if (!len.is_real()) throw InternalVerification("length is not real");
    if (len.re < 0) {
      v = mr * vec_conj(v);  // switch to A'v, which has positive length
      len = lform(hr, v, v);
      if (!len.is_real() || len.re <= 0) throw InternalVerification("partner length is not positive");
    }
    if (std::optional<GR> cv = norm_split(Rational(1) / len.re)) {
      v = vec_scale(*cv, v);
    } else {
      out.exact = false;
      out.residuals.push_back("pair length " + describe(len.re) +
                              " is not a sum of two rational squares; this pair stays "
                              "unnormalized");
    }
    Vec w = mr * vec_conj(v);
    out.pairs.emplace_back(combo(cur, v), combo(cur, w));
    std::vector<Vec> comp = orth_complement(hr, {v, w});
    std::vector<Vec> next;
    for (const Vec& x : comp) next.push_back(combo(cur, x));
    cur = std::move(next);
  }
  return out;
}

// alpha == 0: the operator is nilpotent of order <= 3.  Split off
// form-compatible chains of length 3, then 2, then diagonalize what remains.
NilBasis build_nilpotent(const Matrix& h, const Matrix& m) {
  NilBasis out;
  const int n = h.rows();
  std::vector<Vec> cur;
  for (int i = 0; i < n; ++i) cur.push_back(unit_vec(n, i));

  while (!cur.empty()) {
    Matrix hr = restrict_form(h, cur);
    Matrix mr = restrict_antilinear(m, cur);
    Matrix a2 = mr * mr.conjugate();  // matrix of the square of the operator

    if (!a2.is_zero()) {
      // Length-3 chain.  q(x) = l(A^2 x, x) = l(Ax, Ax) is a Hermitian value;
      // a pool vector with q != 0 exists because q vanishes identically only
      // when A^2 does.
      std::optional<Vec> top;
      for (const Vec& cand : search_pool(int(cur.size()))) {
        if (!lform(hr, a2 * cand, cand).is_zero()) {
          top = cand;
          break;
        }
      }
      if (!top) throw InternalVerification("no chain top found although the operator square is nonzero");
      Vec a1 = *top;
      Vec aa2 = mr * vec_conj(a1);
      Vec aa3 = mr * vec_conj(aa2);
      GR epst = lform(hr, aa2, aa2);
      if (!epst.is_real() || epst.is_zero()) throw InternalVerification("chain self-pairing is not a nonzero real");
      // Corrections: kill l(b1, b2) with a multiple of a2, then l(b1, b1)
      // with a real multiple of a3.  The remaining Gram entries vanish
      // identically for a nilpotent self-adjoint operator.
      GR two_eps = GR(epst.re * 2);
      GR alpha2 = -lform(hr, a1, aa2) / two_eps;
      Vec t = vec_add(a1, vec_scale(alpha2, aa2));
      GR rho = lform(hr, t, t);
      if (!rho.is_real()) throw InternalVerification("corrected chain top has non-real self-pairing");
      Vec b1 = vec_add(t, vec_scale(GR(-rho.re / (2 * epst.re)), aa3));
      int eps = epst.re > 0 ? 1 : -1;
      Rational aeps = epst.re > 0 ? epst.re : Rational(-epst.re);
      std::vector<GR> cands = norm_scale_candidates(Rational(1) / aeps);
      if (!cands.empty()) {
        b1 = vec_scale(cands[0], b1);
      } else {
        out.exact = false;
        out.residuals.push_back("chain pairing value " + describe(epst.re) +
                                " is not a sum of two rational squares; this length-3 block "
                                "stays unnormalized");
      }
      Vec b2 = mr * vec_conj(b1);
      Vec b3 = mr * vec_conj(b2);
      if (!lform(hr, b1, b1).is_zero() || !lform(hr, b1, b2).is_zero() ||
          !lform(hr, b2, b3).is_zero() || !lform(hr, b3, b3).is_zero() ||
          !(lform(hr, b2, b2) == lform(hr, b1, b3)))
        throw InternalVerification("length-3 chain Gram matrix is not in normal form");
      // Normal-form order is bottom-first: (A^2 b, A b, b).
      out.blocks.push_back({3, eps, {combo(cur, b3), combo(cur, b2), combo(cur, b1)}});
      std::vector<Vec> comp = orth_complement(hr, {b1, b2, b3});
      std::vector<Vec> next;
      for (const Vec& x : comp) next.push_back(combo(cur, x));
      cur = std::move(next);
      continue;
    }

    if (!mr.is_zero()) {
      // Length-2 chain.  s(x) = l(Ax, x) is a conjugate-symmetric quadratic
      // value; it vanishes identically only when A does.
      Matrix omega = mr.transpose() * hr;
      std::optional<Vec> top;
      for (const Vec& cand : search_pool(int(cur.size()))) {
        Vec cc = vec_conj(cand);
        Vec oc = omega * cc;
        GR s;
        for (size_t i = 0; i < cc.size(); ++i) s += cc[i] * oc[i];
        if (!s.is_zero()) {
          top = cand;
          break;
        }
      }
      if (!top) throw InternalVerification("no chain top found although the operator is nonzero");
      Vec a1 = *top;
      Vec u = mr * vec_conj(a1);
      GR v = lform(hr, u, a1);
      if (v.is_zero()) throw InternalVerification("length-2 chain pairing vanished");
      GR rho = lform(hr, a1, a1);
      if (!rho.is_real()) throw InternalVerification("self-pairing is not real");
      Vec t = vec_add(a1, vec_scale(-rho / (GR(2) * v), u));
      if (!lform(hr, t, t).is_zero() || !(mr * vec_conj(t) == u) || !(lform(hr, u, t) == v))
        throw InternalVerification("length-2 chain Gram matrix is not in normal form");
      // Normalize the pairing: scaling t by c multiplies it by conj(c)^2, so
      // +1 is reachable exactly when 1/v or -1/v is a square in Q(i) (the two
      // cases differ by the exact unit i).
      bool scaled = false;
      if (std::optional<GR> w = gaussian_sqrt(GR(1) / v)) {
        t = vec_scale(w->conj(), t);
        scaled = true;
      } else if (std::optional<GR> w2 = gaussian_sqrt(GR(Rational(-1)) / v)) {
        t = vec_scale((GR::i() * *w2).conj(), t);
        scaled = true;
      }
      if (scaled) {
        u = mr * vec_conj(t);
        if (!(lform(hr, u, t) == GR(1))) throw InternalVerification("normalized pairing is not 1");
      } else {
        out.exact = false;
        out.residuals.push_back("chain pairing value " + describe(v) +
                                " is not a square in Q(i) up to sign; this length-2 block "
                                "stays unnormalized");
        u = mr * vec_conj(t);
      }
      out.blocks.push_back({2, 1, {combo(cur, u), combo(cur, t)}});
      std::vector<Vec> comp = orth_complement(hr, {t, u});
      std::vector<Vec> next;
      for (const Vec& x : comp) next.push_back(combo(cur, x));
      cur = std::move(next);
      continue;
    }

    // Operator vanishes on what remains: size-1 blocks.
    OneBasis ones = build_one_blocks(hr);
    out.exact = out.exact && ones.exact;
    out.residuals.insert(out.residuals.end(), ones.residuals.begin(), ones.residuals.end());
    for (const Vec& x : ones.pos) out.blocks.push_back({1, 1, {combo(cur, x)}});
    for (const Vec& x : ones.neg) out.blocks.push_back({1, -1, {combo(cur, x)}});
    cur.clear();
  }
  return out;
}

// Sort key: size descending, +1 before -1; lexicographic comparison of the
// resulting sequences picks the canonical representative.
std::vector<std::pair<int, int>> block_key(const std::vector<BuiltBlock>& blocks) {
  std::vector<std::pair<int, int>> key;
  key.reserve(blocks.size());
  for (const BuiltBlock& b : blocks) key.emplace_back(-b.k, -b.eps);
  std::sort(key.begin(), key.end());
  return key;
}

void sort_blocks(std::vector<BuiltBlock>& blocks) {
  std::stable_sort(blocks.begin(), blocks.end(), [](const BuiltBlock& a, const BuiltBlock& b) {
    return std::make_pair(-a.k, -a.eps) < std::make_pair(-b.k, -b.eps);
  });
}

// Negate the form wholesale: odd blocks flip sign; even blocks restore their
// +1 pairing through the exact unit scaling (i, -i) on (bottom, top).
void flip_blocks(std::vector<BuiltBlock>& blocks) {
  for (BuiltBlock& b : blocks) {
    if (b.k % 2 == 1) {
      b.eps = -b.eps;
    } else {
      b.cols[0] = vec_scale(GR::i(), b.cols[0]);
      b.cols[1] = vec_scale(-GR::i(), b.cols[1]);
    }
  }
}

struct Built {
  FamilyTag tag;
  std::vector<Vec> cols;
  Rational l_scale{1};
  GR a_scale{Rational(1)};
  bool exact = true;
  std::vector<std::string> residuals;
};

Built assemble_definite(DefiniteBasis db) {
  Built b;
  int p = int(db.pos.size()), q = int(db.neg.size());
  if (q > p) {
    std::swap(db.pos, db.neg);
    std::swap(p, q);
    b.l_scale = -1;
  }
  b.tag = TagDefinite{p, q};
  b.cols = std::move(db.pos);
  b.cols.insert(b.cols.end(), db.neg.begin(), db.neg.end());
  b.a_scale = db.c_op;
  b.exact = db.exact;
  b.residuals = std::move(db.residuals);
  return b;
}

Built assemble_split(SplitBasis sb, int n) {
  Built b;
  b.tag = TagSplit{n / 2};
  if (sb.pairs.empty() && n > 0) {
    // Fallback when no exact pair basis exists: identity columns.
    for (int i = 0; i < n; ++i) b.cols.push_back(unit_vec(n, i));
  } else {
    for (const auto& [v, w] : sb.pairs) b.cols.push_back(v);
    for (const auto& [v, w] : sb.pairs) b.cols.push_back(w);
  }
  b.a_scale = sb.c_op;
  b.exact = sb.exact;
  b.residuals = std::move(sb.residuals);
  return b;
}

Built assemble_nilpotent(NilBasis nb) {
  Built b;
  std::vector<BuiltBlock> flipped = nb.blocks;
  flip_blocks(flipped);
  if (block_key(flipped) < block_key(nb.blocks)) {
    nb.blocks = std::move(flipped);
    b.l_scale = -1;
  }
  sort_blocks(nb.blocks);
  TagNilpotent tag;
  for (BuiltBlock& blk : nb.blocks) {
    tag.blocks.push_back({blk.k, blk.eps});
    for (Vec& c : blk.cols) b.cols.push_back(std::move(c));
  }
  b.tag = std::move(tag);
  b.exact = nb.exact;
  b.residuals = std::move(nb.residuals);
  return b;
}

}  // namespace

// ---- tag utilities -----------------------------------------------------------

std::string to_string(const FamilyTag& tag) {
  std::ostringstream os;
  if (const auto* d = std::get_if<TagDefinite>(&tag)) {
    os << "I(p=" << d->p << ",q=" << d->q << ")";
  } else if (const auto* s = std::get_if<TagSplit>(&tag)) {
    os << "II(p=" << s->p << ")";
  } else if (const auto* nl = std::get_if<TagNilpotent>(&tag)) {
    os << "nilpotent(";
    for (size_t i = 0; i < nl->blocks.size(); ++i) {
      if (i) os << ",";
      os << nl->blocks[i].k << (nl->blocks[i].eps > 0 ? "+" : "-");
    }
    os << ")";
  } else {
    const auto& w = std::get<TagNonNilpotent>(tag);
    os << "non_nilpotent(p=" << w.p << ",q=" << w.q << ",p1=" << w.p1 << ",q1=" << w.q1
       << ",alpha" << (w.alpha_sign > 0 ? ">0" : "<0") << ")";
  }
  return os.str();
}

SymbolInput emit_normal_form(const FamilyTag& tag) {
  SymbolInput out;
  if (const auto* d = std::get_if<TagDefinite>(&tag)) {
    if (d->p < 0 || d->q < 0 || d->p + d->q < 1) throw MalformedTag("signature counts must be nonnegative with p + q >= 1");
    int n = d->p + d->q;
    Matrix h(n, n), m = Matrix::identity(n);
    for (int i = 0; i < n; ++i) h.at(i, i) = GR(i < d->p ? 1 : -1);
    out.H = h;
    out.Ms = {m};
    return out;
  }
  if (const auto* s = std::get_if<TagSplit>(&tag)) {
    if (s->p < 1) throw MalformedTag("split tag needs p >= 1");
    int n = 2 * s->p;
    Matrix h(n, n), m(n, n);
    for (int a = 0; a < s->p; ++a) {
      h.at(a, a) = GR(1);
      h.at(s->p + a, s->p + a) = GR(-1);
      m.at(s->p + a, a) = GR(1);
      m.at(a, s->p + a) = GR(-1);
    }
    out.H = h;
    out.Ms = {m};
    return out;
  }
  if (const auto* nl = std::get_if<TagNilpotent>(&tag)) {
    if (nl->blocks.empty()) throw MalformedTag("nilpotent tag needs at least one block");
    int n = 0;
    bool has_big = false;
    for (const NilBlock& b : nl->blocks) {
      if (b.k < 1 || b.k > 3) throw MalformedTag("block sizes must be 1, 2, or 3");
      if (b.eps != 1 && b.eps != -1) throw MalformedTag("block signs must be +1 or -1");
      if (b.k > 1) has_big = true;
      n += b.k;
    }
    if (!has_big)
      throw MalformedTag("all blocks have size 1, so the operator vanishes and the symbol is degenerate");
    Matrix h(n, n), m(n, n);
    int off = 0;
    for (const NilBlock& b : nl->blocks) {
      for (int i = 0; i < b.k; ++i) h.at(off + i, off + b.k - 1 - i) = GR(b.eps);
      for (int i = 0; i + 1 < b.k; ++i) m.at(off + i, off + i + 1) = GR(1);
      off += b.k;
    }
    out.H = h;
    out.Ms = {m};
    return out;
  }
  const auto& w = std::get<TagNonNilpotent>(tag);
  if (w.alpha_sign != 1 && w.alpha_sign != -1) throw MalformedTag("alpha_sign must be +1 or -1");
  if (w.p1 < 0 || w.q1 < 0 || w.p1 > w.p || w.q1 > w.q)
    throw MalformedTag("restricted signature must fit inside the total signature");
  int n1 = w.p1 + w.q1, nz = (w.p - w.p1) + (w.q - w.q1);
  if (n1 < 1) throw MalformedTag("the invertible part must be nonzero");
  if (nz < 1) throw MalformedTag("the kernel part must be nonzero; use a definite or split tag instead");
  if (w.alpha_sign < 0 && w.p1 != w.q1)
    throw MalformedTag("a negative cube coefficient forces a balanced restricted signature");
  int n = n1 + nz;
  Matrix h(n, n), m(n, n);
  for (int i = 0; i < w.p1; ++i) h.at(i, i) = GR(1);
  for (int i = 0; i < w.q1; ++i) h.at(w.p1 + i, w.p1 + i) = GR(-1);
  for (int i = 0; i < w.p - w.p1; ++i) h.at(n1 + i, n1 + i) = GR(1);
  for (int i = 0; i < w.q - w.q1; ++i) h.at(n1 + (w.p - w.p1) + i, n1 + (w.p - w.p1) + i) = GR(-1);
  if (w.alpha_sign > 0) {
    for (int i = 0; i < n1; ++i) m.at(i, i) = GR(1);
  } else {
    for (int a = 0; a < w.p1; ++a) {
      m.at(w.p1 + a, a) = GR(1);
      m.at(a, w.p1 + a) = GR(-1);
    }
  }
  out.H = h;
  out.Ms = {m};
  return out;
}

// ---- classification -----------------------------------------------------------

Classification classify(const SymbolInput& in) {
  SymbolInput sym = validate_symbol(in);
  if (sym.r() != 1)
    throw KernelRankUnsupported("classification is implemented for kernel rank 1, got rank " +
                                std::to_string(sym.r()));
  RegularityReport reg = check_regular(sym);
  if (!reg.regular) throw NotRegular("symbol is not regular: " + reg.witness);
  if (!reg.has_alpha) throw InternalVerification("regular rank-1 symbol without cube coefficient");

  const Matrix& h = sym.H;
  const Matrix& m = sym.Ms[0];
  const int n = sym.n();
  const Rational alpha = reg.alpha;

  Classification out;
  out.invariants.alpha = alpha;
  out.invariants.alpha_sign = alpha > 0 ? 1 : (alpha < 0 ? -1 : 0);
  out.invariants.sig_l = hermitian_signature(h);
  out.invariants.rank_A = rank(m);
  out.invariants.rank_A2 = rank(m * m.conjugate());

  Built built;
  if (alpha == 0) {
    NilBasis nb = build_nilpotent(h, m);
    int s3 = 0, s2 = 0, s1 = 0;
    for (const BuiltBlock& b : nb.blocks) (b.k == 3 ? s3 : (b.k == 2 ? s2 : s1)) += 1;
    if (out.invariants.rank_A2 != s3 || out.invariants.rank_A != s2 + 2 * s3 ||
        s1 + 2 * s2 + 3 * s3 != n)
      throw InternalVerification("chain decomposition disagrees with the rank invariants");
    built = assemble_nilpotent(std::move(nb));
  } else if (out.invariants.rank_A == n) {
    if (alpha > 0) {
      built = assemble_definite(build_definite(h, m, alpha));
      const auto& t = std::get<TagDefinite>(built.tag);
      Signature want{t.p, t.q, 0};
      Signature flipped{t.q, t.p, 0};
      if (!(out.invariants.sig_l == (built.l_scale > 0 ? want : flipped)))
        throw InternalVerification("constructed signature disagrees with the form signature");
    } else {
      if (n % 2 != 0)
        throw InternalVerification("invertible operator with negative cube coefficient on odd dimension");
      if (!(out.invariants.sig_l == Signature{n / 2, n / 2, 0}))
        throw InternalVerification("split operator requires a balanced form signature");
      built = assemble_split(build_split(h, m, alpha), n);
    }
  } else {
    // Mixed case: P = A^2 / alpha is an l-self-adjoint projector; the form
    // splits orthogonally into its image W (operator invertible) and kernel Z
    // (operator zero).
    Matrix p = GR(Rational(1) / alpha) * (m * m.conjugate());
    if (!(p * p == p)) throw InternalVerification("normalized operator square is not a projector");
    std::vector<Vec> zbase = nullspace(p);
    RrefResult pr = rref(p);
    std::vector<Vec> wbase;
    for (int j : pr.pivots) wbase.push_back(p.col(j));
    if (wbase.empty() || zbase.empty() || int(wbase.size() + zbase.size()) != n)
      throw InternalVerification("projector image and kernel do not split the space");
    for (const Vec& z : zbase)
      if (!vec_is_zero(m * vec_conj(z)))
        throw InternalVerification("operator does not vanish on the projector kernel");
    for (const Vec& w : wbase)
      for (const Vec& z : zbase)
        if (!lform(h, w, z).is_zero() || !lform(h, z, w).is_zero())
          throw InternalVerification("projector image and kernel are not orthogonal");

    Matrix hw = restrict_form(h, wbase);
    Matrix mw = restrict_antilinear(m, wbase);
    Matrix hz = restrict_form(h, zbase);

    OneBasis zb = build_one_blocks(hz);
    int zp = int(zb.pos.size()), zq = int(zb.neg.size());

    std::vector<Vec> wcols_pos, wcols_neg;    // alpha > 0 layout
    std::vector<std::pair<Vec, Vec>> wpairs;  // alpha < 0 layout
    bool wfallback = false;                   // alpha < 0 without an exact pair basis
    GR c_op{Rational(1)};
    bool exact = true;
    std::vector<std::string> residuals;
    int p1 = 0, q1 = 0;
    if (alpha > 0) {
      DefiniteBasis db = build_definite(hw, mw, alpha);
      p1 = int(db.pos.size());
      q1 = int(db.neg.size());
      for (const Vec& x : db.pos) wcols_pos.push_back(combo(wbase, x));
      for (const Vec& x : db.neg) wcols_neg.push_back(combo(wbase, x));
      c_op = db.c_op;
      exact = db.exact;
      residuals = std::move(db.residuals);
    } else {
      if (int(wbase.size()) % 2 != 0)
        throw InternalVerification("negative cube coefficient with odd invertible part");
      SplitBasis sb = build_split(hw, mw, alpha);
      p1 = q1 = int(wbase.size()) / 2;
      wfallback = sb.pairs.empty();
      for (const auto& [v, w] : sb.pairs) wpairs.emplace_back(combo(wbase, v), combo(wbase, w));
      c_op = sb.c_op;
      exact = sb.exact;
      residuals = std::move(sb.residuals);
    }

    int tp = p1 + zp, tq = q1 + zq;
    Rational l_scale(1);
    if (tq > tp || (tq == tp && q1 > p1)) {
      l_scale = -1;
      std::swap(tp, tq);
      if (alpha > 0) {
        std::swap(p1, q1);
        std::swap(wcols_pos, wcols_neg);
      } else {
        for (auto& [v, w] : wpairs) {
          Vec nv = w, nw = vec_scale(GR(Rational(-1)), v);
          v = std::move(nv);
          w = std::move(nw);
        }
      }
      std::swap(zp, zq);
      std::swap(zb.pos, zb.neg);
    }

    built.tag = TagNonNilpotent{tp, tq, p1, q1, alpha > 0 ? 1 : -1};
    built.l_scale = l_scale;
    built.a_scale = c_op;
    built.exact = exact && zb.exact;
    built.residuals = std::move(residuals);
    built.residuals.insert(built.residuals.end(), zb.residuals.begin(), zb.residuals.end());
    if (alpha > 0) {
      built.cols = std::move(wcols_pos);
      built.cols.insert(built.cols.end(), wcols_neg.begin(), wcols_neg.end());
    } else if (wfallback) {
      for (const Vec& x : wbase) built.cols.push_back(x);
    } else {
      for (const auto& [v, w] : wpairs) built.cols.push_back(v);
      for (const auto& [v, w] : wpairs) built.cols.push_back(w);
    }
    for (const Vec& x : zb.pos) built.cols.push_back(combo(zbase, x));
    for (const Vec& x : zb.neg) built.cols.push_back(combo(zbase, x));
  }

  Matrix g = from_columns(built.cols);
  if (g.rows() != n || g.cols() != n || rank(g) != n)
    throw InternalVerification("change of basis is not invertible");
  out.change.g = g;
  out.change.l_scale = built.l_scale;
  out.change.a_scale = built.a_scale;
  out.change.exact = built.exact;
  out.change.residuals = std::move(built.residuals);
  out.tag = std::move(built.tag);

  SymbolInput normal = emit_normal_form(out.tag);
  Matrix ht = GR(out.change.l_scale) * (g.transpose() * h * g.conjugate());
  std::optional<Matrix> gi = inverse(g);
  if (!gi) throw InternalVerification("change of basis is not invertible");
  Matrix mt = out.change.a_scale * (*gi * m * g.conjugate());
  out.verified = (ht == normal.H) && (mt == normal.Ms[0]);
  if (out.change.exact && !out.verified)
    throw InternalVerification("witness claimed exact but the transported symbol is not the normal form");
  return out;
}

bool equivalent(const SymbolInput& a, const SymbolInput& b) {
  return classify(a).tag == classify(b).tag;
}

}  // namespace crsym

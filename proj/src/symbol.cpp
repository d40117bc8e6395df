#include "crsym/symbol.hpp"

#include <sstream>

namespace crsym {

namespace {

Vec vec_of(const Matrix& m) {
  Vec out;
  out.reserve(std::size_t(m.rows()) * std::size_t(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.push_back(m.at(i, j));
  return out;
}

Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(int(rows), int(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m.at(int(i), int(j)) = cols[j][i];
  return m;
}

// Residual of w against the row space of a reduced row echelon form: zero iff
// w lies in the span of the original rows.
Vec span_residual(Vec w, const RrefResult& R) {
  for (std::size_t j = 0; j < R.pivots.size(); ++j) {
    GR c = w[R.pivots[j]];
    if (c == GR(0)) continue;
    for (std::size_t k = 0; k < w.size(); ++k) w[k] -= c * R.m.at(j, k);
  }
  return w;
}

Vec derivation_flat(const Derivation& d) {
  Vec out = vec_of(d.X);
  Vec y = vec_of(d.Y);
  out.insert(out.end(), y.begin(), y.end());
  out.push_back(d.lambda);
  return out;
}

// Matrix Y of the action on g_{-1,-1} forced by (X, lambda):
// Y = lambda I - H^{-1} X^T H.
Matrix y_of(const Matrix& Hinv, const Matrix& H, const Matrix& X, const GR& lambda) {
  const int n = H.rows();
  Matrix Y = Hinv * X.transpose() * H;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Y.at(i, j) = -Y.at(i, j);
      if (i == j) Y.at(i, j) += lambda;
    }
  return Y;
}

}  // namespace

SymbolInput validate_symbol(const SymbolInput& in) {
  const std::size_t n = std::size_t(in.H.rows());
  if (n == 0 || std::size_t(in.H.cols()) != n) throw MalformedInput("hermitian matrix must be square and nonempty");
  if (in.Ms.empty()) throw MalformedInput("at least one anti-linear operator is required");
  if (!is_hermitian(in.H)) throw NotHermitian("hermitian matrix fails H = conj(H)^T");
  if (std::size_t(rank(in.H)) != n) throw DegenerateLeviForm("hermitian form is degenerate");
  for (std::size_t k = 0; k < in.Ms.size(); ++k) {
    const Matrix& M = in.Ms[k];
    if (std::size_t(M.rows()) != n || std::size_t(M.cols()) != n) {
      std::ostringstream os;
      os << "operator " << (k + 1) << " is not " << n << "x" << n;
      throw MalformedInput(os.str());
    }
    Matrix S = M.transpose() * in.H;
    if (!(S == S.transpose())) {
      std::ostringstream os;
      os << "operator " << (k + 1) << " is not self-adjoint (M^T H not symmetric)";
      throw NotSelfAdjoint(os.str());
    }
  }
  // Injectivity of v -> sum v_k A_k: the flattened operators must be linearly
  // independent.
  std::vector<Vec> rows;
  for (const Matrix& M : in.Ms) rows.push_back(vec_of(M));
  Matrix stacked = Matrix::from_rows(rows);
  if (std::size_t(rank(stacked)) != in.Ms.size()) {
    // Witness vector: a dependency among the operators.
    std::vector<Vec> dep = nullspace(stacked.transpose());
    std::ostringstream os;
    os << "operators are linearly dependent; kernel vector (";
    if (!dep.empty()) {
      for (std::size_t i = 0; i < dep[0].size(); ++i) {
        if (i) os << ", ";
        os << to_string(dep[0][i]);
      }
    }
    os << ")";
    throw NotTwoNondegenerate(os.str());
  }
  return in;
}

std::vector<Derivation> compute_g00(const Matrix& H, const std::vector<Matrix>& Ms) {
  const std::size_t n = std::size_t(H.rows());
  const std::size_t unknowns = n * n + 1;
  std::optional<Matrix> Hinv_ = inverse(H);
  if (!Hinv_) throw DegenerateLeviForm("hermitian form is degenerate");
  const Matrix& Hinv = *Hinv_;
  std::vector<Matrix> cMs;
  for (const Matrix& M : Ms) cMs.push_back(M.conjugate());

  std::vector<Vec> mvecs, cvecs;
  for (const Matrix& M : Ms) mvecs.push_back(vec_of(M));
  for (const Matrix& C : cMs) cvecs.push_back(vec_of(C));
  RrefResult RM = rref(Matrix::from_rows(mvecs));
  RrefResult RC = rref(Matrix::from_rows(cvecs));

  // The conditions "X M_k - M_k Y in span{M_j}" and
  // "Y conj(M_k) - conj(M_k) X in span{conj(M_j)}" are linear in (X, lambda);
  // evaluate them on each elementary unknown to assemble the constraint
  // matrix, then take its nullspace.
  auto conditions = [&](const Matrix& X, const GR& lambda) {
    Matrix Y = y_of(Hinv, H, X, lambda);
    Vec out;
    for (std::size_t k = 0; k < Ms.size(); ++k) {
      Vec r1 = span_residual(vec_of(X * Ms[k] - Ms[k] * Y), RM);
      out.insert(out.end(), r1.begin(), r1.end());
      Vec r2 = span_residual(vec_of(Y * cMs[k] - cMs[k] * X), RC);
      out.insert(out.end(), r2.begin(), r2.end());
    }
    return out;
  };

  std::vector<Vec> cols;
  cols.reserve(unknowns);
  for (std::size_t rho = 0; rho < n; ++rho)
    for (std::size_t sigma = 0; sigma < n; ++sigma) {
      Matrix X(n, n);
      X.at(rho, sigma) = GR(1);
      cols.push_back(conditions(X, GR(0)));
    }
  cols.push_back(conditions(Matrix(n, n), GR(1)));

  Matrix constraint = from_columns(cols[0].size(), cols);
  std::vector<Vec> null = nullspace(constraint);

  std::vector<Derivation> basis;
  for (const Vec& z : null) {
    Matrix X(n, n);
    for (std::size_t rho = 0; rho < n; ++rho)
      for (std::size_t sigma = 0; sigma < n; ++sigma) X.at(rho, sigma) = z[rho * n + sigma];
    GR lambda = z[n * n];
    basis.push_back(Derivation{X, y_of(Hinv, H, X, lambda), lambda});
  }
  return basis;
}

std::optional<Vec> express_in_g00(const std::vector<Derivation>& basis, const Derivation& d) {
  Vec target = derivation_flat(d);
  if (basis.empty()) {
    for (const GR& c : target)
      if (!(c == GR(0))) return std::nullopt;
    return Vec{};
  }
  std::vector<Vec> cols;
  for (const Derivation& b : basis) cols.push_back(derivation_flat(b));
  return solve(from_columns(target.size(), cols), target);
}

RegularityReport check_regular(const SymbolInput& input) {
  SymbolInput in = validate_symbol(input);
  std::vector<Derivation> basis = compute_g00(in.H, in.Ms);
  const std::size_t r = in.Ms.size();

  RegularityReport rep;
  rep.regular = true;
  for (std::size_t k = 0; k < r && rep.regular; ++k)
    for (std::size_t m = 0; m < r && rep.regular; ++m) {
      Matrix cMm = in.Ms[m].conjugate();
      Derivation d{in.Ms[k] * cMm, -(cMm * in.Ms[k]), GR(0)};
      if (!express_in_g00(basis, d)) {
        rep.regular = false;
        std::ostringstream os;
        os << "composite of operators (" << (k + 1) << ", " << (m + 1)
           << ") is not a weight-(0,0) derivation of the symbol";
        rep.witness = os.str();
      }
    }

  if (r == 1) {
    const Matrix& M = in.Ms[0];
    Matrix P = M * M.conjugate() * M;
    // M is nonzero (validated), so proportionality determines alpha uniquely.
    std::size_t pi = 0, pj = 0;
    bool found = false;
    for (int i = 0; i < M.rows() && !found; ++i)
      for (int j = 0; j < M.cols() && !found; ++j)
        if (!(M.at(i, j) == GR(0))) {
          pi = std::size_t(i);
          pj = std::size_t(j);
          found = true;
        }
    GR alpha = P.at(int(pi), int(pj)) / M.at(int(pi), int(pj));
    bool cubic = true;
    std::string why;
    Matrix scaled = M;
    for (int i = 0; i < M.rows(); ++i)
      for (int j = 0; j < M.cols(); ++j) scaled.at(i, j) = alpha * M.at(i, j);
    if (!(P == scaled)) {
      cubic = false;
      why = "cube of the anti-linear operator is not proportional to the operator";
    } else if (!(alpha.im == Rational(0))) {
      cubic = false;
      why = "proportionality constant of the operator cube is not real";
    }
    if (cubic != rep.regular)
      throw InternalVerification("regularity criteria disagree (derivation-span test vs cubic identity)");
    if (!cubic && rep.witness.empty()) rep.witness = why;
    rep.has_alpha = rep.regular;
    if (rep.regular) rep.alpha = alpha.re;
  }
  return rep;
}

RegularityReport check_regular(const SymbolAlgebra& sym) { return check_regular(sym.meta); }

SymbolAlgebra build_symbol(const SymbolInput& input) {
  SymbolInput in = validate_symbol(input);
  const std::size_t n = std::size_t(in.H.rows());
  const std::size_t r = in.Ms.size();
  std::vector<Matrix> cMs;
  for (const Matrix& M : in.Ms) cMs.push_back(M.conjugate());

  std::vector<Derivation> g00 = compute_g00(in.H, in.Ms);
  const std::size_t g = g00.size();

  const BiWeight wE0{-2, 0}, wEbar{-1, -1}, wE{-1, 1}, wFbar{0, -2}, wD{0, 0}, wF{0, 2};

  BigradedAlgebra a;
  auto labels = [](const std::string& stem, std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
    return out;
  };
  a.add_component(wE0, 1, {"e0"});
  a.add_component(wEbar, n, labels("ebar", n));
  a.add_component(wE, n, labels("e", n));
  a.add_component(wFbar, r, labels("fbar", r));
  a.add_component(wD, g, labels("d", g));
  a.add_component(wF, r, labels("f", r));

  auto single = [&](const BiWeight& w, std::size_t idx, const GR& c, std::size_t dim) {
    Element el;
    Vec v(dim, GR(0));
    v[idx] = c;
    el.parts[w] = v;
    return el;
  };

  // Coefficients of W in the span of the operators (or their conjugates).
  std::vector<Vec> mcols, ccols;
  for (const Matrix& M : in.Ms) mcols.push_back(vec_of(M));
  for (const Matrix& C : cMs) ccols.push_back(vec_of(C));
  Matrix mspan = from_columns(n * n, mcols);
  Matrix cspan = from_columns(n * n, ccols);
  auto in_operator_span = [&](const Matrix& W, bool conjugated) -> Vec {
    std::optional<Vec> c = solve(conjugated ? cspan : mspan, vec_of(W));
    if (!c)
      throw NotRegular("bracket of a weight-(0,0) derivation with an operator leaves the operator span");
    return *c;
  };
  auto in_g00_span = [&](const Derivation& d, const char* what) -> Vec {
    std::optional<Vec> c = express_in_g00(g00, d);
    if (!c) throw NotRegular(std::string(what) + " is not a weight-(0,0) derivation of the symbol");
    return *c;
  };

  // [e0, d_j] = -lambda_j e0.
  for (std::size_t j = 0; j < g; ++j)
    if (!(g00[j].lambda == GR(0))) a.set_bracket(wE0, 0, wD, j, single(wE0, 0, -g00[j].lambda, 1));

  // [ebar_a, e_b] = -H(b,a) e0.
  for (std::size_t al = 0; al < n; ++al)
    for (std::size_t be = 0; be < n; ++be)
      if (!(in.H.at(be, al) == GR(0)))
        a.set_bracket(wEbar, al, wE, be, single(wE0, 0, -in.H.at(be, al), 1));

  // [ebar_a, d_j] = -sum_g Y_j(g,a) ebar_g;  [e_b, d_j] = -sum_g X_j(g,b) e_g.
  for (std::size_t j = 0; j < g; ++j)
    for (std::size_t col = 0; col < n; ++col) {
      Element ey, ex;
      Vec vy(n, GR(0)), vx(n, GR(0));
      bool nzy = false, nzx = false;
      for (std::size_t row = 0; row < n; ++row) {
        if (!(g00[j].Y.at(row, col) == GR(0))) {
          vy[row] = -g00[j].Y.at(row, col);
          nzy = true;
        }
        if (!(g00[j].X.at(row, col) == GR(0))) {
          vx[row] = -g00[j].X.at(row, col);
          nzx = true;
        }
      }
      if (nzy) {
        ey.parts[wEbar] = vy;
        a.set_bracket(wEbar, col, wD, j, ey);
      }
      if (nzx) {
        ex.parts[wE] = vx;
        a.set_bracket(wE, col, wD, j, ex);
      }
    }

  // [ebar_b, f_k] = -sum_g M_k(g,b) e_g;  [e_b, fbar_k] = -sum_g conj(M_k)(g,b) ebar_g.
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t col = 0; col < n; ++col) {
      Vec vm(n, GR(0)), vc(n, GR(0));
      bool nzm = false, nzc = false;
      for (std::size_t row = 0; row < n; ++row) {
        if (!(in.Ms[k].at(row, col) == GR(0))) {
          vm[row] = -in.Ms[k].at(row, col);
          nzm = true;
        }
        if (!(cMs[k].at(row, col) == GR(0))) {
          vc[row] = -cMs[k].at(row, col);
          nzc = true;
        }
      }
      if (nzm) {
        Element el;
        el.parts[wE] = vm;
        a.set_bracket(wEbar, col, wF, k, el);
      }
      if (nzc) {
        Element el;
        el.parts[wEbar] = vc;
        a.set_bracket(wE, col, wFbar, k, el);
      }
    }

  // [fbar_k, d_j] = -[d_j, fbar_k], where [d_j, fbar_k] has coefficients of
  // Y_j conj(M_k) - conj(M_k) X_j in the conjugated operator span.
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < g; ++j) {
      Vec c = in_operator_span(g00[j].Y * cMs[k] - cMs[k] * g00[j].X, true);
      Element el;
      Vec v(r, GR(0));
      bool nz = false;
      for (std::size_t m = 0; m < r; ++m)
        if (!(c[m] == GR(0))) {
          v[m] = -c[m];
          nz = true;
        }
      if (nz) {
        el.parts[wFbar] = v;
        a.set_bracket(wFbar, k, wD, j, el);
      }
    }

  // [fbar_k, f_m] = -[f_m, fbar_k] with [f_m, fbar_k] the derivation
  // (M_m conj(M_k), -conj(M_k) M_m, 0) expressed in the g00 basis.
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t m = 0; m < r; ++m) {
      Derivation d{in.Ms[m] * cMs[k], -(cMs[k] * in.Ms[m]), GR(0)};
      Vec c = in_g00_span(d, "composite of two operators");
      Element el;
      Vec v(g, GR(0));
      bool nz = false;
      for (std::size_t j = 0; j < g; ++j)
        if (!(c[j] == GR(0))) {
          v[j] = -c[j];
          nz = true;
        }
      if (nz) {
        el.parts[wD] = v;
        a.set_bracket(wFbar, k, wF, m, el);
      }
    }

  // [d_i, d_j] = (X_i X_j - X_j X_i, Y_i Y_j - Y_j Y_i, 0) for i < j.
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) {
      Derivation d{g00[i].X * g00[j].X - g00[j].X * g00[i].X,
                   g00[i].Y * g00[j].Y - g00[j].Y * g00[i].Y, GR(0)};
      Vec c = in_g00_span(d, "commutator of weight-(0,0) derivations");
      Element el;
      bool nz = false;
      for (const GR& x : c)
        if (!(x == GR(0))) nz = true;
      if (nz) {
        el.parts[wD] = c;
        a.set_bracket(wD, i, wD, j, el);
      }
    }

  // [d_j, f_k]: coefficients of X_j M_k - M_k Y_j in the operator span.
  for (std::size_t j = 0; j < g; ++j)
    for (std::size_t k = 0; k < r; ++k) {
      Vec c = in_operator_span(g00[j].X * in.Ms[k] - in.Ms[k] * g00[j].Y, false);
      Element el;
      bool nz = false;
      for (const GR& x : c)
        if (!(x == GR(0))) nz = true;
      if (nz) {
        el.parts[wF] = c;
        a.set_bracket(wD, j, wF, k, el);
      }
    }

  // Involution: conj(e0) = -e0, conj(e_a) = ebar_a, conj(f_k) = fbar_k, and on
  // the weight-(0,0) block conj(X, Y, lambda) = (conj Y, conj X, conj lambda).
  {
    Matrix c0(1, 1);
    c0.at(0, 0) = GR(-1);
    a.set_involution(wE0, c0);
    a.set_involution(wE, Matrix::identity(n));
    a.set_involution(wEbar, Matrix::identity(n));
    a.set_involution(wF, Matrix::identity(r));
    a.set_involution(wFbar, Matrix::identity(r));
    Matrix cd(g, g);
    for (std::size_t k = 0; k < g; ++k) {
      Derivation dk{g00[k].Y.conjugate(), g00[k].X.conjugate(), g00[k].lambda.conj()};
      std::optional<Vec> c = express_in_g00(g00, dk);
      if (!c)
        throw InternalVerification("conjugate of a weight-(0,0) derivation left the computed span");
      for (std::size_t m = 0; m < g; ++m) cd.at(m, k) = (*c)[m];
    }
    a.set_involution(wD, cd);
  }

  a.seal();
  return SymbolAlgebra{std::move(a), std::move(g00), std::move(in)};
}

}  // namespace crsym

#include "crsym/golden.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "crsym/classify.hpp"
#include "crsym/errors.hpp"

namespace crsym {

namespace {

Matrix unit(int n, int r, int c) {
  Matrix m(n, n);
  m.at(r, c) = GR(1);
  return m;
}

// Sum of scaled unit matrices: {coefficient, row, column}.
Matrix lin(int n, const std::vector<std::tuple<GR, int, int>>& terms) {
  Matrix m(n, n);
  for (const auto& [s, r, c] : terms) m.at(r, c) = m.at(r, c) + s;
  return m;
}

Vec flatten(const Matrix& m) {
  Vec v(std::size_t(m.rows()) * std::size_t(m.cols()), GR(0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v[std::size_t(i) * m.cols() + j] = m.at(i, j);
  return v;
}

// Expresses matrices in the span of a fixed independent list.  One
// elimination of the stacked coordinates up front; each query is then a
// sparse matrix-vector product against the recorded row operations.
class SpanSolver {
 public:
  explicit SpanSolver(const std::vector<Matrix>& basis) {
    dim_ = int(basis.size());
    len_ = basis.empty() ? 0 : basis[0].rows() * basis[0].cols();
    Matrix aug(len_, dim_ + len_);
    for (int k = 0; k < dim_; ++k) {
      Vec f = flatten(basis[std::size_t(k)]);
      for (int i = 0; i < len_; ++i) aug.at(i, k) = f[std::size_t(i)];
    }
    for (int i = 0; i < len_; ++i) aug.at(i, dim_ + i) = GR(1);
    RrefResult r = rref(std::move(aug));
    for (int k = 0; k < dim_; ++k)
      if (k >= int(r.pivots.size()) || r.pivots[std::size_t(k)] != k)
        throw InternalVerification("model basis is linearly dependent");
    ops_ = Matrix(len_, len_);
    for (int i = 0; i < len_; ++i)
      for (int j = 0; j < len_; ++j) ops_.at(i, j) = r.m.at(i, dim_ + j);
  }

  // Coordinates c with t == sum c[k] basis[k]; nullopt when t is outside.
  std::optional<Vec> express(const Matrix& t) const {
    std::vector<std::pair<int, GR>> nz;
    {
      Vec f = flatten(t);
      for (int j = 0; j < len_; ++j)
        if (!f[std::size_t(j)].is_zero()) nz.emplace_back(j, f[std::size_t(j)]);
    }
    auto row_dot = [&](int i) {
      GR s(0);
      for (const auto& [j, fj] : nz) s += ops_.at(i, j) * fj;
      return s;
    };
    Vec c(std::size_t(dim_), GR(0));
    for (int i = 0; i < dim_; ++i) c[std::size_t(i)] = row_dot(i);
    for (int i = dim_; i < len_; ++i)
      if (!row_dot(i).is_zero()) return std::nullopt;
    return c;
  }

 private:
  int dim_ = 0;
  int len_ = 0;
  Matrix ops_;
};

struct ModelComponent {
  BiWeight w;
  std::vector<std::string> labels;
  std::vector<Matrix> mats;
};

// Bigraded algebra of a matrix model: brackets are exact commutators
// expressed over the given basis.  Throws when the span is not closed or a
// bracket violates the weight grading (checked by seal).  When
// require_real_constants is set, every structure constant must be rational.
BigradedAlgebra algebra_from_matrices(std::vector<ModelComponent> comps,
                                      bool require_real_constants = false) {
  std::sort(comps.begin(), comps.end(),
            [](const ModelComponent& a, const ModelComponent& b) { return a.w < b.w; });
  BigradedAlgebra alg;
  std::vector<Matrix> flat;
  std::vector<std::pair<BiWeight, int>> where;
  for (const auto& c : comps) {
    if (c.labels.size() != c.mats.size())
      throw InternalVerification("model component labels and matrices disagree");
    alg.add_component(c.w, int(c.labels.size()), c.labels);
    for (int i = 0; i < int(c.mats.size()); ++i) {
      flat.push_back(c.mats[std::size_t(i)]);
      where.emplace_back(c.w, i);
    }
  }
  SpanSolver span(flat);
  const int d = int(flat.size());
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Matrix c = flat[std::size_t(i)] * flat[std::size_t(j)] -
                 flat[std::size_t(j)] * flat[std::size_t(i)];
      if (c.is_zero()) continue;
      auto coords = span.express(c);
      if (!coords)
        throw InternalVerification("matrix model is not closed under the commutator");
      Element val;
      for (int k = 0; k < d; ++k) {
        const GR& x = (*coords)[std::size_t(k)];
        if (x.is_zero()) continue;
        if (require_real_constants && !x.is_real())
          throw InternalVerification("real model produced a non-real structure constant");
        auto [w, idx] = where[std::size_t(k)];
        auto it = val.parts.find(w);
        if (it == val.parts.end())
          it = val.parts.emplace(w, Vec(std::size_t(alg.dim(w)), GR(0))).first;
        it->second[std::size_t(idx)] = x;
      }
      alg.set_bracket(where[std::size_t(i)].first, where[std::size_t(i)].second,
                      where[std::size_t(j)].first, where[std::size_t(j)].second, val);
    }
  }
  alg.seal();
  return alg;
}

// Killing data of a real matrix Lie algebra given by a basis with rational
// structure constants, housed in a single weight-(0,0) component.
Signature real_killing_signature(const std::vector<Matrix>& basis) {
  std::vector<std::string> labels;
  labels.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) labels.push_back("x" + std::to_string(k));
  BigradedAlgebra real = algebra_from_matrices(
      {ModelComponent{BiWeight{0, 0}, std::move(labels), basis}}, true);
  return hermitian_signature(real.killing());
}

void check_form_membership(const std::vector<Matrix>& basis, const Matrix& form,
                           const char* what) {
  for (const Matrix& x : basis)
    if (!(x.transpose() * form + form * x).is_zero())
      throw InternalVerification(std::string("model matrix does not preserve the ") + what);
}

std::map<BiWeight, int> dims_of(const BigradedAlgebra& a) {
  std::map<BiWeight, int> d;
  for (const auto& [w, c] : a.components()) d[w] = c.dim;
  return d;
}

std::vector<std::string> numbered(const std::string& stem, int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

// Coordinates in component w of the element of `a` whose bracket with every
// basis vector of the negative components matches `target` (an Element per
// source (weight, index); zero when the map returns an empty Element).
// *unique reports whether the action determines the element completely.
std::optional<Vec> solve_by_action(
    const BigradedAlgebra& a, BiWeight w,
    const std::function<Element(BiWeight, int)>& target, bool* unique) {
  std::vector<std::tuple<BiWeight, int, BiWeight>> slots;
  int rows = 0;
  for (const auto& [s, comp] : a.components()) {
    if (s.w1 >= 0) continue;
    BiWeight t = s + w;
    if (!a.has_component(t)) continue;
    for (int i = 0; i < comp.dim; ++i) slots.emplace_back(s, i, t);
    rows += comp.dim * a.dim(t);
  }
  const int dim = a.dim(w);
  Matrix act(rows, dim);
  Vec rhs(std::size_t(rows), GR(0));
  int off = 0;
  for (const auto& [s, i, t] : slots) {
    const int td = a.dim(t);
    for (int k = 0; k < dim; ++k) {
      Element br = a.bracket_basis(w, k, s, i);
      auto it = br.parts.find(t);
      if (it != br.parts.end())
        for (int r = 0; r < td; ++r) act.at(off + r, k) = it->second[std::size_t(r)];
    }
    Element tg = target(s, i);
    auto it = tg.parts.find(t);
    if (it != tg.parts.end())
      for (int r = 0; r < td; ++r) rhs[std::size_t(off + r)] = it->second[std::size_t(r)];
    off += td;
  }
  if (unique) *unique = (rank(act) == dim);
  return solve(act, rhs);
}

std::string signature_string(const Signature& s) {
  std::string out = "(" + std::to_string(s.pos) + "," + std::to_string(s.neg);
  if (s.zero != 0) out += ",0^" + std::to_string(s.zero);
  return out + ")";
}

}  // namespace

Fingerprint fingerprint_of(const ProlongationResult& pro) {
  if (pro.capped)
    throw MalformedInput("fingerprint requires an uncapped prolongation result");
  RealFormResult rf = real_form(pro);
  Fingerprint fp;
  fp.complex_dim = pro.total_complex;
  fp.killing_signature = hermitian_signature(rf.algebra.killing());
  fp.semisimple = (fp.killing_signature.zero == 0);
  fp.dims = pro.dims;
  return fp;
}

GoldenModel golden_so(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1)
    throw MalformedName("orthogonal model needs p, q >= 0 with p + q >= 1");
  const int n = p + q;
  const int N = n + 4;
  const GR one(1), two(2);
  auto eps = [&](int a) { return GR(a <= p ? 1 : -1); };  // 1-based index

  // Defining symmetric form: hyperbolic pairs on the first four coordinates,
  // diagonal signs on the rest.
  std::vector<std::tuple<GR, int, int>> qterms = {
      {one, 0, 2}, {one, 2, 0}, {one, 1, 3}, {one, 3, 1}};
  for (int a = 1; a <= n; ++a) qterms.push_back({eps(a), 3 + a, 3 + a});
  const Matrix form = lin(N, qterms);

  std::vector<ModelComponent> comps;
  comps.push_back({{-2, 0}, {"e0"}, {lin(N, {{one, 3, 0}, {-one, 2, 1}})}});

  ModelComponent ebar{{-1, -1}, numbered("ebar", n), {}};
  ModelComponent ee{{-1, 1}, numbered("e", n), {}};
  for (int a = 1; a <= n; ++a) {
    ebar.mats.push_back(lin(N, {{eps(a), 3, 3 + a}, {-one, 3 + a, 1}}));
    ee.mats.push_back(lin(N, {{eps(a), 2, 3 + a}, {-one, 3 + a, 0}}));
  }
  comps.push_back(std::move(ebar));
  comps.push_back(std::move(ee));

  comps.push_back({{0, -2}, {"fbar1"}, {lin(N, {{one, 3, 2}, {-one, 0, 1}})}});
  comps.push_back({{0, 2}, {"f1"}, {lin(N, {{one, 2, 3}, {-one, 1, 0}})}});

  ModelComponent zero{{0, 0}, {"E", "Ehat"}, {}};
  zero.mats.push_back(lin(N, {{-one, 0, 0}, {one, 1, 1}, {one, 2, 2}, {-one, 3, 3}}));
  zero.mats.push_back(lin(N, {{-one, 0, 0}, {-one, 1, 1}, {one, 2, 2}, {one, 3, 3}}));
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      zero.labels.push_back("e" + std::to_string(a) + "_" + std::to_string(b));
      zero.mats.push_back(lin(N, {{eps(a), 3 + a, 3 + b}, {-eps(b), 3 + b, 3 + a}}));
    }
  comps.push_back(std::move(zero));

  ModelComponent pbar{{1, -1}, numbered("Ebar", n), {}};
  ModelComponent pos{{1, 1}, numbered("E", n), {}};
  for (int a = 1; a <= n; ++a) {
    pbar.mats.push_back(lin(N, {{two * eps(a), 0, 3 + a}, {-two, 3 + a, 2}}));
    pos.mats.push_back(lin(N, {{two * eps(a), 1, 3 + a}, {-two, 3 + a, 3}}));
  }
  comps.push_back(std::move(pbar));
  comps.push_back(std::move(pos));

  comps.push_back({{2, 0}, {"E0"}, {lin(N, {{two, 1, 2}, {-two, 0, 3}})}});

  for (const auto& c : comps) check_form_membership(c.mats, form, "symmetric form");

  GoldenModel g;
  g.name = "so(" + std::to_string(p + 2) + "," + std::to_string(q + 2) + ")";
  g.algebra = algebra_from_matrices(std::move(comps));

  // Real form: X = form * K with K real skew; independent of the complex
  // presentation above.
  std::vector<Matrix> real_basis;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      real_basis.push_back(form * lin(N, {{one, i, j}, {-one, j, i}}));
  check_form_membership(real_basis, form, "symmetric form");

  g.fingerprint.complex_dim = g.algebra.total_dim();
  g.fingerprint.killing_signature = real_killing_signature(real_basis);
  g.fingerprint.semisimple = (g.fingerprint.killing_signature.zero == 0);
  g.fingerprint.dims = dims_of(g.algebra);
  if (g.fingerprint.complex_dim != N * (N - 1) / 2)
    throw InternalVerification("orthogonal model has the wrong dimension");
  return g;
}

GoldenModel golden_so_star(int p) {
  if (p < 1) throw MalformedName("quaternionic model needs p >= 1");
  const int n = 2 * p;
  const int N = 2 * p + 4;
  const int m = p + 2;
  const GR one(1), two(2), I = GR::i();

  // Split symmetric form pairing the two m-blocks.
  std::vector<std::tuple<GR, int, int>> sterms;
  for (int k = 0; k < m; ++k) {
    sterms.push_back({one, k, m + k});
    sterms.push_back({one, m + k, k});
  }
  const Matrix form = lin(N, sterms);

  std::vector<ModelComponent> comps;
  comps.push_back(
      {{-2, 0}, {"e0"}, {lin(N, {{I, n + 2, p + 1}, {-I, n + 3, p}})}});

  ModelComponent ebar{{-1, -1}, numbered("ebar", n), {}};
  ModelComponent ee{{-1, 1}, numbered("e", n), {}};
  for (int a = 1; a <= p; ++a) {
    ee.mats.push_back(lin(N, {{I, p + 1 + a, p}, {-I, n + 2, a - 1}}));
    ebar.mats.push_back(lin(N, {{one, n + 3, p + 1 + a}, {-one, a - 1, p + 1}}));
  }
  for (int a = 1; a <= p; ++a) {
    ee.mats.push_back(lin(N, {{one, a - 1, p}, {-one, n + 2, p + 1 + a}}));
    ebar.mats.push_back(lin(N, {{I, p + 1 + a, p + 1}, {-I, n + 3, a - 1}}));
  }
  comps.push_back(std::move(ebar));
  comps.push_back(std::move(ee));

  comps.push_back(
      {{0, -2}, {"fbar1"}, {lin(N, {{one, n + 3, n + 2}, {-one, p, p + 1}})}});
  comps.push_back(
      {{0, 2}, {"f1"}, {lin(N, {{one, p + 1, p}, {-one, n + 2, n + 3}})}});

  ModelComponent zero{{0, 0}, {"E", "Ehat"}, {}};
  zero.mats.push_back(lin(
      N, {{-one, p, p}, {one, p + 1, p + 1}, {one, n + 2, n + 2}, {-one, n + 3, n + 3}}));
  zero.mats.push_back(lin(
      N, {{-one, p, p}, {-one, p + 1, p + 1}, {one, n + 2, n + 2}, {one, n + 3, n + 3}}));
  for (int a = 1; a <= p; ++a)
    for (int b = 1; b <= p; ++b) {
      zero.labels.push_back("E" + std::to_string(a) + "_" + std::to_string(b));
      zero.mats.push_back(
          lin(N, {{-one, b - 1, a - 1}, {one, p + 1 + a, p + 1 + b}}));
    }
  for (int a = 1; a <= p; ++a)
    for (int b = a + 1; b <= p; ++b) {
      zero.labels.push_back("e" + std::to_string(a) + "_" + std::to_string(b));
      zero.mats.push_back(lin(N, {{I, p + 1 + a, b - 1}, {-I, p + 1 + b, a - 1}}));
    }
  for (int a = 1; a <= p; ++a)
    for (int b = a + 1; b <= p; ++b) {
      zero.labels.push_back("ebar" + std::to_string(a) + "_" + std::to_string(b));
      zero.mats.push_back(lin(N, {{I, a - 1, p + 1 + b}, {-I, b - 1, p + 1 + a}}));
    }
  comps.push_back(std::move(zero));

  ModelComponent pbar{{1, -1}, numbered("Ebar", n), {}};
  ModelComponent pos{{1, 1}, numbered("E", n), {}};
  for (int a = 1; a <= p; ++a) {
    pos.mats.push_back(lin(N, {{two, p + 1, a - 1}, {-two, p + 1 + a, n + 3}}));
    pbar.mats.push_back(lin(N, {{two * I, p, p + 1 + a}, {-two * I, a - 1, n + 2}}));
  }
  for (int a = 1; a <= p; ++a) {
    pos.mats.push_back(lin(N, {{two * I, a - 1, n + 3}, {-two * I, p + 1, p + 1 + a}}));
    pbar.mats.push_back(lin(N, {{two, p, a - 1}, {-two, p + 1 + a, n + 2}}));
  }
  comps.push_back(std::move(pbar));
  comps.push_back(std::move(pos));

  comps.push_back(
      {{2, 0}, {"E0"}, {lin(N, {{two * I, p + 1, n + 2}, {-two * I, p, n + 3}})}});

  for (const auto& c : comps) check_form_membership(c.mats, form, "split symmetric form");

  GoldenModel g;
  g.name = "so*(" + std::to_string(2 * p + 4) + ")";
  g.algebra = algebra_from_matrices(std::move(comps));

  // Real form: block matrices [[A,B],[C,-A^T]] with A anti-hermitian, B skew
  // and C the conjugate transpose of B (the fixed set of the anti-involution
  // that also preserves the hermitian form diag(1,-1) on the two blocks);
  // again independent of the complex presentation.
  std::vector<Matrix> real_basis;
  for (int a = 0; a < m; ++a)
    real_basis.push_back(lin(N, {{I, a, a}, {-I, m + a, m + a}}));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      real_basis.push_back(
          lin(N, {{I, a, b}, {I, b, a}, {-I, m + a, m + b}, {-I, m + b, m + a}}));
      real_basis.push_back(
          lin(N, {{one, a, b}, {-one, b, a}, {one, m + a, m + b}, {-one, m + b, m + a}}));
      real_basis.push_back(
          lin(N, {{one, a, m + b}, {-one, b, m + a}, {-one, m + a, b}, {one, m + b, a}}));
      real_basis.push_back(
          lin(N, {{I, a, m + b}, {-I, b, m + a}, {I, m + a, b}, {-I, m + b, a}}));
    }
  check_form_membership(real_basis, form, "split symmetric form");

  g.fingerprint.complex_dim = g.algebra.total_dim();
  g.fingerprint.killing_signature = real_killing_signature(real_basis);
  g.fingerprint.semisimple = (g.fingerprint.killing_signature.zero == 0);
  g.fingerprint.dims = dims_of(g.algebra);
  if (g.fingerprint.complex_dim != N * (N - 1) / 2)
    throw InternalVerification("quaternionic model has the wrong dimension");
  return g;
}

GoldenModel golden_block3(int n1) {
  if (n1 < 0) throw MalformedName("block model needs n1 >= 0");
  TagNilpotent tag;
  tag.blocks.push_back({3, 1});
  for (int i = 0; i < n1; ++i) tag.blocks.push_back({1, 1});
  SymbolAlgebra sym = build_symbol(emit_normal_form(FamilyTag{tag}));
  ProlongationResult pro = prolong(sym);
  std::string why;
  if (!verify_block3_extension(sym, pro, &why))
    throw InternalVerification("block-3 extension check failed: " + why);
  GoldenModel g;
  g.name = "nilpotent(3";
  for (int i = 0; i < n1; ++i) g.name += ",1";
  g.name += ")";
  g.algebra = pro.algebra;
  g.fingerprint = fingerprint_of(pro);
  return g;
}

GoldenModel build_golden(const std::string& name) {
  const auto open = name.find('(');
  const auto close = name.rfind(')');
  if (open == std::string::npos || close != name.size() - 1 || close <= open + 1)
    throw MalformedName("unrecognized model name: " + name);
  const std::string stem = name.substr(0, open);
  std::vector<int> args;
  {
    std::string body = name.substr(open + 1, close - open - 1);
    std::size_t start = 0;
    while (start <= body.size()) {
      std::size_t comma = body.find(',', start);
      std::string tok = body.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw MalformedName("unrecognized model name: " + name);
      args.push_back(std::stoi(tok));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (stem == "so" && args.size() == 2) {
    if (args[0] < args[1] || args[1] < 2)
      throw MalformedName("orthogonal model name needs a >= b >= 2: " + name);
    return golden_so(args[0] - 2, args[1] - 2);
  }
  if ((stem == "so*" || stem == "so_star") && args.size() == 1) {
    if (args[0] < 6 || args[0] % 2 != 0)
      throw MalformedName("quaternionic model name needs an even argument >= 6: " + name);
    return golden_so_star((args[0] - 4) / 2);
  }
  if (stem == "nilpotent" && !args.empty() && args[0] == 3) {
    for (std::size_t k = 1; k < args.size(); ++k)
      if (args[k] != 1) throw MalformedName("block model supports profile 3,1,...: " + name);
    return golden_block3(int(args.size()) - 1);
  }
  throw MalformedName("unrecognized model name: " + name);
}

MatchReport match_structure(const ProlongationResult& pro, const GoldenModel& golden) {
  MatchReport rep;
  if (pro.capped) {
    rep.detail = "computed algebra is truncated; rerun without the degree cap";
    return rep;
  }
  const Fingerprint fp = fingerprint_of(pro);
  const Fingerprint& gf = golden.fingerprint;
  if (fp.complex_dim != gf.complex_dim) {
    rep.detail = "complex dimension " + std::to_string(fp.complex_dim) + " vs model " +
                 std::to_string(gf.complex_dim);
    return rep;
  }
  if (fp.dims != gf.dims) {
    rep.detail = "per-weight dimensions differ from the model";
    return rep;
  }
  if (!(fp.killing_signature == gf.killing_signature)) {
    rep.detail = "Killing signature " + signature_string(fp.killing_signature) +
                 " vs model " + signature_string(gf.killing_signature);
    return rep;
  }

  const BigradedAlgebra& a = pro.algebra;
  const BigradedAlgebra& g = golden.algebra;

  // Component-wise change of basis from the model into the computed algebra.
  std::map<BiWeight, Matrix> phi;

  // The negative and pure-second-weight components share labeled bases; the
  // correspondence there is the identity.
  for (const auto& [w, comp] : g.components()) {
    if (w.w1 > 0 || (w.w1 == 0 && w.w2 == 0)) continue;
    if (a.components().at(w).labels != comp.labels) {
      rep.detail = "basis labels differ at weight " + to_string(w);
      return rep;
    }
    phi[w] = Matrix::identity(comp.dim);
  }

  // Remaining components, in increasing weight: the image of each model basis
  // vector is the computed element with the same bracket action against the
  // negative part.  Weight order guarantees every needed target map exists.
  for (const auto& [w, comp] : g.components()) {
    if (!(w.w1 > 0 || (w.w1 == 0 && w.w2 == 0))) continue;
    Matrix img(comp.dim, comp.dim);
    for (int kg = 0; kg < comp.dim; ++kg) {
      bool unique = false;
      auto target = [&](BiWeight s, int i) {
        Element gb = g.bracket_basis(w, kg, s, i);
        Element mapped;
        for (const auto& [t, coords] : gb.parts) {
          const Matrix& pt = phi.at(t);
          Vec out(coords.size(), GR(0));
          for (int r = 0; r < pt.rows(); ++r) {
            GR sum(0);
            for (int c = 0; c < pt.cols(); ++c) sum += pt.at(r, c) * coords[std::size_t(c)];
            out[std::size_t(r)] = sum;
          }
          mapped.parts[t] = std::move(out);
        }
        return mapped;
      };
      auto sol = solve_by_action(a, w, target, &unique);
      if (!sol) {
        rep.detail = "model element '" + comp.labels[std::size_t(kg)] + "' at weight " +
                     to_string(w) + " has no counterpart with the same action";
        return rep;
      }
      if (!unique) {
        rep.detail = "the action on the negative part does not pin down weight " +
                     to_string(w) + " elements";
        return rep;
      }
      for (int r = 0; r < comp.dim; ++r) img.at(r, kg) = (*sol)[std::size_t(r)];
    }
    if (!inverse(img)) {
      rep.detail = "images of the model basis at weight " + to_string(w) + " do not span";
      return rep;
    }
    phi[w] = std::move(img);
  }

  // Full structure-constant comparison through the correspondence.
  std::vector<std::pair<BiWeight, int>> flat;
  for (const auto& [w, comp] : g.components())
    for (int i = 0; i < comp.dim; ++i) flat.emplace_back(w, i);
  auto mapped_basis = [&](BiWeight w, int i) {
    Element x;
    const Matrix& pw = phi.at(w);
    Vec col(std::size_t(pw.rows()), GR(0));
    for (int r = 0; r < pw.rows(); ++r) col[std::size_t(r)] = pw.at(r, i);
    x.parts[w] = std::move(col);
    return x;
  };
  for (std::size_t i = 0; i < flat.size(); ++i) {
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      const auto& [wa, ia] = flat[i];
      const auto& [wb, ib] = flat[j];
      Element gb = g.bracket_basis(wa, ia, wb, ib);
      Element lhs;
      for (const auto& [t, coords] : gb.parts) {
        const Matrix& pt = phi.at(t);
        Vec out(coords.size(), GR(0));
        for (int r = 0; r < pt.rows(); ++r) {
          GR sum(0);
          for (int c = 0; c < pt.cols(); ++c) sum += pt.at(r, c) * coords[std::size_t(c)];
          out[std::size_t(r)] = sum;
        }
        lhs.parts[t] = std::move(out);
      }
      lhs.prune();
      Element rhs = a.bracket(mapped_basis(wa, ia), mapped_basis(wb, ib));
      rhs.prune();
      if (!(lhs == rhs)) {
        rep.detail = "bracket [" + g.components().at(wa).labels[std::size_t(ia)] + ", " +
                     g.components().at(wb).labels[std::size_t(ib)] +
                     "] disagrees with the model";
        return rep;
      }
    }
  }
  rep.matched = true;
  return rep;
}

bool verify_block3_extension(const SymbolAlgebra& sym, const ProlongationResult& pro,
                             std::string* detail) {
  auto fail = [&](const std::string& why) {
    if (detail) *detail = why;
    return false;
  };
  const SymbolInput& in = sym.meta;
  const int n = in.n();
  if (in.r() != 1) return fail("expects a single anti-linear operator");
  if (n < 3) return fail("expects the 3-block plus optional 1-blocks");
  const int n1 = n - 3;

  // Shape of the expected normal form: the operator is the chain on the first
  // three coordinates, the form is antidiagonal there (plus signs) and
  // diagonal +-1 on the rest.
  const Matrix& h = in.H;
  const Matrix& mop = in.Ms[0];
  std::vector<GR> eps(std::size_t(n1), GR(0));
  {
    Matrix expect_m(n, n);
    expect_m.at(0, 1) = GR(1);
    expect_m.at(1, 2) = GR(1);
    if (!(mop == expect_m)) return fail("expects the chain operator of the 3-block normal form");
    Matrix expect_h(n, n);
    expect_h.at(0, 2) = GR(1);
    expect_h.at(1, 1) = GR(1);
    expect_h.at(2, 0) = GR(1);
    for (int i = 0; i < n1; ++i) {
      const GR& d = h.at(3 + i, 3 + i);
      if (!(d == GR(1)) && !(d == GR(-1)))
        return fail("expects unit signs on the 1-blocks");
      eps[std::size_t(i)] = d;
      expect_h.at(3 + i, 3 + i) = d;
    }
    if (!(h == expect_h)) return fail("expects the antidiagonal plus-sign 3-block form");
  }

  const BigradedAlgebra& a = pro.algebra;
  const BiWeight wzero{0, 0};

  // Named weight-zero operators, each expressed over the computed basis.
  auto g00_elem = [&](const Matrix& x, const Matrix& y,
                      const GR& lam) -> std::optional<Element> {
    auto c = express_in_g00(sym.g00_basis, Derivation{x, y, lam});
    if (!c) return std::nullopt;
    Element e;
    e.parts[wzero] = *c;
    e.prune();
    return e;
  };
  auto nxn_unit = [&](int r, int c) { return unit(n, r, c); };

  std::optional<Element> el_Ehat = g00_elem(Matrix::identity(n), Matrix::identity(n), GR(2));
  std::optional<Element> el_E13 = g00_elem(nxn_unit(0, 0), -nxn_unit(2, 2), GR(0));
  std::optional<Element> el_Eb13 = g00_elem(-nxn_unit(2, 2), nxn_unit(0, 0), GR(0));
  std::optional<Element> el_e13 = g00_elem(nxn_unit(0, 2), -nxn_unit(0, 2), GR(0));
  std::optional<Element> el_e22 = g00_elem(nxn_unit(1, 1), -nxn_unit(1, 1), GR(0));
  if (!el_Ehat || !el_E13 || !el_Eb13 || !el_e13 || !el_e22)
    return fail("a named weight-zero operator is missing from the computed algebra");

  Element el_Ew;  // counterpart of E restricted to the 1-blocks
  if (n1 > 0) {
    Matrix x(n, n);
    for (int i = 0; i < n1; ++i) x.at(3 + i, 3 + i) = GR(1);
    auto e = g00_elem(x, -x, GR(0));
    if (!e) return fail("the 1-block scaling operator is missing from the computed algebra");
    el_Ew = *e;
  }
  std::vector<Element> el_W(static_cast<std::size_t>(n1));
  std::vector<Element> el_Wb(static_cast<std::size_t>(n1));
  for (int i = 0; i < n1; ++i) {
    auto wi = g00_elem(eps[std::size_t(i)] * nxn_unit(0, 3 + i), -nxn_unit(3 + i, 2), GR(0));
    auto wbi = g00_elem(-nxn_unit(3 + i, 2), eps[std::size_t(i)] * nxn_unit(0, 3 + i), GR(0));
    if (!wi || !wbi) return fail("a 1-block mixing operator is missing from the computed algebra");
    el_W[std::size_t(i)] = *wi;
    el_Wb[std::size_t(i)] = *wbi;
  }

  // The degree-one pair is pinned down by its action.  The value on the third
  // conjugate basis vector combines the named operators; the printed form of
  // this combination omits the 1-block correction, which fails the Leibniz
  // identity as soon as 1-blocks are present, so the corrected combination is
  // used here and validated by the solve below.
  Element sp = *el_Ehat + *el_e22 + *el_Eb13 - GR(3) * (*el_E13) - el_Ew;
  Element sq = *el_Ehat - *el_e22 + *el_E13 - GR(3) * (*el_Eb13) + el_Ew;

  const BiWeight wE0{-2, 0}, wEbar{-1, -1}, wE{-1, 1}, wFbar{0, -2}, wF{0, 2};
  const BiWeight w11{1, 1}, w1m1{1, -1};
  if (a.dim(w11) != 1 || a.dim(w1m1) != 1)
    return fail("expected one-dimensional degree-one components");

  auto single = [&](BiWeight w, int idx, const GR& c) {
    Element e;
    e.parts[w] = Vec(std::size_t(a.dim(w)), GR(0));
    e.parts[w][std::size_t(idx)] = c;
    return e;
  };

  auto target_up = [&](BiWeight s, int i) -> Element {
    if (s == wE0) return single(wE, 0, GR(2));
    if (s == wEbar) {
      if (i == 0) return GR(-2) * (*el_e13);
      if (i == 2) return sp;
      if (i >= 3) return GR(-2) * el_W[std::size_t(i - 3)];
      return {};
    }
    if (s == wE && i == 1) return single(wF, 0, GR(2));
    return {};
  };
  auto target_down = [&](BiWeight s, int i) -> Element {
    if (s == wE0) return single(wEbar, 0, GR(-2));
    if (s == wE) {
      if (i == 0) return GR(2) * (*el_e13);
      if (i == 2) return sq;
      if (i >= 3) return GR(-2) * el_Wb[std::size_t(i - 3)];
      return {};
    }
    if (s == wEbar && i == 1) return single(wFbar, 0, GR(2));
    return {};
  };

  bool unique = false;
  auto up = solve_by_action(a, w11, target_up, &unique);
  if (!up) return fail("the expected degree-(1,1) derivation is not realized");
  if (!unique) return fail("the degree-(1,1) action does not pin down an element");
  auto down = solve_by_action(a, w1m1, target_down, &unique);
  if (!down) return fail("the expected degree-(1,-1) derivation is not realized");
  if (!unique) return fail("the degree-(1,-1) action does not pin down an element");

  // Spanning: one-dimensional components with a nonzero solution.
  if ((*up)[0].is_zero() || (*down)[0].is_zero())
    return fail("the degree-one derivations vanish instead of spanning");

  // The involution must exchange the pair exactly.
  Element e1;
  e1.parts[w11] = *up;
  Element eb1;
  eb1.parts[w1m1] = *down;
  Element ce1 = a.conj(e1);
  ce1.prune();
  eb1.prune();
  if (!(ce1 == eb1)) return fail("the involution does not exchange the degree-one pair");
  return true;
}

}  // namespace crsym

#include "crsym/prolong.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <stdexcept>
#include <tuple>

#include "crsym/errors.hpp"

namespace crsym {

namespace {

// One solved positive component: its weight and a hom basis (actions on the
// negative components, which never change across staging rebuilds).
struct PosComp {
  BiWeight w;
  std::vector<HomElement> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

std::vector<std::string> generic_labels(BiWeight w, int dim) {
  std::vector<std::string> out;
  out.reserve(dim);
  for (int i = 0; i < dim; ++i) out.push_back(to_string(w) + "#" + std::to_string(i));
  return out;
}

void copy_table(const BigradedAlgebra& src, BigradedAlgebra& dst) {
  for (const auto& [wa, ca] : src.components()) {
    for (const auto& [wb, cb] : src.components()) {
      if (wb < wa) continue;
      for (int ia = 0; ia < ca.dim; ++ia) {
        for (int ib = (wa == wb ? ia + 1 : 0); ib < cb.dim; ++ib) {
          Element v = src.bracket_basis(wa, ia, wb, ib);
          v.prune();
          if (!v.is_zero()) dst.set_bracket(wa, ia, wb, ib, v);
        }
      }
    }
  }
}

// Algebra with the symbol components plus the solved positive components,
// brackets filled for (negative, negative), (zero, negative) — from the
// symbol — and (negative, positive) through the hom actions.  That is exactly
// the table solve_prolongation needs at the next level.
BigradedAlgebra bake_staging(const SymbolAlgebra& sym, const std::vector<PosComp>& pos) {
  BigradedAlgebra a;
  for (const auto& [w, c] : sym.algebra.components()) a.add_component(w, c.dim, c.labels);
  for (const auto& pc : pos) a.add_component(pc.w, pc.dim(), generic_labels(pc.w, pc.dim()));
  copy_table(sym.algebra, a);
  for (const auto& pc : pos) {
    for (int jf = 0; jf < pc.dim(); ++jf) {
      for (const auto& [ws, cs] : sym.algebra.components()) {
        if (ws.w1 >= 0) continue;
        for (int iv = 0; iv < cs.dim; ++iv) {
          Element val = pc.basis[jf].apply(sym.algebra.basis_element(ws, iv));
          val = GR(-1) * val;
          val.prune();
          if (!val.is_zero()) a.set_bracket(ws, iv, pc.w, jf, val);
        }
      }
    }
  }
  a.seal();
  return a;
}

// Matrix of f -> [x, f] in flat hom coordinates: domain degree `deg`, codomain
// degree `deg + xw`.  Columns are unit homs pushed through hom_bracket.
Matrix hom_action_matrix(const BigradedAlgebra& a, const Element& x, BiWeight xw, BiWeight deg) {
  const BiWeight deg2 = deg + xw;
  const int ncols = hom_flat_dim(a, deg);
  const int nrows = hom_flat_dim(a, deg2);
  Matrix L(nrows, ncols);
  for (int j = 0; j < ncols; ++j) {
    Vec unit(ncols, GR(0));
    unit[j] = GR(1);
    HomElement f = hom_from_flat(a, deg, unit);
    Vec col = hom_to_flat(a, hom_bracket(a, x, f));
    for (int i = 0; i < nrows; ++i) L.at(i, j) = col[i];
  }
  return L;
}

void append_rows(std::vector<Vec>& rows, const Matrix& m) {
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
}

// First-weight-one component at second weight deg.w2 = +-1: all degree-`deg`
// maps satisfying the Leibniz rule, trimmed by two bracket conditions so that
// the extended algebra keeps its components: [f, g_{0,2s}] = 0 and
// [[f, g_{0,-2s}], g_{0,-2s}] = 0, where s is the sign of deg.w2.
std::vector<HomElement> solve_cut_level1(const SymbolAlgebra& sym, BiWeight deg) {
  const BigradedAlgebra& a = sym.algebra;
  const BiWeight w_same{0, deg.w2 > 0 ? 2 : -2};
  const BiWeight w_opp = w_same.mirror();
  std::vector<Vec> rows;
  for (int k = 0; k < a.dim(w_same); ++k)
    append_rows(rows, hom_action_matrix(a, a.basis_element(w_same, k), w_same, deg));
  for (int k = 0; k < a.dim(w_opp); ++k) {
    Matrix inner = hom_action_matrix(a, a.basis_element(w_opp, k), w_opp, deg);
    for (int m = 0; m < a.dim(w_opp); ++m) {
      Matrix outer = hom_action_matrix(a, a.basis_element(w_opp, m), w_opp, deg + w_opp);
      append_rows(rows, outer * inner);
    }
  }
  return solve_derivations(a, deg, rows);
}

// Second weights at which a nonzero degree-(level, j) hom could exist over the
// current staging algebra: some negative source must have its target built.
std::set<int> candidate_second_weights(const BigradedAlgebra& a, int level) {
  std::set<int> js;
  for (const auto& [ws, cs] : a.components()) {
    if (ws.w1 >= 0) continue;
    for (const auto& [wt, ct] : a.components())
      if (wt.w1 - ws.w1 == level) js.insert(wt.w2 - ws.w2);
  }
  return js;
}

using TableKey = std::tuple<BiWeight, int, BiWeight, int>;

struct BracketTable {
  std::map<TableKey, Element> t;

  void set(BiWeight wa, int ia, BiWeight wb, int ib, Element v) {
    v.prune();
    if (v.is_zero()) return;
    t[{wa, ia, wb, ib}] = std::move(v);
  }

  Element basis(BiWeight wa, int ia, BiWeight wb, int ib) const {
    if (wa == wb && ia == ib) return {};
    const bool flip = std::make_pair(wb, ib) < std::make_pair(wa, ia);
    const TableKey key = flip ? TableKey{wb, ib, wa, ia} : TableKey{wa, ia, wb, ib};
    auto it = t.find(key);
    if (it == t.end()) return {};
    Element v = it->second;
    if (flip) v = GR(-1) * v;
    return v;
  }

  Element bracket(const Element& x, const Element& y) const {
    Element out;
    for (const auto& [wx, vx] : x.parts) {
      for (int ix = 0; ix < static_cast<int>(vx.size()); ++ix) {
        if (vx[ix].is_zero()) continue;
        for (const auto& [wy, vy] : y.parts) {
          for (int iy = 0; iy < static_cast<int>(vy.size()); ++iy) {
            if (vy[iy].is_zero()) continue;
            Element b = basis(wx, ix, wy, iy);
            if (!b.is_zero()) out += (vx[ix] * vy[iy]) * b;
          }
        }
      }
    }
    out.prune();
    return out;
  }
};

// Hom realizing the action v -> act(v) on the negative components, as a
// degree-`deg` HomElement over `amb`.  Returns false when the action cannot be
// represented (a value lands outside the built components), which the callers
// treat as "must be zero".
bool action_to_hom(const BigradedAlgebra& amb, BiWeight deg,
                   const std::function<Element(BiWeight, int)>& act, HomElement& out) {
  out = HomElement{deg, {}};
  const auto sources = hom_sources(amb, deg);
  for (const auto& [ws, cs] : amb.components()) {
    if (ws.w1 >= 0) continue;
    const BiWeight wt = ws + deg;
    const bool is_source =
        std::find(sources.begin(), sources.end(), ws) != sources.end();
    Matrix block(is_source ? amb.dim(wt) : 0, cs.dim);
    bool any = false;
    for (int iv = 0; iv < cs.dim; ++iv) {
      Element val = act(ws, iv);
      val.prune();
      if (val.is_zero()) continue;
      if (!is_source) return false;  // nonzero value with no component to hold it
      for (const auto& [wv, vec] : val.parts) {
        if (wv != wt) throw InternalVerification("bracket action is not homogeneous");
        for (int k = 0; k < static_cast<int>(vec.size()); ++k) block.at(k, iv) = vec[k];
      }
      any = true;
    }
    if (any) out.blocks[ws] = block;
  }
  return true;
}

}  // namespace

std::vector<HomElement> first_prolongation_block(const SymbolAlgebra& sym, BiWeight deg) {
  if (deg.w1 != 1 || (std::abs(deg.w2) != 1 && std::abs(deg.w2) != 3))
    throw std::invalid_argument("first_prolongation_block: degree must be (1, +-1) or (1, +-3)");
  return solve_prolongation(sym.algebra, deg);
}

std::vector<HomElement> first_bigraded_block(const SymbolAlgebra& sym, BiWeight deg) {
  if (deg.w1 != 1 || std::abs(deg.w2) != 1)
    throw std::invalid_argument("first_bigraded_block: degree must be (1, +-1)");
  return solve_cut_level1(sym, deg);
}

std::map<BiWeight, int> first_prolongation_uncut_dims(const SymbolAlgebra& sym) {
  std::map<BiWeight, int> out;
  for (int j : {-3, -1, 1, 3}) {
    const BiWeight deg{1, j};
    out[deg] = static_cast<int>(first_prolongation_block(sym, deg).size());
  }
  return out;
}

ProlongationResult prolong(const SymbolAlgebra& sym, const ProlongationOptions& opt) {
  if (!sym.algebra.sealed()) throw std::invalid_argument("prolong: symbol algebra not sealed");

  std::vector<PosComp> pos;
  for (int s : {-1, +1}) {
    const BiWeight deg{1, s};
    auto basis = solve_cut_level1(sym, deg);
    if (!basis.empty()) pos.push_back({deg, std::move(basis)});
  }

  ProlongationResult res;
  res.capped = false;
  int top_level = 0;
  if (pos.empty()) {
    res.terminated_at = 1;
  } else {
    BigradedAlgebra staging = bake_staging(sym, pos);
    int level = 2;
    for (;; ++level) {
      if (level > opt.max_degree) {
        res.capped = true;
        break;
      }
      std::vector<PosComp> found;
      for (int j : candidate_second_weights(staging, level)) {
        const BiWeight deg{level, j};
        if (hom_flat_dim(staging, deg) == 0) continue;
        auto basis = solve_prolongation(staging, deg);
        if (!basis.empty()) found.push_back({deg, std::move(basis)});
      }
      if (found.empty()) {
        res.terminated_at = level;
        break;
      }
      for (auto& f : found) pos.push_back(std::move(f));
      staging = bake_staging(sym, pos);
    }
    if (res.capped) res.terminated_at = opt.max_degree + 1;
    for (const auto& pc : pos) top_level = std::max(top_level, pc.w.w1);
  }

  // Mirror symmetry of the component layout (the involution maps (i,j) onto
  // (i,-j), so unequal dimensions mean an internal inconsistency).
  {
    std::map<BiWeight, int> pdims;
    for (const auto& pc : pos) pdims[pc.w] = pc.dim();
    for (const auto& [w, d] : pdims) {
      auto it = pdims.find(w.mirror());
      if (it == pdims.end() || it->second != d)
        throw InternalVerification("computed components are not mirror-symmetric at " +
                                   to_string(w));
    }
  }

  // Ambient with every component, used for hom flattening / expression.
  const BigradedAlgebra amb = bake_staging(sym, pos);

  // ---- assemble the full bracket table ----
  BracketTable tbl;
  for (const auto& [wa, ca] : sym.algebra.components()) {
    for (const auto& [wb, cb] : sym.algebra.components()) {
      if (wb < wa) continue;
      for (int ia = 0; ia < ca.dim; ++ia)
        for (int ib = (wa == wb ? ia + 1 : 0); ib < cb.dim; ++ib)
          tbl.set(wa, ia, wb, ib, sym.algebra.bracket_basis(wa, ia, wb, ib));
    }
  }
  for (const auto& pc : pos) {
    for (int jf = 0; jf < pc.dim(); ++jf) {
      for (const auto& [ws, cs] : sym.algebra.components()) {
        if (ws.w1 >= 0) continue;
        for (int iv = 0; iv < cs.dim; ++iv) {
          Element val = pc.basis[jf].apply(sym.algebra.basis_element(ws, iv));
          tbl.set(ws, iv, pc.w, jf, GR(-1) * val);
        }
      }
    }
  }

  auto pos_lookup = [&pos](BiWeight w) -> const PosComp* {
    for (const auto& pc : pos)
      if (pc.w == w) return &pc;
    return nullptr;
  };

  // Express an action as an element of the component at weight `wt`; empty
  // component (or none) forces the action to vanish.
  auto express_action = [&](BiWeight wt, const std::function<Element(BiWeight, int)>& act,
                            const std::string& what) -> Element {
    const PosComp* target = pos_lookup(wt);
    HomElement h;
    const bool representable = action_to_hom(amb, wt, act, h);
    if (!target) {
      if (!representable || !h.is_zero()) {
        if (res.capped && wt.w1 > top_level) return {};  // table left open past the cap
        throw InternalVerification("bracket " + what + " does not vanish although component " +
                                   to_string(wt) + " is empty");
      }
      return {};
    }
    if (!representable)
      throw InternalVerification("bracket " + what + " leaves the built components at " +
                                 to_string(wt));
    auto coords = express_in_basis(amb, target->basis, h);
    if (!coords)
      throw InternalVerification("bracket " + what + " is not in the solved component " +
                                 to_string(wt));
    Element out;
    Vec v(target->dim(), GR(0));
    for (int m = 0; m < target->dim(); ++m) v[m] = (*coords)[m];
    out.parts[wt] = std::move(v);
    out.prune();
    return out;
  };

  // Zero-weight and positive-positive brackets, in increasing level sum so
  // every evaluation only reads entries already filled.
  std::vector<BiWeight> zero_comps;
  for (const auto& [w, c] : sym.algebra.components())
    if (w.w1 == 0) zero_comps.push_back(w);

  for (int s = 1; s <= 2 * top_level; ++s) {
    // [g_{0,*}, g_{s,*}]
    for (const auto& pc : pos) {
      if (pc.w.w1 != s) continue;
      for (const BiWeight& wz : zero_comps) {
        for (int k = 0; k < sym.algebra.dim(wz); ++k) {
          const Element x = sym.algebra.basis_element(wz, k);
          for (int jf = 0; jf < pc.dim(); ++jf) {
            const HomElement& f = pc.basis[jf];
            auto act = [&](BiWeight ws, int iv) {
              const Element v = sym.algebra.basis_element(ws, iv);
              return tbl.bracket(x, f.apply(v)) - f.apply(tbl.bracket(x, v));
            };
            Element val = express_action(pc.w + wz, act,
                                         "[" + to_string(wz) + ", " + to_string(pc.w) + "]");
            tbl.set(wz, k, pc.w, jf, std::move(val));
          }
        }
      }
    }
    // [g_{a,*}, g_{b,*}] with a + b == s
    for (const auto& pa : pos) {
      for (const auto& pb : pos) {
        if (pa.w.w1 + pb.w.w1 != s) continue;
        if (pb.w < pa.w) continue;
        for (int ia = 0; ia < pa.dim(); ++ia) {
          const int jb0 = (pa.w == pb.w) ? ia + 1 : 0;
          for (int ib = jb0; ib < pb.dim(); ++ib) {
            const Element fa = amb.basis_element(pa.w, ia);
            const Element fb = amb.basis_element(pb.w, ib);
            const HomElement& ha = pa.basis[ia];
            const HomElement& hb = pb.basis[ib];
            auto act = [&](BiWeight ws, int iv) {
              const Element v = sym.algebra.basis_element(ws, iv);
              return tbl.bracket(fa, hb.apply(v)) - tbl.bracket(fb, ha.apply(v));
            };
            Element val = express_action(pa.w + pb.w, act,
                                         "[" + to_string(pa.w) + ", " + to_string(pb.w) + "]");
            tbl.set(pa.w, ia, pb.w, ib, std::move(val));
          }
        }
      }
    }
  }

  // ---- involution on the new components, level by level ----
  std::map<BiWeight, Matrix> invol;
  for (const auto& [w, c] : sym.algebra.components()) invol[w] = sym.algebra.involution_matrix(w);
  auto conj_partial = [&invol](const Element& x) {
    Element out;
    for (const auto& [w, vec] : x.parts) {
      auto it = invol.find(w);
      if (it == invol.end())
        throw InternalVerification("conjugation hit a component with no involution yet at " +
                                   to_string(w));
      Vec img = it->second * vec_conj(vec);
      const BiWeight wm = w.mirror();
      if (out.parts.count(wm)) {
        out.parts[wm] = vec_add(out.parts[wm], img);
      } else {
        out.parts[wm] = std::move(img);
      }
    }
    out.prune();
    return out;
  };
  for (int lvl = 1; lvl <= top_level; ++lvl) {
    for (const auto& pc : pos) {
      if (pc.w.w1 != lvl) continue;
      const PosComp* mir = pos_lookup(pc.w.mirror());
      if (!mir) throw InternalVerification("missing mirror component " + to_string(pc.w.mirror()));
      Matrix cmat(mir->dim(), pc.dim());
      for (int m = 0; m < pc.dim(); ++m) {
        auto act = [&](BiWeight ws, int iv) {
          const Element cv = conj_partial(sym.algebra.basis_element(ws, iv));
          return conj_partial(pc.basis[m].apply(cv));
        };
        HomElement h;
        if (!action_to_hom(amb, pc.w.mirror(), act, h))
          throw InternalVerification("conjugated basis hom leaves the built components at " +
                                     to_string(pc.w));
        auto coords = express_in_basis(amb, mir->basis, h);
        if (!coords)
          throw InternalVerification("conjugated basis hom is not in the mirror component at " +
                                     to_string(pc.w));
        for (int k = 0; k < mir->dim(); ++k) cmat.at(k, m) = (*coords)[k];
      }
      invol[pc.w] = cmat;
    }
  }

  // ---- bake the final algebra ----
  BigradedAlgebra a;
  for (const auto& [w, c] : sym.algebra.components()) a.add_component(w, c.dim, c.labels);
  for (const auto& pc : pos) a.add_component(pc.w, pc.dim(), generic_labels(pc.w, pc.dim()));
  for (const auto& [key, val] : tbl.t) {
    const auto& [wa, ia, wb, ib] = key;
    a.set_bracket(wa, ia, wb, ib, val);
  }
  for (const auto& [w, m] : invol) a.set_involution(w, m);
  a.seal();

  res.algebra = std::move(a);
  for (const auto& [w, c] : res.algebra.components()) res.dims[w] = c.dim;
  res.total_complex = res.algebra.total_dim();

  // A capped result is a truncation, not a closed algebra: brackets landing
  // past the cap are left unset, so the closure sweep only applies below.
  if (opt.verify && !res.capped) {
    if (!res.algebra.jacobi_check().ok())
      throw InternalVerification("assembled algebra violates the Jacobi identity");
    const std::string iv = res.algebra.involution_check();
    if (!iv.empty()) throw InternalVerification("assembled involution check failed: " + iv);
    // Faithfulness: each nonnegative component embeds into maps on the
    // negative part, i.e. the stacked action matrix has full rank.
    std::vector<std::pair<BiWeight, int>> negs;
    for (const auto& [w, c] : res.algebra.components())
      if (w.w1 < 0)
        for (int k = 0; k < c.dim; ++k) negs.emplace_back(w, k);
    const int fd = res.algebra.flat_dim();
    for (const auto& [w, c] : res.algebra.components()) {
      if (w.w1 < 0 || c.dim == 0) continue;
      Matrix act(c.dim, static_cast<int>(negs.size()) * fd);
      for (int i = 0; i < c.dim; ++i) {
        const Element x = res.algebra.basis_element(w, i);
        for (int b = 0; b < static_cast<int>(negs.size()); ++b) {
          const Vec img = res.algebra.element_to_flat(
              res.algebra.bracket(x, res.algebra.basis_element(negs[b].first, negs[b].second)));
          for (int k = 0; k < fd; ++k) act.at(i, b * fd + k) = img[k];
        }
      }
      if (rank(act) != c.dim)
        throw InternalVerification("component " + to_string(w) +
                                   " does not act faithfully on the negative part");
    }
  }
  return res;
}

std::optional<Element> grading_element(const BigradedAlgebra& a, int which) {
  if (which != 1 && which != 2) throw std::invalid_argument("grading_element: which must be 1 or 2");
  const BiWeight w0{0, 0};
  if (!a.has_component(w0)) return std::nullopt;
  const int d = a.dim(w0);
  const int n = a.flat_dim();

  // Unknown h = sum c_k e_k(0,0); one block of equations per basis element x:
  // [h, x] = wval(x) x.
  std::vector<Vec> rows;
  Vec rhs_all;
  for (const auto& [w, c] : a.components()) {
    const GR wval(which == 1 ? w.w1 : w.w2);
    for (int i = 0; i < c.dim; ++i) {
      const Element x = a.basis_element(w, i);
      std::vector<Vec> cols;
      cols.reserve(d);
      for (int k = 0; k < d; ++k)
        cols.push_back(a.element_to_flat(a.bracket(a.basis_element(w0, k), x)));
      const Vec target = a.element_to_flat(wval * x);
      for (int rr = 0; rr < n; ++rr) {
        Vec row(d, GR(0));
        for (int k = 0; k < d; ++k) row[k] = cols[k][rr];
        rows.push_back(std::move(row));
        rhs_all.push_back(target[rr]);
      }
    }
  }
  Matrix m(static_cast<int>(rows.size()), d);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < d; ++j) m.at(i, j) = rows[i][j];
  auto sol = solve(m, rhs_all);
  if (!sol) return std::nullopt;
  Element h;
  h.parts[w0] = *sol;
  h.prune();
  return h;
}

RealFormResult real_form(const ProlongationResult& pro) {
  const BigradedAlgebra& a = pro.algebra;
  if (!a.has_involution())
    throw std::invalid_argument("real_form: algebra carries no involution");

  // Real basis vectors (conjugation-fixed complex elements), grouped by first
  // weight in component order.
  std::map<int, std::vector<Element>> rbasis;
  for (const auto& [w, c] : a.components()) {
    if (w.w2 < 0) continue;
    if (w.w2 == 0) {
      const Matrix cm = a.involution_matrix(w);
      const Matrix r = realify_antilinear(cm) - Matrix::identity(2 * c.dim);
      const auto ns = nullspace(r);
      if (static_cast<int>(ns.size()) != c.dim)
        throw InternalVerification("fixed space of the involution has wrong dimension at " +
                                   to_string(w));
      for (const auto& nv : ns) {
        Vec coords(c.dim, GR(0));
        for (int k = 0; k < c.dim; ++k) coords[k] = nv[k] + GR::i() * nv[k + c.dim];
        Element e;
        e.parts[w] = std::move(coords);
        e.prune();
        rbasis[w.w1].push_back(std::move(e));
      }
    } else {
      for (int k = 0; k < c.dim; ++k) {
        const Element e = a.basis_element(w, k);
        const Element ce = a.conj(e);
        rbasis[w.w1].push_back(e + ce);
        rbasis[w.w1].push_back(GR::i() * (e - ce));
      }
    }
  }

  // Per-group complex flat coordinates (all components of one first weight,
  // in component order) and the change of basis to the real vectors.
  struct Group {
    std::vector<BiWeight> comps;
    std::map<BiWeight, int> offset;
    int cdim = 0;
    Matrix to_real;  // inverse of the column matrix of real basis vectors
  };
  std::map<int, Group> groups;
  for (const auto& [w, c] : a.components()) {
    Group& g = groups[w.w1];
    g.offset[w] = g.cdim;
    g.comps.push_back(w);
    g.cdim += c.dim;
  }
  auto group_flat = [&](int w1, const Element& x) {
    const Group& g = groups.at(w1);
    Vec v(g.cdim, GR(0));
    for (const auto& [w, vec] : x.parts) {
      auto it = g.offset.find(w);
      if (it == g.offset.end())
        throw InternalVerification("element crosses first-weight groups in real_form");
      for (int k = 0; k < static_cast<int>(vec.size()); ++k) v[it->second + k] = vec[k];
    }
    return v;
  };
  for (auto& [w1, g] : groups) {
    const auto& basis = rbasis[w1];
    if (static_cast<int>(basis.size()) != g.cdim)
      throw InternalVerification("real basis count mismatch in first weight " +
                                 std::to_string(w1));
    Matrix b(g.cdim, g.cdim);
    for (int j = 0; j < g.cdim; ++j) {
      const Vec col = group_flat(w1, basis[j]);
      for (int i = 0; i < g.cdim; ++i) b.at(i, j) = col[i];
    }
    auto inv = inverse(b);
    if (!inv) throw InternalVerification("real basis is degenerate in first weight " +
                                         std::to_string(w1));
    g.to_real = *inv;
  }

  BigradedAlgebra ra;
  for (const auto& [w1, g] : groups) {
    std::vector<std::string> labels;
    for (int k = 0; k < g.cdim; ++k)
      labels.push_back("x(" + std::to_string(w1) + ")#" + std::to_string(k));
    ra.add_component({w1, 0}, g.cdim, labels);
  }
  for (const auto& [wa1, ga] : groups) {
    for (const auto& [wb1, gb] : groups) {
      if (wb1 < wa1) continue;
      const auto& ba = rbasis[wa1];
      const auto& bb = rbasis[wb1];
      for (int ia = 0; ia < static_cast<int>(ba.size()); ++ia) {
        for (int ib = (wa1 == wb1 ? ia + 1 : 0); ib < static_cast<int>(bb.size()); ++ib) {
          Element z = a.bracket(ba[ia], bb[ib]);
          z.prune();
          if (z.is_zero()) continue;
          const int wt = wa1 + wb1;
          auto git = groups.find(wt);
          if (git == groups.end())
            throw InternalVerification("real bracket lands outside the grading");
          const Vec coords = git->second.to_real * group_flat(wt, z);
          Element val;
          Vec rv(coords.size(), GR(0));
          for (int k = 0; k < static_cast<int>(coords.size()); ++k) {
            if (!coords[k].is_real())
              throw InternalVerification("real form bracket has a non-real coordinate");
            rv[k] = coords[k];
          }
          val.parts[{wt, 0}] = std::move(rv);
          val.prune();
          if (!val.is_zero()) ra.set_bracket({wa1, 0}, ia, {wb1, 0}, ib, val);
        }
      }
    }
  }
  ra.seal();

  RealFormResult out;
  out.dim = ra.total_dim();
  out.algebra = std::move(ra);
  return out;
}

}  // namespace crsym

#include "crsym/homspace.hpp"

#include <stdexcept>

#include "crsym/errors.hpp"

namespace crsym {

bool HomElement::is_zero() const {
  for (const auto& [w, m] : blocks)
    if (!m.is_zero()) return false;
  return true;
}

HomElement& HomElement::operator+=(const HomElement& o) {
  if (deg != o.deg) throw std::invalid_argument("adding homs of different degrees");
  for (const auto& [w, m] : o.blocks) {
    auto it = blocks.find(w);
    if (it == blocks.end())
      blocks.emplace(w, m);
    else
      it->second = it->second + m;
  }
  return *this;
}

HomElement& HomElement::operator*=(const GaussianRational& c) {
  for (auto& [w, m] : blocks) m = c * m;
  return *this;
}

bool HomElement::operator==(const HomElement& o) const {
  if (deg != o.deg) return false;
  for (const auto& [w, m] : blocks) {
    auto it = o.blocks.find(w);
    if (it == o.blocks.end()) {
      if (!m.is_zero()) return false;
    } else if (!(m - it->second).is_zero()) {
      return false;
    }
  }
  for (const auto& [w, m] : o.blocks)
    if (!blocks.count(w) && !m.is_zero()) return false;
  return true;
}

Element HomElement::apply(const Element& x) const {
  Element out;
  for (const auto& [w, v] : x.parts) {
    auto it = blocks.find(w);
    if (it == blocks.end()) continue;
    Vec img = it->second * v;
    if (vec_is_zero(img)) continue;
    BiWeight t = w + deg;
    auto oit = out.parts.find(t);
    if (oit == out.parts.end())
      out.parts[t] = std::move(img);
    else
      oit->second = vec_add(oit->second, img);
  }
  return out;
}

std::vector<BiWeight> hom_sources(const BigradedAlgebra& a, BiWeight deg) {
  std::vector<BiWeight> src;
  for (const auto& [w, c] : a.components()) {
    (void)c;
    if (w.w1 < 0 && a.has_component(w + deg)) src.push_back(w);
  }
  return src;
}

int hom_flat_dim(const BigradedAlgebra& a, BiWeight deg) {
  int d = 0;
  for (BiWeight w : hom_sources(a, deg)) d += a.dim(w + deg) * a.dim(w);
  return d;
}

Vec hom_to_flat(const BigradedAlgebra& a, const HomElement& f) {
  Vec v(static_cast<size_t>(hom_flat_dim(a, f.deg)));
  size_t off = 0;
  for (BiWeight w : hom_sources(a, f.deg)) {
    int tr = a.dim(w + f.deg), sc = a.dim(w);
    auto it = f.blocks.find(w);
    if (it != f.blocks.end()) {
      const Matrix& m = it->second;
      if (m.rows() != tr || m.cols() != sc) throw std::invalid_argument("hom block shape mismatch");
      for (int r = 0; r < tr; ++r)
        for (int c = 0; c < sc; ++c) v[off + size_t(r) * sc + c] = m.at(r, c);
    }
    off += size_t(tr) * sc;
  }
  for (const auto& [w, m] : f.blocks)
    if (!m.is_zero() && !a.has_component(w + f.deg))
      throw std::invalid_argument("hom has a nonzero block outside the algebra's components");
  return v;
}

HomElement hom_from_flat(const BigradedAlgebra& a, BiWeight deg, const Vec& v) {
  if (int(v.size()) != hom_flat_dim(a, deg)) throw std::invalid_argument("flat hom size mismatch");
  HomElement f{deg, {}};
  size_t off = 0;
  for (BiWeight w : hom_sources(a, deg)) {
    int tr = a.dim(w + deg), sc = a.dim(w);
    Matrix m(tr, sc);
    bool nz = false;
    for (int r = 0; r < tr; ++r)
      for (int c = 0; c < sc; ++c) {
        m.at(r, c) = v[off + size_t(r) * sc + c];
        if (!m.at(r, c).is_zero()) nz = true;
      }
    if (nz) f.blocks[w] = std::move(m);
    off += size_t(tr) * sc;
  }
  return f;
}

std::vector<HomElement> solve_prolongation(const BigradedAlgebra& a, BiWeight deg) {
  return solve_derivations(a, deg, {});
}

std::vector<HomElement> solve_derivations(const BigradedAlgebra& a, BiWeight deg,
                                          const std::vector<Vec>& side_conditions) {
  const int nunk = hom_flat_dim(a, deg);
  if (nunk == 0) return {};

  std::vector<BiWeight> sources = hom_sources(a, deg);
  std::map<BiWeight, size_t> offset;
  {
    size_t off = 0;
    for (BiWeight w : sources) {
      offset[w] = off;
      off += size_t(a.dim(w + deg)) * a.dim(w);
    }
  }
  auto unk = [&](BiWeight src, int r, int c) {
    return int(offset.at(src) + size_t(r) * a.dim(src) + c);
  };

  // negative flat basis
  std::vector<std::pair<BiWeight, int>> neg;
  for (const auto& [w, c] : a.components())
    if (w.w1 < 0)
      for (int i = 0; i < c.dim; ++i) neg.push_back({w, i});

  // Leibniz residual f([u,v]) - [f(u),v] - [u,f(v)] = 0 per unordered pair,
  // expanded as linear forms in the block entries of f.  Every term is a
  // bracket-table lookup:
  //   f([u,v])  hits unknowns (w, r, c) with w the component of [u,v],
  //   [f(u),v]  hits unknowns (wu, r, iu) with coefficient -[e_r(wu+deg), v],
  //   [u,f(v)]  hits unknowns (wv, r, iv) with coefficient -[u, e_r(wv+deg)].
  IncrementalRref acc(nunk);
  for (const Vec& row : side_conditions) {
    if (int(row.size()) != nunk) throw std::invalid_argument("side condition length mismatch");
    if (!vec_is_zero(row)) acc.add_row(row);
  }
  for (size_t i = 0; i < neg.size(); ++i)
    for (size_t j = i + 1; j < neg.size(); ++j) {
      auto [wu, iu] = neg[i];
      auto [wv, iv] = neg[j];
      BiWeight target = wu + wv + deg;
      int dimt = a.dim(target);
      if (dimt == 0) continue;
      std::vector<Vec> block(static_cast<size_t>(dimt), Vec(static_cast<size_t>(nunk)));

      Element b = a.bracket_basis(wu, iu, wv, iv);
      for (const auto& [wb, coeffs] : b.parts) {
        if (!offset.count(wb)) continue;  // block forced zero there
        for (int c = 0; c < int(coeffs.size()); ++c) {
          if (coeffs[size_t(c)].is_zero()) continue;
          for (int r = 0; r < dimt; ++r) block[size_t(r)][size_t(unk(wb, r, c))] += coeffs[size_t(c)];
        }
      }
      if (offset.count(wu)) {
        BiWeight tu = wu + deg;
        for (int r = 0; r < a.dim(tu); ++r) {
          Element e = a.bracket_basis(tu, r, wv, iv);
          for (const auto& [we, vals] : e.parts) {
            if (we != target) throw InternalVerification("Leibniz term outside expected component");
            int col = unk(wu, r, iu);
            for (int k = 0; k < dimt; ++k)
              if (!vals[size_t(k)].is_zero()) block[size_t(k)][size_t(col)] -= vals[size_t(k)];
          }
        }
      }
      if (offset.count(wv)) {
        BiWeight tv = wv + deg;
        for (int r = 0; r < a.dim(tv); ++r) {
          Element e = a.bracket_basis(wu, iu, tv, r);
          for (const auto& [we, vals] : e.parts) {
            if (we != target) throw InternalVerification("Leibniz term outside expected component");
            int col = unk(wv, r, iv);
            for (int k = 0; k < dimt; ++k)
              if (!vals[size_t(k)].is_zero()) block[size_t(k)][size_t(col)] -= vals[size_t(k)];
          }
        }
      }
      for (auto& row : block)
        if (!vec_is_zero(row)) acc.add_row(std::move(row));
    }

  std::vector<HomElement> out;
  for (const Vec& v : nullspace(acc.matrix())) out.push_back(hom_from_flat(a, deg, v));
  return out;
}

HomElement hom_bracket(const BigradedAlgebra& a, const Element& x, const HomElement& f) {
  if (x.parts.size() != 1) throw std::invalid_argument("hom_bracket needs a homogeneous element");
  BiWeight wx = x.parts.begin()->first;
  HomElement out{wx + f.deg, {}};
  for (const auto& [w, c] : a.components()) {
    if (w.w1 >= 0) continue;
    BiWeight t = w + out.deg;
    if (!a.has_component(t)) {
      // the result must vanish here; verified below on the fly
    }
    Matrix m(a.dim(t), c.dim);
    bool nz = false;
    for (int i = 0; i < c.dim; ++i) {
      Element v = a.basis_element(w, i);
      Element img = a.bracket(x, f.apply(v));
      img -= f.apply(a.bracket(x, v));
      img.prune();
      for (const auto& [iw, vals] : img.parts) {
        if (iw != t) throw InternalVerification("hom_bracket image outside expected component");
        for (int r = 0; r < int(vals.size()); ++r)
          if (!vals[size_t(r)].is_zero()) {
            m.at(r, i) = vals[size_t(r)];
            nz = true;
          }
      }
    }
    if (nz) out.blocks[w] = std::move(m);
  }
  return out;
}

std::optional<Vec> express_in_basis(const BigradedAlgebra& a, const std::vector<HomElement>& basis,
                                    const HomElement& g) {
  if (basis.empty()) return g.is_zero() ? std::optional<Vec>(Vec{}) : std::nullopt;
  BiWeight deg = basis.front().deg;
  int n = hom_flat_dim(a, deg);
  Matrix m(n, int(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) {
    Vec col = hom_to_flat(a, basis[j]);
    for (int i = 0; i < n; ++i) m.at(i, int(j)) = col[size_t(i)];
  }
  return solve(m, hom_to_flat(a, g));
}

}  // namespace crsym

#include "crsym/algebra.hpp"

#include <sstream>
#include <stdexcept>

#include "crsym/errors.hpp"

namespace crsym {

std::string to_string(const BiWeight& w) {
  std::ostringstream os;
  os << "(" << w.w1 << "," << w.w2 << ")";
  return os.str();
}

bool Element::is_zero() const {
  for (const auto& [w, v] : parts)
    if (!vec_is_zero(v)) return false;
  return true;
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [w, v] : o.parts) {
    auto it = parts.find(w);
    if (it == parts.end())
      parts.emplace(w, v);
    else
      it->second = vec_add(it->second, v);
  }
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [w, v] : o.parts) {
    auto it = parts.find(w);
    if (it == parts.end())
      parts.emplace(w, vec_scale(GR(-1), v));
    else
      it->second = vec_sub(it->second, v);
  }
  return *this;
}

Element& Element::operator*=(const GaussianRational& c) {
  for (auto& [w, v] : parts) v = vec_scale(c, v);
  return *this;
}

bool Element::operator==(const Element& o) const {
  Element d = *this;
  d -= o;
  return d.is_zero();
}

void Element::prune() {
  for (auto it = parts.begin(); it != parts.end();)
    if (vec_is_zero(it->second))
      it = parts.erase(it);
    else
      ++it;
}

void BigradedAlgebra::add_component(BiWeight w, int dim, std::vector<std::string> labels) {
  if (sealed_) throw std::logic_error("algebra is sealed");
  if (dim <= 0) throw std::invalid_argument("component dimension must be positive");
  if (int(labels.size()) != dim) throw std::invalid_argument("label count != dim");
  if (comps_.count(w)) throw std::invalid_argument("duplicate component " + to_string(w));
  comps_[w] = Component{w, dim, std::move(labels)};
}

void BigradedAlgebra::set_bracket(BiWeight a, int ia, BiWeight b, int ib, const Element& value) {
  if (sealed_) throw std::logic_error("algebra is sealed");
  if (!comps_.count(a) || !comps_.count(b)) throw std::invalid_argument("bracket on unknown component");
  if (ia < 0 || ia >= comps_[a].dim || ib < 0 || ib >= comps_[b].dim)
    throw std::invalid_argument("bracket index out of range");
  if (std::tie(a, ia) >= std::tie(b, ib))
    throw std::invalid_argument("bracket entries must be given with (a,ia) < (b,ib)");
  Element v = value;
  v.prune();
  if (v.is_zero()) return;
  table_[{a, ia, b, ib}] = std::move(v);
}

void BigradedAlgebra::set_involution(BiWeight w, Matrix c) {
  if (sealed_) throw std::logic_error("algebra is sealed");
  if (!comps_.count(w)) throw std::invalid_argument("involution on unknown component");
  const int d = dim(w);
  if (c.rows() != d || c.cols() != d)
    throw std::invalid_argument("involution matrix on " + to_string(w) +
                                " must be " + std::to_string(d) + "x" +
                                std::to_string(d));
  invol_[w] = std::move(c);
}

void BigradedAlgebra::seal() {
  if (sealed_) throw std::logic_error("algebra already sealed");
  for (const auto& [key, val] : table_) {
    const auto& [a, ia, b, ib] = key;
    BiWeight target = a + b;
    for (const auto& [w, v] : val.parts) {
      if (w != target) throw std::logic_error("bracket value outside additive component " + to_string(target));
      if (!comps_.count(w)) throw std::logic_error("bracket value in missing component " + to_string(w));
      if (int(v.size()) != comps_[w].dim) throw std::logic_error("bracket value dimension mismatch");
    }
  }
  if (!invol_.empty()) {
    for (const auto& [w, c] : comps_) {
      (void)c;
      if (!invol_.count(w)) throw std::logic_error("involution missing on component " + to_string(w));
      if (!comps_.count(w.mirror())) throw std::logic_error("involution target component missing");
      const Matrix& m = invol_.at(w);
      if (m.rows() != comps_.at(w.mirror()).dim || m.cols() != comps_.at(w).dim)
        throw std::logic_error("involution matrix shape mismatch at " + to_string(w));
    }
  }
  sealed_ = true;
}

int BigradedAlgebra::dim(BiWeight w) const {
  auto it = comps_.find(w);
  return it == comps_.end() ? 0 : it->second.dim;
}

int BigradedAlgebra::total_dim() const {
  int d = 0;
  for (const auto& [w, c] : comps_) d += c.dim;
  return d;
}

Element BigradedAlgebra::basis_element(BiWeight w, int i) const {
  Element e;
  Vec v(static_cast<size_t>(dim(w)));
  v.at(size_t(i)) = GR(1);
  e.parts[w] = std::move(v);
  return e;
}

Element BigradedAlgebra::bracket_basis(BiWeight a, int ia, BiWeight b, int ib) const {
  if (std::tie(a, ia) == std::tie(b, ib)) return {};
  bool flip = std::tie(a, ia) > std::tie(b, ib);
  auto key = flip ? std::tuple{b, ib, a, ia} : std::tuple{a, ia, b, ib};
  auto it = table_.find(key);
  if (it == table_.end()) return {};
  Element r = it->second;
  if (flip) r *= GR(-1);
  return r;
}

Element BigradedAlgebra::bracket(const Element& x, const Element& y) const {
  for (const auto& [w, v] : x.parts)
    if (!v.empty() && !comps_.count(w)) throw ComponentMismatch("bracket argument in unknown component " + to_string(w));
  for (const auto& [w, v] : y.parts)
    if (!v.empty() && !comps_.count(w)) throw ComponentMismatch("bracket argument in unknown component " + to_string(w));
  Element out;
  for (const auto& [wa, va] : x.parts)
    for (const auto& [wb, vb] : y.parts)
      for (int ia = 0; ia < int(va.size()); ++ia) {
        if (va[size_t(ia)].is_zero()) continue;
        for (int ib = 0; ib < int(vb.size()); ++ib) {
          if (vb[size_t(ib)].is_zero()) continue;
          Element t = bracket_basis(wa, ia, wb, ib);
          if (t.parts.empty()) continue;
          t *= va[size_t(ia)] * vb[size_t(ib)];
          out += t;
        }
      }
  out.prune();
  return out;
}

const Matrix& BigradedAlgebra::involution_matrix(BiWeight w) const { return invol_.at(w); }

Element BigradedAlgebra::conj(const Element& x) const {
  Element out;
  for (const auto& [w, v] : x.parts) {
    auto ci = invol_.find(w);
    if (ci == invol_.end()) throw ComponentMismatch("no involution on component " + to_string(w));
    const Matrix& c = ci->second;
    Vec img = c * vec_conj(v);
    BiWeight t = w.mirror();
    auto it = out.parts.find(t);
    if (it == out.parts.end())
      out.parts[t] = std::move(img);
    else
      it->second = vec_add(it->second, img);
  }
  out.prune();
  return out;
}

std::pair<BiWeight, int> BigradedAlgebra::flat_to_comp(int flat) const {
  for (const auto& [w, c] : comps_) {
    if (flat < c.dim) return {w, flat};
    flat -= c.dim;
  }
  throw std::out_of_range("flat index out of range");
}

int BigradedAlgebra::comp_to_flat(BiWeight w, int i) const {
  int off = 0;
  for (const auto& [cw, c] : comps_) {
    if (cw == w) return off + i;
    off += c.dim;
  }
  throw std::out_of_range("unknown component " + to_string(w));
}

Vec BigradedAlgebra::element_to_flat(const Element& x) const {
  Vec v(static_cast<size_t>(total_dim()));
  for (const auto& [w, part] : x.parts) {
    int off = comp_to_flat(w, 0);
    for (size_t i = 0; i < part.size(); ++i) v[size_t(off) + i] = part[i];
  }
  return v;
}

Element BigradedAlgebra::flat_to_element(const Vec& v) const {
  Element e;
  int off = 0;
  for (const auto& [w, c] : comps_) {
    Vec part(v.begin() + off, v.begin() + off + c.dim);
    if (!vec_is_zero(part)) e.parts[w] = std::move(part);
    off += c.dim;
  }
  return e;
}

Matrix BigradedAlgebra::ad(const Element& x) const {
  int n = total_dim();
  Matrix m(n, n);
  int col = 0;
  for (const auto& [w, c] : comps_) {
    for (int i = 0; i < c.dim; ++i, ++col) {
      Element img = bracket(x, basis_element(w, i));
      if (img.is_zero()) continue;
      Vec f = element_to_flat(img);
      for (int r = 0; r < n; ++r)
        if (!f[size_t(r)].is_zero()) m.at(r, col) = f[size_t(r)];
    }
  }
  return m;
}

JacobiReport BigradedAlgebra::jacobi_check() const {
  JacobiReport rep;
  int n = total_dim();
  std::vector<Element> basis(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto [w, k] = flat_to_comp(i);
    basis[size_t(i)] = basis_element(w, k);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Element bij = bracket(basis[size_t(i)], basis[size_t(j)]);
      for (int k = j + 1; k < n; ++k) {
        Element s = bracket(bij, basis[size_t(k)]);
        s += bracket(bracket(basis[size_t(j)], basis[size_t(k)]), basis[size_t(i)]);
        s += bracket(bracket(basis[size_t(k)], basis[size_t(i)]), basis[size_t(j)]);
        ++rep.triples_checked;
        if (!s.is_zero()) {
          s.prune();
          rep.violations.push_back({i, j, k, std::move(s)});
        }
      }
    }
  return rep;
}

std::string BigradedAlgebra::involution_check() const {
  if (invol_.empty()) return "no involution set";
  for (const auto& [w, c] : comps_) {
    for (int i = 0; i < c.dim; ++i) {
      Element e = basis_element(w, i);
      if (!(conj(conj(e)) == e)) return "involution does not square to identity on " + to_string(w);
    }
  }
  int n = total_dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto [wa, ia] = flat_to_comp(i);
      auto [wb, ib] = flat_to_comp(j);
      Element x = basis_element(wa, ia), y = basis_element(wb, ib);
      if (!(conj(bracket(x, y)) == bracket(conj(x), conj(y))))
        return "involution incompatible with bracket at basis pair (" + std::to_string(i) + "," +
               std::to_string(j) + ")";
    }
  return "";
}

Matrix BigradedAlgebra::killing() const {
  int n = total_dim();
  std::vector<Matrix> ads;
  ads.reserve(size_t(n));
  for (int i = 0; i < n; ++i) {
    auto [w, k] = flat_to_comp(i);
    ads.push_back(ad(basis_element(w, k)));
  }
  Matrix kf(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      GaussianRational tr;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          const GaussianRational& a = ads[size_t(i)].at(r, c);
          if (a.is_zero()) continue;
          const GaussianRational& b = ads[size_t(j)].at(c, r);
          if (b.is_zero()) continue;
          tr += a * b;
        }
      kf.at(i, j) = tr;
      kf.at(j, i) = tr;
    }
  return kf;
}

BigradedAlgebra BigradedAlgebra::collapsed_second_weight() const {
  BigradedAlgebra out;
  // Offsets of each original component inside its merged component; map order
  // already iterates (w1, w2) lexicographically, so j increases within w1.
  std::map<BiWeight, int> offset;
  std::map<int, std::pair<int, std::vector<std::string>>> merged;
  for (const auto& [w, c] : comps_) {
    auto& m = merged[w.w1];
    offset[w] = m.first;
    m.first += c.dim;
    for (const auto& l : c.labels) m.second.push_back(l);
  }
  for (auto& [w1, m] : merged) out.add_component({w1, 0}, m.first, std::move(m.second));

  for (const auto& [key, val] : table_) {
    const auto& [a, ia, b, ib] = key;
    Element v;
    for (const auto& [w, vec] : val.parts) {
      BiWeight t{w.w1, 0};
      auto& slot = v.parts[t];
      if (slot.empty()) slot.assign(size_t(merged.at(w.w1).first), GR(0));
      for (std::size_t i = 0; i < vec.size(); ++i) slot[size_t(offset.at(w)) + i] += vec[i];
    }
    v.prune();
    if (!v.is_zero()) out.set_bracket({a.w1, 0}, offset.at(a) + ia, {b.w1, 0}, offset.at(b) + ib, v);
  }
  out.seal();
  return out;
}

}  // namespace crsym

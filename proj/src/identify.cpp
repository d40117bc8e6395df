#include "crsym/identify.hpp"

#include <map>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "crsym/classify.hpp"

namespace crsym {

namespace {

// Process-wide model cache keyed by canonical name.
const GoldenModel& cached_golden(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, GoldenModel> table;
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(name);
  if (it == table.end()) it = table.emplace(name, build_golden(name)).first;
  return it->second;
}

int dim_at(const Fingerprint& fp, int w1, int w2) {
  auto it = fp.dims.find(BiWeight{w1, w2});
  return it == fp.dims.end() ? 0 : it->second;
}

// Dimension-ledger naming for the block families, whose Killing form is
// degenerate: the ledger of a one-3-block profile with n1 1-blocks, or of a
// profile of n2 2-blocks and n1 1-blocks, determines the block sizes.
std::string block_profile_name(const Fingerprint& fp) {
  const int n = dim_at(fp, -1, 1);
  if (dim_at(fp, 0, 2) != 1) return "unrecognized";
  const int d00 = dim_at(fp, 0, 0);
  const int d11 = dim_at(fp, 1, 1);
  const int d1m1 = dim_at(fp, 1, -1);
  const int d20 = dim_at(fp, 2, 0);
  if (d11 == 1 && d1m1 == 1 && d20 == 0) {
    const int n1 = n - 3;
    if (n1 >= 0 && d00 == 5 + 2 * n1 + n1 * n1) {
      std::string name = "nilpotent(3";
      for (int i = 0; i < n1; ++i) name += ",1";
      return name + ")";
    }
    return "unrecognized";
  }
  if (d11 == n && d1m1 == n && d20 == 1) {
    for (int n2 = 1; 2 * n2 <= n; ++n2) {
      const int n1 = n - 2 * n2;
      if (d00 == 3 + n2 + 4 * (n2 * (n2 - 1) / 2) + 2 * n1 * n2 + n1 * n1) {
        std::string name = "nilpotent(";
        for (int i = 0; i < n2; ++i) name += (i ? ",2" : "2");
        for (int i = 0; i < n1; ++i) name += ",1";
        return name + ")";
      }
    }
  }
  return "unrecognized";
}

// Recover the defining pair (H, M) from the negative brackets of a computed
// prolongation — [e_a, ebar_b] = H_ab e0 and [f1, ebar_b] = sum_a M_ab e_a —
// and name the real form by the family tag of that symbol.  Returns "" when
// the layout does not carry the expected components or the symbol is not
// classifiable.
std::string arbitrate_by_symbol(const BigradedAlgebra& alg, int n_hint) {
  const BiWeight wE0{-2, 0}, wEbar{-1, -1}, wE{-1, 1}, wF{0, 2};
  if (!alg.has_component(wE0) || !alg.has_component(wEbar) ||
      !alg.has_component(wE) || !alg.has_component(wF))
    return "";
  const std::size_t n = alg.dim(wE);
  if (n != static_cast<std::size_t>(n_hint) || alg.dim(wEbar) != n ||
      alg.dim(wE0) != 1 || alg.dim(wF) != 1)
    return "";

  Matrix H(n, n), M(n, n);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < n; ++a) {
      Element h = alg.bracket_basis(wE, a, wEbar, b);
      if (auto it = h.parts.find(wE0); it != h.parts.end())
        H.at(a, b) = it->second[0];
    }
    Element m = alg.bracket_basis(wF, 0, wEbar, b);
    if (auto it = m.parts.find(wE); it != m.parts.end())
      for (std::size_t a = 0; a < n; ++a) M.at(a, b) = it->second[a];
  }

  try {
    const Classification c = classify(SymbolInput{H, {M}});
    if (const auto* d = std::get_if<TagDefinite>(&c.tag))
      return "so(" + std::to_string(d->p + 2) + "," + std::to_string(d->q + 2) +
             ")";
    if (const auto* s = std::get_if<TagSplit>(&c.tag))
      return "so*(" + std::to_string(2 * s->p + 4) + ")";
  } catch (const ValidationError&) {
  } catch (const NotRegular&) {
  }
  return "";
}

}  // namespace

Identification identify_real_form(const ProlongationResult& pro) {
  Identification id;
  id.fingerprint = fingerprint_of(pro);
  const Fingerprint& fp = id.fingerprint;

  bool has_positive = false;
  for (const auto& [w, d] : fp.dims)
    if (w.w1 > 0 && d > 0) has_positive = true;
  if (!has_positive) {
    id.name = "g0-only";
    return id;
  }

  if (fp.semisimple) {
    const int n = dim_at(fp, -1, 1);
    std::vector<const GoldenModel*> candidates;
    for (int q = 0; 2 * q <= n; ++q) {
      const int p = n - q;
      const GoldenModel& g = cached_golden("so(" + std::to_string(p + 2) + "," +
                                           std::to_string(q + 2) + ")");
      if (fp == g.fingerprint) candidates.push_back(&g);
    }
    if (n >= 2 && n % 2 == 0) {
      const GoldenModel& g = cached_golden("so*(" + std::to_string(n + 4) + ")");
      if (fp == g.fingerprint) candidates.push_back(&g);
    }
    if (candidates.size() == 1) {
      id.name = candidates.front()->name;
      id.matched_golden = true;
      return id;
    }
    if (candidates.size() > 1) {
      // Distinct models can share a fingerprint: with a+b = 2m, the pair
      // so(a,b) / so*(2m) has equal dimension and equal Killing signature
      // exactly when m is a perfect square (first at so(6,2) vs so*(8),
      // both of dimension 28 with signature (12,16)).  The fingerprint
      // cannot arbitrate, but the symbol recovered from the negative
      // brackets can: its family tag decides which real form this is.
      const std::string name = arbitrate_by_symbol(pro.algebra, n);
      for (const GoldenModel* g : candidates) {
        if (g->name == name) {
          id.name = name;
          id.matched_golden = true;
          return id;
        }
      }
    }
    id.name = "unrecognized";
    return id;
  }

  id.name = block_profile_name(fp);
  return id;
}

}  // namespace crsym

#include "crsym/json_io.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "crsym/errors.hpp"

namespace crsym {

namespace {

using Json = nlohmann::ordered_json;

Json entry_json(const GR& z) {
  return Json{{"re", to_string(z.re)}, {"im", to_string(z.im)}};
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(entry_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

GR entry_from_json(const Json& v) {
  try {
    if (v.is_number_integer()) return GR(Rational(v.get<long long>()));
    if (v.is_string()) return GR(parse_rational(v.get<std::string>()));
    if (v.is_object()) {
      Rational re(0), im(0);
      if (v.contains("re")) {
        const Json& r = v.at("re");
        re = r.is_number_integer() ? Rational(r.get<long long>())
                                   : parse_rational(r.get<std::string>());
      }
      if (v.contains("im")) {
        const Json& r = v.at("im");
        im = r.is_number_integer() ? Rational(r.get<long long>())
                                   : parse_rational(r.get<std::string>());
      }
      return GR(std::move(re), std::move(im));
    }
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(std::string("bad matrix entry: ") + e.what());
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("bad matrix entry: ") + e.what());
  }
  throw MalformedInput("matrix entries must be integers, rational strings, or re/im objects");
}

Matrix matrix_from_json(const Json& v, const char* what) {
  if (!v.is_array() || v.empty())
    throw MalformedInput(std::string(what) + " must be a nonempty array of rows");
  const int rows = int(v.size());
  const int cols = int(v.at(0).is_array() ? v.at(0).size() : 0);
  if (cols == 0) throw MalformedInput(std::string(what) + " rows must be nonempty arrays");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = v.at(std::size_t(i));
    if (!row.is_array() || int(row.size()) != cols)
      throw MalformedInput(std::string(what) + " rows must all have the same length");
    for (int j = 0; j < cols; ++j) m.at(i, j) = entry_from_json(row.at(std::size_t(j)));
  }
  return m;
}

int int_field(const Json& v, const char* key) {
  if (!v.contains(key) || !v.at(key).is_number_integer())
    throw MalformedInput(std::string("missing integer field \"") + key + "\"");
  return v.at(key).get<int>();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

SymbolInput parse_symbol_json(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw MalformedInput("symbol JSON must be an object");

  if (root.contains("form")) {
    const std::string form = root.at("form").is_string()
                                 ? root.at("form").get<std::string>()
                                 : throw MalformedInput("\"form\" must be a string");
    FamilyTag tag;
    if (form == "I") {
      tag = TagDefinite{int_field(root, "p"), int_field(root, "q")};
    } else if (form == "II") {
      tag = TagSplit{int_field(root, "p")};
    } else if (form == "nilpotent") {
      if (!root.contains("blocks") || !root.at("blocks").is_array())
        throw MalformedInput("nilpotent descriptor needs a \"blocks\" array");
      TagNilpotent t;
      for (const Json& b : root.at("blocks"))
        t.blocks.push_back({int_field(b, "k"), int_field(b, "eps")});
      tag = std::move(t);
    } else if (form == "non_nilpotent") {
      tag = TagNonNilpotent{int_field(root, "p"), int_field(root, "q"),
                            int_field(root, "p1"), int_field(root, "q1"),
                            int_field(root, "alpha_sign")};
    } else {
      throw MalformedInput("unknown form \"" + form + "\"");
    }
    return emit_normal_form(tag);
  }

  if (!root.contains("hermitian") || !root.contains("operators"))
    throw MalformedInput("symbol JSON needs \"hermitian\" and \"operators\" (or a \"form\")");
  SymbolInput in;
  in.H = matrix_from_json(root.at("hermitian"), "\"hermitian\"");
  if (!root.at("operators").is_array())
    throw MalformedInput("\"operators\" must be an array of matrices");
  for (const Json& op : root.at("operators"))
    in.Ms.push_back(matrix_from_json(op, "operator"));
  if (root.contains("n") && int_field(root, "n") != in.n())
    throw MalformedInput("\"n\" disagrees with the matrix size");
  if (root.contains("kernel_rank") && int_field(root, "kernel_rank") != in.r())
    throw MalformedInput("\"kernel_rank\" disagrees with the operator count");
  return in;
}

std::string symbol_to_json(const SymbolInput& in) {
  Json root;
  root["n"] = in.n();
  root["kernel_rank"] = in.r();
  root["hermitian"] = matrix_json(in.H);
  Json ops = Json::array();
  for (const Matrix& m : in.Ms) ops.push_back(matrix_json(m));
  root["operators"] = std::move(ops);
  return dump(root);
}

namespace {

Json algebra_body(const BigradedAlgebra& a) {
  Json root;
  root["field"] = "gaussian_rational";

  Json comps = Json::array();
  std::vector<std::pair<BiWeight, int>> flat;
  for (const auto& [w, c] : a.components()) {
    comps.push_back(Json{{"weight", Json::array({w.w1, w.w2})},
                         {"dim", c.dim},
                         {"labels", c.labels}});
    for (int i = 0; i < c.dim; ++i) flat.emplace_back(w, i);
  }
  root["components"] = std::move(comps);

  Json brackets = Json::array();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      const auto& [wa, ia] = flat[i];
      const auto& [wb, ib] = flat[j];
      Element v = a.bracket_basis(wa, ia, wb, ib);
      v.prune();
      if (v.parts.empty()) continue;
      Json value = Json::array();
      for (const auto& [wt, coords] : v.parts) {
        if (!(wt == wa + wb))
          throw InternalVerification("bracket value escapes the weight grading");
        for (int k = 0; k < int(coords.size()); ++k)
          if (!coords[std::size_t(k)].is_zero()) {
            Json e = entry_json(coords[std::size_t(k)]);
            Json entry;
            entry["idx"] = k;
            entry["re"] = e["re"];
            entry["im"] = e["im"];
            value.push_back(std::move(entry));
          }
      }
      brackets.push_back(Json{{"a", Json::array({wa.w1, wa.w2, ia})},
                              {"b", Json::array({wb.w1, wb.w2, ib})},
                              {"value", std::move(value)}});
    }
  }
  root["brackets"] = std::move(brackets);

  Json invol = Json::array();
  if (a.has_involution()) {
    for (const auto& [w, c] : a.components()) {
      (void)c;
      invol.push_back(Json{{"from", Json::array({w.w1, w.w2})},
                           {"matrix", matrix_json(a.involution_matrix(w))}});
    }
  }
  root["involution"] = std::move(invol);
  return root;
}

}  // namespace

std::string algebra_to_json(const BigradedAlgebra& a) { return dump(algebra_body(a)); }

namespace {

BiWeight weight_from_json(const Json& v, const char* what) {
  if (!v.is_array() || v.size() < 2 || !v.at(0).is_number_integer() ||
      !v.at(1).is_number_integer())
    throw MalformedInput(std::string(what) + " must be an [i,j] integer pair");
  return BiWeight{v.at(0).get<int>(), v.at(1).get<int>()};
}

}  // namespace

BigradedAlgebra algebra_from_json(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("components") || !root.at("components").is_array())
    throw MalformedInput("algebra JSON needs a \"components\" array");

  BigradedAlgebra a;
  for (const Json& c : root.at("components")) {
    BiWeight w = weight_from_json(c.contains("weight") ? c.at("weight") : Json(), "\"weight\"");
    const int dim = int_field(c, "dim");
    std::vector<std::string> labels;
    if (c.contains("labels")) {
      if (!c.at("labels").is_array())
        throw MalformedInput("component \"labels\" must be an array");
      for (const Json& l : c.at("labels")) {
        if (!l.is_string()) throw MalformedInput("labels must be strings");
        labels.push_back(l.get<std::string>());
      }
    }
    if (!labels.empty() && int(labels.size()) != dim)
      throw MalformedInput("component label count disagrees with its dimension");
    if (labels.empty())
      for (int i = 0; i < dim; ++i) labels.push_back("b" + std::to_string(i));
    try {
      a.add_component(w, dim, labels);
    } catch (const std::logic_error& e) {
      throw MalformedInput(std::string("bad component: ") + e.what());
    }
  }

  if (root.contains("brackets")) {
    if (!root.at("brackets").is_array())
      throw MalformedInput("\"brackets\" must be an array");
    for (const Json& b : root.at("brackets")) {
      if (!b.contains("a") || !b.contains("b") || !b.contains("value") ||
          !b.at("a").is_array() || b.at("a").size() != 3 || !b.at("b").is_array() ||
          b.at("b").size() != 3 || !b.at("value").is_array())
        throw MalformedInput("bracket entries need \"a\":[i,j,idx], \"b\":[i,j,idx], \"value\"");
      BiWeight wa = weight_from_json(b.at("a"), "bracket \"a\"");
      BiWeight wb = weight_from_json(b.at("b"), "bracket \"b\"");
      if (!b.at("a").at(2).is_number_integer() || !b.at("b").at(2).is_number_integer())
        throw MalformedInput("bracket basis indices must be integers");
      const int ia = b.at("a").at(2).get<int>();
      const int ib = b.at("b").at(2).get<int>();
      if (!a.has_component(wa) || !a.has_component(wb))
        throw MalformedInput("bracket references a missing component");
      if (ia < 0 || ia >= a.dim(wa) || ib < 0 || ib >= a.dim(wb))
        throw MalformedInput("bracket basis index out of range");
      if (!(wa < wb || (wa == wb && ia < ib)))
        throw MalformedInput("brackets must be stored with the first element smaller");
      const BiWeight wt = wa + wb;
      if (!a.has_component(wt) && !b.at("value").empty())
        throw MalformedInput("bracket value lands outside the algebra");
      Element val;
      if (!b.at("value").empty()) {
        Vec coords(std::size_t(a.dim(wt)), GR(0));
        for (const Json& e : b.at("value")) {
          const int k = int_field(e, "idx");
          if (k < 0 || k >= a.dim(wt))
            throw MalformedInput("bracket value index out of range");
          coords[std::size_t(k)] = entry_from_json(e);
        }
        val.parts[wt] = std::move(coords);
      }
      try {
        a.set_bracket(wa, ia, wb, ib, val);
      } catch (const std::logic_error& e) {
        throw MalformedInput(std::string("bad bracket: ") + e.what());
      }
    }
  }

  if (root.contains("involution")) {
    if (!root.at("involution").is_array())
      throw MalformedInput("\"involution\" must be an array");
    for (const Json& iv : root.at("involution")) {
      if (!iv.contains("from") || !iv.contains("matrix"))
        throw MalformedInput("involution entries need \"from\" and \"matrix\"");
      BiWeight w = weight_from_json(iv.at("from"), "involution \"from\"");
      if (!a.has_component(w))
        throw MalformedInput("involution references a missing component");
      try {
        a.set_involution(w, matrix_from_json(iv.at("matrix"), "involution matrix"));
      } catch (const std::logic_error& e) {
        throw MalformedInput(std::string("bad involution: ") + e.what());
      }
    }
  }

  try {
    a.seal();
  } catch (const std::logic_error& e) {
    throw MalformedInput(std::string("inconsistent algebra file: ") + e.what());
  }
  return a;
}

std::string golden_to_json(const GoldenModel& g) {
  Json root = algebra_body(g.algebra);
  root["name"] = g.name;
  Json fp;
  fp["dim"] = g.fingerprint.complex_dim;
  const Signature& s = g.fingerprint.killing_signature;
  fp["killing_signature"] = s.zero == 0 ? Json::array({s.pos, s.neg})
                                        : Json::array({s.pos, s.neg, s.zero});
  fp["semisimple"] = g.fingerprint.semisimple;
  Json dims;
  for (const auto& [w, d] : g.fingerprint.dims) dims[to_string(w)] = d;
  fp["dims"] = std::move(dims);
  root["fingerprint"] = std::move(fp);
  return dump(root);
}

std::string classification_to_json(const Classification& c) {
  Json root;
  struct Visit {
    Json& root;
    void operator()(const TagDefinite& t) const {
      root["family"] = "I";
      root["p"] = t.p;
      root["q"] = t.q;
    }
    void operator()(const TagSplit& t) const {
      root["family"] = "II";
      root["p"] = t.p;
    }
    void operator()(const TagNilpotent& t) const {
      root["family"] = "nilpotent";
      Json blocks = Json::array();
      for (const NilBlock& b : t.blocks)
        blocks.push_back(Json{{"k", b.k}, {"eps", b.eps}});
      root["blocks"] = std::move(blocks);
    }
    void operator()(const TagNonNilpotent& t) const {
      root["family"] = "non_nilpotent";
      root["p"] = t.p;
      root["q"] = t.q;
      root["p1"] = t.p1;
      root["q1"] = t.q1;
    }
  };
  std::visit(Visit{root}, c.tag);
  root["alpha_sign"] = c.invariants.alpha_sign;

  Json inv;
  inv["alpha"] = to_string(c.invariants.alpha);
  inv["alpha_sign"] = c.invariants.alpha_sign;
  inv["sig_l"] = Json::array({c.invariants.sig_l.pos, c.invariants.sig_l.neg});
  inv["rank_A"] = c.invariants.rank_A;
  inv["rank_A2"] = c.invariants.rank_A2;
  root["invariants"] = std::move(inv);

  Json bc;
  bc["g"] = matrix_json(c.change.g);
  bc["l_scale"] = to_string(c.change.l_scale);
  bc["a_scale"] = entry_json(c.change.a_scale);
  bc["exact"] = c.change.exact;
  if (!c.change.residuals.empty()) bc["residuals"] = c.change.residuals;
  root["basis_change"] = std::move(bc);

  root["verified"] = c.verified;
  return dump(root);
}

std::string prolongation_to_json(const ProlongationResult& pro) {
  Json root = algebra_body(pro.algebra);
  Json dims;
  for (const auto& [w, d] : pro.dims) dims[to_string(w)] = d;
  root["dims"] = std::move(dims);
  root["total_complex"] = pro.total_complex;
  root["terminated_at"] = pro.terminated_at;
  root["capped"] = pro.capped;
  return dump(root);
}

std::string identification_to_json(const Identification& id) {
  Json root;
  root["name"] = id.name;
  Json fp;
  fp["dim"] = id.fingerprint.complex_dim;
  const Signature& s = id.fingerprint.killing_signature;
  fp["killing_signature"] = s.zero == 0 ? Json::array({s.pos, s.neg})
                                        : Json::array({s.pos, s.neg, s.zero});
  fp["semisimple"] = id.fingerprint.semisimple;
  root["fingerprint"] = std::move(fp);
  root["matched_golden"] = id.matched_golden;
  return dump(root);
}

}  // namespace crsym

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crsym/classify.hpp"
#include "crsym/errors.hpp"
#include "crsym/golden.hpp"
#include "crsym/identify.hpp"
#include "crsym/json_io.hpp"
#include "crsym/prolong.hpp"
#include "crsym/symbol.hpp"
#include "crsym/table.hpp"

namespace {

using namespace crsym;
using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw MalformedInput("cannot write file: " + out_path);
  out << text;
}

std::string error_report(const std::string& kind, const std::string& message) {
  Json root;
  root["error"] = kind;
  root["message"] = message;
  return root.dump(2) + "\n";
}

// Shared symbol-source options: a JSON file or normal-form flags.
struct SymbolArgs {
  std::string file;
  std::string form;
  int p = -1;
  int q = 0;
  std::string blocks;
  std::string profile;
};

void add_symbol_options(CLI::App* cmd, SymbolArgs& a) {
  cmd->add_option("input", a.file, "symbol JSON file (matrices or a descriptor)");
  cmd->add_option("--form", a.form, "normal-form family: I, II, nilpotent, non_nilpotent");
  cmd->add_option("--p", a.p, "signature count p (forms I and II)");
  cmd->add_option("--q", a.q, "signature count q (form I; default 0)");
  cmd->add_option("--blocks", a.blocks, "block list for --form nilpotent, e.g. 3+,1-");
  cmd->add_option("--profile", a.profile,
                  "p,q,p1,q1,sign for --form non_nilpotent, e.g. 2,1,1,1,-1");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int int_token(const std::string& tok, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw MalformedInput(std::string("bad ") + what + ": '" + tok + "'");
  }
}

SymbolInput load_symbol(const SymbolArgs& a) {
  if (!a.file.empty() && !a.form.empty())
    throw MalformedInput("give a symbol file or --form, not both");
  if (!a.file.empty()) return parse_symbol_json(read_file(a.file));
  if (a.form.empty())
    throw MalformedInput("no symbol given: pass a JSON file or --form with its parameters");

  FamilyTag tag;
  if (a.form == "I") {
    if (a.p < 0) throw MalformedInput("--form I needs --p (and optionally --q)");
    tag = TagDefinite{a.p, a.q};
  } else if (a.form == "II") {
    if (a.p < 0) throw MalformedInput("--form II needs --p");
    tag = TagSplit{a.p};
  } else if (a.form == "nilpotent") {
    if (a.blocks.empty()) throw MalformedInput("--form nilpotent needs --blocks");
    TagNilpotent t;
    for (const std::string& tok : split(a.blocks, ',')) {
      if (tok.empty()) throw MalformedInput("empty block token in --blocks");
      int eps = 1;
      std::string digits = tok;
      if (tok.back() == '+' || tok.back() == '-') {
        eps = tok.back() == '+' ? 1 : -1;
        digits = tok.substr(0, tok.size() - 1);
      }
      t.blocks.push_back({int_token(digits, "block size"), eps});
    }
    tag = std::move(t);
  } else if (a.form == "non_nilpotent") {
    if (a.profile.empty()) throw MalformedInput("--form non_nilpotent needs --profile");
    std::vector<std::string> toks = split(a.profile, ',');
    if (toks.size() != 5)
      throw MalformedInput("--profile needs five comma-separated values: p,q,p1,q1,sign");
    tag = TagNonNilpotent{int_token(toks[0], "profile p"), int_token(toks[1], "profile q"),
                          int_token(toks[2], "profile p1"), int_token(toks[3], "profile q1"),
                          int_token(toks[4], "profile sign")};
  } else {
    throw MalformedInput("unknown --form '" + a.form + "'");
  }
  return emit_normal_form(tag);
}

int guarded(const std::string& out_path, const std::function<int()>& body) {
  try {
    return body();
  } catch (const NotRegular& e) {
    try {
      write_output(error_report("not_regular", e.what()), out_path);
    } catch (...) {
    }
    std::cerr << "not regular: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    try {
      write_output(error_report("validation", e.what()), out_path);
    } catch (...) {
    }
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal verification failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    try {
      write_output(error_report("error", e.what()), out_path);
    } catch (...) {
    }
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic engine for bigraded symbol algebras: "
               "validation, classification, prolongation, identification"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "output file (default: stdout)")->configurable(false);

  int max_degree = 10;
  std::string verify_level = "full";
  std::string format = "json";

  SymbolArgs sym_validate, sym_classify, sym_prolong, sym_identify;

  CLI::App* cmd_validate =
      app.add_subcommand("validate", "structural validation and regularity check");
  add_symbol_options(cmd_validate, sym_validate);

  CLI::App* cmd_classify =
      app.add_subcommand("classify", "normal form, invariants, and basis-change witness");
  add_symbol_options(cmd_classify, sym_classify);

  CLI::App* cmd_prolong =
      app.add_subcommand("prolong", "full bigraded prolongation with brackets and involution");
  add_symbol_options(cmd_prolong, sym_prolong);
  cmd_prolong->add_option("--max-degree", max_degree, "degree cap (default 10)")
      ->check(CLI::PositiveNumber);
  cmd_prolong->add_option("--verify", verify_level, "fast | full (default full)")
      ->check(CLI::IsMember({"fast", "full"}));

  CLI::App* cmd_identify =
      app.add_subcommand("identify", "prolong and name the real form");
  add_symbol_options(cmd_identify, sym_identify);
  cmd_identify->add_option("--max-degree", max_degree, "degree cap (default 10)")
      ->check(CLI::PositiveNumber);
  cmd_identify->add_option("--verify", verify_level, "fast | full (default full)")
      ->check(CLI::IsMember({"fast", "full"}));

  std::string golden_name;
  CLI::App* cmd_golden = app.add_subcommand("golden", "emit a reference model by name");
  cmd_golden->add_option("name", golden_name, "so(a,b) | so*(2m) | nilpotent(3,1,...)")
      ->required();

  std::vector<int> table_dims;
  CLI::App* cmd_table =
      app.add_subcommand("table", "enumerate all families for manifold dimensions");
  cmd_table->add_option("dims", table_dims, "odd manifold dimensions >= 5")->required();
  cmd_table->add_option("--format", format, "json | csv | md (default json)")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  cmd_table->add_option("--verify", verify_level, "fast | full (default full)")
      ->check(CLI::IsMember({"fast", "full"}));

  std::string jacobi_file;
  CLI::App* cmd_jacobi =
      app.add_subcommand("check-jacobi", "re-verify a saved algebra file");
  cmd_jacobi->add_option("input", jacobi_file, "algebra JSON file")->required();

  // Let --out (defined on the top-level app) appear after the subcommand too.
  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  const bool full_verify = verify_level == "full";

  if (*cmd_validate) {
    return guarded(out_path, [&] {
      SymbolInput in = validate_symbol(load_symbol(sym_validate));
      RegularityReport reg = check_regular(in);
      Json root;
      root["valid"] = true;
      root["n"] = in.n();
      root["kernel_rank"] = in.r();
      root["dim_M"] = in.dim_M();
      root["regular"] = reg.regular;
      if (reg.has_alpha) root["alpha"] = to_string(reg.alpha);
      if (!reg.regular) root["witness"] = reg.witness;
      write_output(root.dump(2) + "\n", out_path);
      return reg.regular ? 0 : 2;
    });
  }
  if (*cmd_classify) {
    return guarded(out_path, [&] {
      Classification c = classify(validate_symbol(load_symbol(sym_classify)));
      write_output(classification_to_json(c), out_path);
      return 0;
    });
  }
  if (*cmd_prolong) {
    return guarded(out_path, [&] {
      SymbolAlgebra sym = build_symbol(validate_symbol(load_symbol(sym_prolong)));
      ProlongationOptions opt;
      opt.max_degree = max_degree;
      opt.verify = full_verify;
      write_output(prolongation_to_json(prolong(sym, opt)), out_path);
      return 0;
    });
  }
  if (*cmd_identify) {
    return guarded(out_path, [&] {
      SymbolAlgebra sym = build_symbol(validate_symbol(load_symbol(sym_identify)));
      ProlongationOptions opt;
      opt.max_degree = max_degree;
      opt.verify = full_verify;
      Identification id = identify_real_form(prolong(sym, opt));
      write_output(identification_to_json(id), out_path);
      return 0;
    });
  }
  if (*cmd_golden) {
    return guarded(out_path, [&] {
      GoldenModel g = build_golden(golden_name);
      JacobiReport jr = g.algebra.jacobi_check();
      if (!jr.ok())
        throw InternalVerification("model fails the Jacobi identity");
      write_output(golden_to_json(g), out_path);
      return 0;
    });
  }
  if (*cmd_table) {
    return guarded(out_path, [&] {
      std::vector<DimensionTable> tables;
      for (int d : table_dims) tables.push_back(enumerate_table(d, full_verify));
      std::string text = format == "csv"  ? table_to_csv(tables)
                         : format == "md" ? table_to_markdown(tables)
                                          : table_to_json(tables);
      write_output(text, out_path);
      return 0;
    });
  }
  if (*cmd_jacobi) {
    return guarded(out_path, [&] {
      BigradedAlgebra a = algebra_from_json(read_file(jacobi_file));
      JacobiReport jr = a.jacobi_check();
      std::string invol = a.involution_check();
      Json root;
      root["jacobi_ok"] = jr.ok();
      root["triples_checked"] = jr.triples_checked;
      root["violations"] = int(jr.violations.size());
      root["involution_ok"] = invol.empty();
      if (!invol.empty()) root["involution_witness"] = invol;
      write_output(root.dump(2) + "\n", out_path);
      return jr.ok() && invol.empty() ? 0 : 3;
    });
  }
  return 1;
}

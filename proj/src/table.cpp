#include "crsym/table.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "crsym/errors.hpp"
#include "crsym/identify.hpp"
#include "crsym/prolong.hpp"
#include "crsym/symbol.hpp"

namespace crsym {

std::vector<FamilyTag> enumerate_families(int n) {
  std::vector<FamilyTag> tags;

  for (int q = 0; 2 * q <= n; ++q) tags.push_back(TagDefinite{n - q, q});
  if (n % 2 == 0 && n >= 2) tags.push_back(TagSplit{n / 2});

  // Mixed profiles: the operator is invertible on a proper nonzero subspace
  // W of signature (p1, q1) and zero on the rest.
  for (int sign : {+1, -1}) {
    for (int q = 0; 2 * q <= n; ++q) {
      const int p = n - q;
      for (int wdim = 1; wdim < n; ++wdim) {
        for (int q1 = 0; q1 <= std::min(q, wdim); ++q1) {
          const int p1 = wdim - q1;
          if (p1 > p) continue;
          if (p == q && p1 < q1) continue;  // canonical orientation
          if (sign < 0 && p1 != q1) continue;
          tags.push_back(TagNonNilpotent{p, q, p1, q1, sign});
        }
      }
    }
  }

  // Block profiles: all sign assignments, canonicalized through classify so
  // the table agrees with the classifier's notion of equivalence.
  std::set<std::string> seen;
  for (int n3 = n / 3; n3 >= 0; --n3) {
    for (int n2 = (n - 3 * n3) / 2; n2 >= 0; --n2) {
      const int n1 = n - 3 * n3 - 2 * n2;
      if (n3 + n2 == 0) continue;
      for (int p3 = n3; p3 >= 0; --p3) {
        for (int p1 = n1; p1 >= 0; --p1) {
          TagNilpotent t;
          for (int i = 0; i < n3; ++i) t.blocks.push_back({3, i < p3 ? 1 : -1});
          for (int i = 0; i < n2; ++i) t.blocks.push_back({2, 1});
          for (int i = 0; i < n1; ++i) t.blocks.push_back({1, i < p1 ? 1 : -1});
          FamilyTag canonical = classify(emit_normal_form(FamilyTag{t})).tag;
          if (seen.insert(to_string(canonical)).second) tags.push_back(canonical);
        }
      }
    }
  }
  return tags;
}

namespace {

TableRow compute_row(const FamilyTag& tag, bool full_verify) {
  ProlongationOptions opt;
  opt.verify = full_verify;
  ProlongationResult pro = prolong(build_symbol(emit_normal_form(tag)), opt);
  TableRow row;
  row.family = to_string(tag);
  row.total_dim = pro.total_complex;
  row.identified = pro.capped ? "(truncated)" : identify_real_form(pro).name;
  return row;
}

}  // namespace

DimensionTable enumerate_table(int dim_M, bool full_verify) {
  if (dim_M < 5 || dim_M % 2 == 0)
    throw MalformedInput("manifold dimension must be odd and at least 5");
  DimensionTable table;
  table.dim_M = dim_M;
  table.n = (dim_M - 3) / 2;

  const std::vector<FamilyTag> tags = enumerate_families(table.n);
  std::vector<std::future<TableRow>> jobs;
  jobs.reserve(tags.size());
  for (const FamilyTag& tag : tags)
    jobs.push_back(std::async(std::launch::async, compute_row, tag, full_verify));
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    TableRow row = jobs[i].get();
    if (std::holds_alternative<TagDefinite>(tags[i]) ||
        std::holds_alternative<TagSplit>(tags[i]))
      table.strongly_non_nilpotent = std::max(table.strongly_non_nilpotent, row.total_dim);
    if (std::holds_alternative<TagNilpotent>(tags[i]))
      table.nilpotent_max = std::max(table.nilpotent_max, row.total_dim);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string table_to_json(const std::vector<DimensionTable>& tables) {
  nlohmann::ordered_json root;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const DimensionTable& t : tables) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const TableRow& r : t.rows)
      rows.push_back({{"family", r.family},
                      {"total_dim", r.total_dim},
                      {"identified", r.identified}});
    list.push_back({{"dim_M", t.dim_M},
                    {"n", t.n},
                    {"strongly_non_nilpotent", t.strongly_non_nilpotent},
                    {"nilpotent_max", t.nilpotent_max},
                    {"rows", std::move(rows)}});
  }
  root["tables"] = std::move(list);
  return root.dump(2) + "\n";
}

std::string table_to_csv(const std::vector<DimensionTable>& tables) {
  std::ostringstream os;
  os << "dim_M,family,total_dim,identified\n";
  for (const DimensionTable& t : tables) {
    for (const TableRow& r : t.rows)
      os << t.dim_M << "," << r.family << "," << r.total_dim << "," << r.identified << "\n";
    os << t.dim_M << ",(strongly non-nilpotent)," << t.strongly_non_nilpotent << ",\n";
    os << t.dim_M << ",(nilpotent max)," << t.nilpotent_max << ",\n";
  }
  return os.str();
}

std::string table_to_markdown(const std::vector<DimensionTable>& tables) {
  std::ostringstream os;
  for (const DimensionTable& t : tables) {
    os << "## dim M = " << t.dim_M << " (n = " << t.n << ")\n\n";
    os << "strongly non-nilpotent total: " << t.strongly_non_nilpotent
       << "; nilpotent maximum: " << t.nilpotent_max << "\n\n";
    os << "| family | total dim | identified |\n";
    os << "|---|---|---|\n";
    for (const TableRow& r : t.rows)
      os << "| " << r.family << " | " << r.total_dim << " | " << r.identified << " |\n";
    os << "\n";
  }
  return os.str();
}

}  // namespace crsym

#pragma once

#include <string>
#include <vector>

#include "crsym/classify.hpp"

namespace crsym {

// One enumerated family at a fixed manifold dimension.
struct TableRow {
  std::string family;      // canonical tag, e.g. "I(p=2,q=0)" or "nilpotent(3+,1-)"
  int total_dim = 0;       // complex dimension of the full prolongation
  std::string identified;  // real-form name from the identification table
};

// All kernel-rank-one regular families for one manifold dimension.
struct DimensionTable {
  int dim_M = 0;
  int n = 0;                        // dim of the (-1,1) component
  int strongly_non_nilpotent = 0;   // total dimension shared by the I/II rows
  int nilpotent_max = 0;            // largest nilpotent total (0 when none)
  std::vector<TableRow> rows;       // fixed enumeration order
};

// The fixed enumeration of regular family tags for a given number n of
// nondegenerate directions, in the order documented on enumerate_table.
std::vector<FamilyTag> enumerate_families(int n);

// Enumerates every family in a fixed lexicographic order -- the definite
// forms (q ascending), the split form, the non-nilpotent mixed profiles
// (q, then W-dimension, then W-signature, positive cubic sign before
// negative), then block profiles (3-block count descending, 2-block count
// descending, signs canonicalized and deduplicated) -- prolongs each symbol
// and identifies its real form.  Rows are computed in parallel; order is
// fixed by the enumeration, not by completion.  Throws MalformedInput unless
// dim_M is odd and at least 5.
DimensionTable enumerate_table(int dim_M, bool full_verify = true);

std::string table_to_json(const std::vector<DimensionTable>& tables);
std::string table_to_csv(const std::vector<DimensionTable>& tables);
std::string table_to_markdown(const std::vector<DimensionTable>& tables);

}  // namespace crsym

#ifndef MGS_CORE_CATEGORY_HPP
#define MGS_CORE_CATEGORY_HPP

#include <iosfwd>
#include <map>

#include "genetic.hpp"

namespace mgs {

// A category-wide genome structure shared across benchmarks. Rows and
// columns are keyed by role so that one evolved matrix stays meaningful
// over many benchmarks with their own argument names and constants:
//   rows        N_<SortRole>_<k>
//   operators   <op>:<SortRole>
//   arguments   arg<k>:<SortRole>   (k = position in the synth-fun params)
//   constants   c0:<SortRole>, c1:<SortRole>, true:Bool, false:Bool
// BitVec roles erase the width ("BV") so 4- and 8-bit benchmarks share
// genes; erasure is disabled when any one benchmark mixes widths, since
// then it would fold distinct sorts of the same benchmark into one role.
// Auxiliary columns (spec literals, helpers) are benchmark-specific and
// always-on rather than evolved. A single-benchmark model skips role
// sharing entirely and evolves that benchmark's full structure.
struct CategoryModel {
  WiringPolicy policy = WiringPolicy::SameIndex;
  bool shared = false;
  bool erase_bv_width = true;
  MatrixStructure genome;
  std::map<std::string, std::size_t> row_index;
  std::map<std::string, std::size_t> col_index;

  static CategoryModel build(const std::vector<const Benchmark *> &benches,
                             WiringPolicy policy);

  // Projection target for one benchmark, not necessarily one the model was
  // built from. Rows or theory/constant columns whose role is missing from
  // the genome are a mismatch error naming the benchmark and the column;
  // missing argument roles fall back to always-on with a warning.
  EvalTarget target_for(const Benchmark &b, std::ostream *warnings) const;
  std::vector<EvalTarget>
  targets_for(const std::vector<const Benchmark *> &benches,
              std::ostream *warnings) const;
};

std::string sort_role(const Sort &s, bool erase_bv);
std::string row_role(const NonTerminal &row, bool erase_bv);
// Role key of a non-aux column owned by benchmark b; "" for aux columns.
std::string column_role(const Benchmark &b, const ProductionRule &col,
                        bool erase_bv);

// Maps a serialized matrix onto one benchmark's structure by label: raw
// labels match first (files saved from this very structure), then role
// keys (category genome files). Unmatched aux columns and argument
// columns are always-on (arguments with a warning); any other unmatched
// column or row is a mismatch error.
MatrixInstance project_matrix_file(const MatrixFile &f, const Benchmark &b,
                                   const MatrixStructure &s,
                                   std::ostream *warnings);

} // namespace mgs

#endif

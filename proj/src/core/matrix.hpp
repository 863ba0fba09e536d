#ifndef MGS_CORE_MATRIX_HPP
#define MGS_CORE_MATRIX_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "benchmark.hpp"
#include "grammar.hpp"
#include "rng.hpp"

namespace mgs {

// How an operator column's operand of sort T' is wired when the column is
// attached to non-terminal N^k_T. SameIndex keeps the attached row's ordinal;
// Cascade always wires to the ordinal-2 non-terminal.
enum class WiringPolicy { SameIndex, Cascade };

std::string wiring_name(WiringPolicy p);
WiringPolicy wiring_from_name(const std::string &name);

// A matrix row: the k-th non-terminal of its sort. Row 0 is named Start.
struct NonTerminal {
  std::string name;
  Sort sort = Sort::boolean();
  int ordinal = 1;
};

// A matrix column. Terminal columns carry a complete right-hand side;
// operator columns carry operand sorts whose target non-terminals are
// resolved per attached row by the wiring policy.
struct ProductionRule {
  enum class Shape { Terminal, Operator };
  std::string label;
  Sort result_sort = Sort::boolean();
  Shape shape = Shape::Terminal;
  TermPtr terminal;
  std::string op;
  std::vector<Sort> operand_sorts;
  // Benchmark-specific extras (spec literals, helper functions) as opposed
  // to the theory/argument/basic-constant columns every same-signature
  // benchmark shares.
  bool aux = false;
};

struct MatrixStructure {
  WiringPolicy policy = WiringPolicy::SameIndex;
  std::vector<NonTerminal> rows;
  std::vector<ProductionRule> cols;
  std::vector<std::vector<bool>> valid;

  std::size_t valid_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> valid_cells() const;
  // Index of N^ordinal_sort, or -1 when absent.
  int row_of(const Sort &sort, int ordinal) const;
};

// A 0/1 assignment over the valid cells of some MatrixStructure. Invalid
// cells are stored as 0 and never set.
struct MatrixInstance {
  std::vector<std::vector<unsigned char>> bits;

  static MatrixInstance zeros(const MatrixStructure &s);
  bool operator==(const MatrixInstance &o) const { return bits == o.bits; }
  std::size_t count_ones() const;
  // Row-major '0'/'1' string; used as a cache key and for hashing.
  std::string key() const;
};

// Space-free column label for a constant value (e.g. "7", "-3", "#b0101").
std::string value_label(const Value &v);

MatrixStructure build_structure(const Benchmark &b, WiringPolicy wiring);
MatrixInstance full_instance(const MatrixStructure &s);
MatrixInstance random_instance(const MatrixStructure &s, Rng &rng,
                               double density = 0.5);
Grammar instantiate(const MatrixStructure &s, const MatrixInstance &m);

// Textual grid form. Parsing recovers the shape (labels, policy, mask) and
// the instance, not the full column semantics; pair it with a structure
// rebuilt from the corpus to evaluate.
struct MatrixFile {
  WiringPolicy policy = WiringPolicy::SameIndex;
  std::vector<std::string> col_labels;
  std::vector<std::string> row_labels;
  std::vector<std::vector<bool>> valid;
  MatrixInstance instance;
};

std::string serialize_matrix(const MatrixStructure &s, const MatrixInstance &m);
MatrixFile deserialize_matrix(const std::string &text);

} // namespace mgs

#endif

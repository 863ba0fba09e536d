#ifndef MGS_CORE_THEORY_HPP
#define MGS_CORE_THEORY_HPP

#include "term.hpp"

#include <map>
#include <string>
#include <vector>

namespace mgs {

struct FunctionSig {
  std::vector<Sort> params;
  Sort ret;
};

// Named functions visible to sort checking and evaluation: helper
// definitions plus, during verification, the candidate synth-fun.
using FunctionSigs = std::map<std::string, FunctionSig>;

bool is_theory_op(const std::string &name);

// Sort of `term` with free variables bound by `env` and named functions by
// `funcs`. Throws SortError on unbound symbols, arity mismatches, and operand
// sort mismatches. Operator signatures are fixed; there is no Int
// multiplication.
Sort sort_of(const TermPtr &term, const std::map<std::string, Sort> &env,
             const FunctionSigs &funcs = {});

// One row of the per-theory operator table used for matrix construction.
// Operand/result slots are either the theory's value sort or Bool.
struct TheoryOp {
  std::string name;
  std::vector<bool> operand_is_value; // true -> value sort, false -> Bool
  bool result_is_value = true;
};

// Fixed operator tables, in matrix column order. Supported logics: LIA, BV.
// Throws ConfigError for anything else.
const std::vector<TheoryOp> &theory_ops(const std::string &logic);

bool logic_supported(const std::string &logic);

} // namespace mgs

#endif

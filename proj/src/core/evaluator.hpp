#ifndef MGS_CORE_EVALUATOR_HPP
#define MGS_CORE_EVALUATOR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "benchmark.hpp"

namespace mgs {

// Binds the benchmark's declared variables to concrete values.
using Valuation = std::map<std::string, Value>;

// Named functions visible during evaluation: the benchmark's helpers plus,
// when verifying, the candidate bound to the synth-fun's name. Pointed-to
// Helpers must outlive the context.
struct EvalContext {
  std::map<std::string, const Helper *> funs;

  static EvalContext for_benchmark(const Benchmark &b);
  void bind(const Helper &h) { funs[h.name] = &h; }
};

// SMT-LIB semantics over the supported operator tables; BitVec arithmetic is
// modulo 2^w and division is total (bvudiv by zero = all-ones, bvurem by
// zero = x). Throws InfrastructureError on unbound symbols, which indicates
// a caller bug: terms are sort-checked before they reach evaluation.
Value evaluate(const TermPtr &t, const Valuation &v, const EvalContext &ctx);

// Applies one operator to already-evaluated arguments. Same semantics as
// `evaluate` minus short-circuiting; every operator is total, so eager
// arguments give identical results. Helpers are not operators and must be
// handled by the caller.
Value apply_op(const std::string &op, const std::vector<Value> &args);

struct VerifyBounds {
  Integer int_bound = 32;          // quantified Int vars range over [-B, B]
  unsigned bv_exhaustive_width = 8; // wider BV vars are sampled
  std::size_t sample_count = 1024;
  std::size_t max_exhaustive = 2000000; // valuation-product ceiling
  std::uint64_t seed = 0;
};

struct ValidationResult {
  bool confirmed = false;
  std::optional<Valuation> counterexample;
  // true when any variable domain was sampled rather than enumerated, so
  // "confirmed" is evidence, not proof
  bool bounded = false;
};

// Substitutes `candidate` for the synth-fun and checks every constraint over
// the bounded variable domains. Ground constraints are checked directly;
// each quantified constraint is enumerated over its own free variables only.
// The counterexample, when present, binds all declared variables. work_units,
// when given, is advanced by one per constraint evaluation (the deterministic
// cost model shared with the builtin solver).
ValidationResult validate_solution(const Benchmark &b, const TermPtr &candidate,
                                   const VerifyBounds &bounds = {},
                                   std::uint64_t *work_units = nullptr);

} // namespace mgs

#endif

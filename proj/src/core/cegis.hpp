#ifndef MGS_CORE_CEGIS_HPP
#define MGS_CORE_CEGIS_HPP

#include "evaluator.hpp"
#include "grammar.hpp"
#include "solve_result.hpp"

namespace mgs {

// The builtin solver measures cost in work units (term constructions,
// constraint evaluations) and converts them to "seconds" at this fixed rate.
// Unit counts are deterministic, so solve times and everything downstream
// (fitness, history files) reproduce exactly; real elapsed time plays no
// part in results.
constexpr std::uint64_t UNITS_PER_SECOND = 100000;

struct CegisLimits {
  double timeout_seconds = 10.0;
  std::size_t max_term_size = 12;
  std::uint64_t max_candidates = 1000000;
  // Collapse enumeration-bank terms that agree on every discovered
  // counterexample; sound while the synth-fun is not applied to itself, and
  // switched off automatically when it is.
  bool observational_equivalence = true;
  VerifyBounds verify;
};

// Enumerative CEGIS: grow the counterexample set I from empty; in each round
// scan candidates in enumeration order for the first one satisfying all
// constraints on I, then verify it over the bounded domain. g must be pruned
// and non-empty.
SolveResult synthesize(const Benchmark &b, const Grammar &g,
                       const CegisLimits &limits);

} // namespace mgs

#endif

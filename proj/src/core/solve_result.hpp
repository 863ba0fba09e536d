#ifndef MGS_CORE_SOLVE_RESULT_HPP
#define MGS_CORE_SOLVE_RESULT_HPP

#include <cstdint>
#include <string>

#include "term.hpp"

namespace mgs {

enum class SolveStatus { Solved, Unsolved, Timeout, Infeasible };

std::string status_name(SolveStatus s);

// Outcome of one solver run. For the builtin solver wall_time is the
// deterministic synthetic clock (work units / UNITS_PER_SECOND), so history
// files are reproducible bit-for-bit; for external solvers it is real wall
// time. Timeout and Infeasible both count as unsolved for fitness.
struct SolveResult {
  SolveStatus status = SolveStatus::Unsolved;
  double wall_time = 0.0;
  TermPtr solution; // set iff status == Solved
  std::string diagnostics;
  std::uint64_t candidates_enumerated = 0; // builtin solver only
};

} // namespace mgs

#endif

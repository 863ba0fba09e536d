#ifndef MGS_CORE_BACKEND_HPP
#define MGS_CORE_BACKEND_HPP

#include <string>
#include <vector>

#include "benchmark.hpp"
#include "cegis.hpp"
#include "solve_result.hpp"

namespace mgs {

struct BackendConfig {
  enum class Kind { Builtin, External };
  Kind kind = Kind::Builtin;
  double timeout_seconds = 10.0;
  // external
  std::string binary;
  std::vector<std::string> extra_args;
  std::string scratch_dir = ".";
  // builtin; its timeout_seconds is overwritten by the field above
  CegisLimits limits;
};

// Throws InfrastructureError when an external binary cannot be found. Call
// once at search start so a bad path fails fast instead of mid-run.
void check_backend(const BackendConfig &cfg);

// Runs one benchmark with one grammar. g must be pruned and non-empty.
// External runs write a scratch SyGuS file, spawn the solver with the file
// as last argument, kill it at the timeout, and classify its stdout; any
// spawn failure is an InfrastructureError, never an Unsolved.
SolveResult solve(const Benchmark &b, const Grammar &g,
                  const BackendConfig &cfg);

} // namespace mgs

#endif

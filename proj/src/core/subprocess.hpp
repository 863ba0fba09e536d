#ifndef MGS_CORE_SUBPROCESS_HPP
#define MGS_CORE_SUBPROCESS_HPP

#include <string>
#include <vector>

namespace mgs {

struct ProcessResult {
  int exit_code = -1; // meaningful when !timed_out and the process exited
  bool timed_out = false;
  std::string out;
  std::string err;
  double wall_seconds = 0.0;
};

// Runs argv[0] with the given arguments, draining stdout/stderr
// concurrently. On timeout the whole process group is SIGKILLed; the call
// returns within roughly timeout + 0.5s. Throws InfrastructureError when the
// binary cannot be spawned (distinct from any non-zero exit).
ProcessResult run_process(const std::vector<std::string> &argv,
                          double timeout_seconds);

// Resolves `binary` like execvp would; empty result when not found.
std::string resolve_binary(const std::string &binary);

} // namespace mgs

#endif

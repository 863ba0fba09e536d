#include "backend.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "errors.hpp"
#include "rng.hpp"
#include "subprocess.hpp"
#include "sygus_parser.hpp"
#include "sygus_printer.hpp"

namespace mgs {

void check_backend(const BackendConfig &cfg) {
  if (cfg.timeout_seconds <= 0)
    throw ConfigError("timeout must be positive");
  if (cfg.kind == BackendConfig::Kind::External &&
      resolve_binary(cfg.binary).empty())
    throw InfrastructureError("solver binary '" + cfg.binary +
                              "' not found or not executable");
}

namespace {

std::string first_token(const std::string &text) {
  std::size_t i = text.find_first_not_of(" \t\r\n");
  if (i == std::string::npos)
    return "";
  std::size_t j = text.find_first_of(" \t\r\n", i);
  return text.substr(i, j == std::string::npos ? std::string::npos : j - i);
}

std::string head_of(const std::string &text, std::size_t limit = 400) {
  if (text.size() <= limit)
    return text;
  return text.substr(0, limit) + "...";
}

SolveResult solve_external(const Benchmark &b, const Grammar &g,
                           const BackendConfig &cfg) {
  const std::string text = emit_benchmark_with_grammar(b, g);
  std::ostringstream name;
  name << cfg.scratch_dir << "/mgs_" << std::hex << hash_str(b.source_id)
       << "_" << hash_str(text) << "_"
       << std::hash<std::thread::id>{}(std::this_thread::get_id()) << ".sl";
  const std::string path = name.str();
  {
    std::ofstream out(path);
    if (!out)
      throw InfrastructureError("cannot write scratch file '" + path + "'");
    out << text;
  }

  std::vector<std::string> argv{cfg.binary};
  argv.insert(argv.end(), cfg.extra_args.begin(), cfg.extra_args.end());
  argv.push_back(path);

  ProcessResult pr;
  try {
    pr = run_process(argv, cfg.timeout_seconds);
  } catch (...) {
    std::remove(path.c_str());
    throw;
  }
  std::remove(path.c_str());

  SolveResult res;
  res.wall_time = pr.wall_seconds;
  if (pr.timed_out) {
    res.status = SolveStatus::Timeout;
    res.wall_time = cfg.timeout_seconds;
    res.diagnostics = "killed at timeout";
    return res;
  }
  const std::string lead = first_token(pr.out);
  if (lead == "infeasible" || lead == "fail") {
    res.status = SolveStatus::Infeasible;
    res.diagnostics = lead;
    return res;
  }
  if (pr.out.find("(define-fun") != std::string::npos) {
    try {
      res.solution = parse_solution_output(pr.out, b);
      res.status = SolveStatus::Solved;
      return res;
    } catch (const std::exception &e) {
      res.diagnostics = std::string("output not accepted: ") + e.what() +
                        "; stdout: " + head_of(pr.out);
      res.status = SolveStatus::Unsolved;
      return res;
    }
  }
  res.status = SolveStatus::Unsolved;
  std::ostringstream diag;
  diag << "exit " << pr.exit_code;
  if (!pr.out.empty())
    diag << "; stdout: " << head_of(pr.out);
  if (!pr.err.empty())
    diag << "; stderr: " << head_of(pr.err);
  res.diagnostics = diag.str();
  return res;
}

} // namespace

SolveResult solve(const Benchmark &b, const Grammar &g,
                  const BackendConfig &cfg) {
  if (cfg.kind == BackendConfig::Kind::External)
    return solve_external(b, g, cfg);
  CegisLimits limits = cfg.limits;
  limits.timeout_seconds = cfg.timeout_seconds;
  return synthesize(b, g, limits);
}

} // namespace mgs

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <filesystem>

#include "core/backend.hpp"
#include "core/errors.hpp"
#include "core/sygus_parser.hpp"
#include "core/subprocess.hpp"

using namespace mgs;

namespace {

const std::string kStubs = std::string(MGS_SOURCE_DIR) + "/tests/stubs";

Benchmark identity_bench() {
  return parse_benchmark(
      "(set-logic LIA)(synth-fun id ((x Int)) Int)"
      "(declare-var a Int)(constraint (= (id a) a))(check-synth)");
}

Grammar x_grammar() {
  Grammar g;
  g.nonterminals.push_back({"Start", Sort::integer()});
  g.rules.push_back({Term::variable("x", Sort::integer()),
                     Term::constant(Value::integer_of(0))});
  return g;
}

BackendConfig external(const std::string &script, double timeout) {
  BackendConfig cfg;
  cfg.kind = BackendConfig::Kind::External;
  cfg.binary = kStubs + "/" + script;
  cfg.timeout_seconds = timeout;
  cfg.scratch_dir = std::filesystem::temp_directory_path().string();
  return cfg;
}

} // namespace

TEST_CASE("builtin backend is synthesize behind a config") {
  BackendConfig cfg;
  cfg.timeout_seconds = 2.0;
  SolveResult r = solve(identity_bench(), x_grammar(), cfg);
  REQUIRE(r.status == SolveStatus::Solved);
  CHECK(r.solution->str() == "x");
  CHECK(r.wall_time < 0.1);
}

TEST_CASE("backend checks fail fast") {
  BackendConfig missing;
  missing.kind = BackendConfig::Kind::External;
  missing.binary = "/no/such/solver-binary";
  missing.timeout_seconds = 1.0;
  CHECK_THROWS_AS(check_backend(missing), InfrastructureError);

  BackendConfig bad_timeout;
  bad_timeout.timeout_seconds = 0.0;
  CHECK_THROWS_AS(check_backend(bad_timeout), ConfigError);

  CHECK_NOTHROW(check_backend(external("echo_identity.sh", 1.0)));
}

TEST_CASE("external define-fun output becomes a checked solution") {
  // stub renames the parameter; positional mapping restores ours
  SolveResult r =
      solve(identity_bench(), x_grammar(), external("echo_identity.sh", 5.0));
  REQUIRE(r.status == SolveStatus::Solved);
  CHECK(r.solution->str() == "x");
}

TEST_CASE("sleeping solvers are killed at the timeout") {
  auto t0 = std::chrono::steady_clock::now();
  SolveResult r =
      solve(identity_bench(), x_grammar(), external("sleep_forever.sh", 1.0));
  double elapsed = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  CHECK(r.status == SolveStatus::Timeout);
  CHECK(r.wall_time == 1.0);
  CHECK(elapsed < 2.0); // timeout + 1s is the published bound; expect tighter
  CHECK(r.diagnostics.find("killed") != std::string::npos);
}

TEST_CASE("unrecognized output is unsolved with diagnostics, not an error") {
  SolveResult r =
      solve(identity_bench(), x_grammar(), external("garbage.sh", 5.0));
  CHECK(r.status == SolveStatus::Unsolved);
  CHECK(r.diagnostics.find("no clue") != std::string::npos);
  CHECK(r.diagnostics.find("exit 1") != std::string::npos);
}

TEST_CASE("infeasible verdicts pass through") {
  SolveResult r =
      solve(identity_bench(), x_grammar(), external("infeasible.sh", 5.0));
  CHECK(r.status == SolveStatus::Infeasible);
}

TEST_CASE("spawn failures are infrastructure errors, not unsolved") {
  BackendConfig cfg;
  cfg.kind = BackendConfig::Kind::External;
  cfg.binary = "/no/such/solver-binary";
  cfg.timeout_seconds = 1.0;
  cfg.scratch_dir = std::filesystem::temp_directory_path().string();
  CHECK_THROWS_AS(solve(identity_bench(), x_grammar(), cfg),
                  InfrastructureError);
}

TEST_CASE("scratch files are cleaned up") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "mgs_scratch_probe";
  fs::create_directories(dir);
  BackendConfig cfg = external("echo_identity.sh", 5.0);
  cfg.scratch_dir = dir.string();
  solve(identity_bench(), x_grammar(), cfg);
  CHECK(fs::is_empty(dir));
  fs::remove_all(dir);
}

TEST_CASE("run_process separates stdout from stderr") {
  ProcessResult pr = run_process({"/bin/sh", "-c", "echo out; echo err >&2"}, 5.0);
  CHECK(pr.out == "out\n");
  CHECK(pr.err == "err\n");
  CHECK(pr.exit_code == 0);
  CHECK_FALSE(pr.timed_out);
}

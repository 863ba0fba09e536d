#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "mgs.h"

namespace {

const std::string kBenchmarks = std::string(MGS_SOURCE_DIR) + "/benchmarks";

struct Text {
  char *p = nullptr;
  ~Text() { mgs_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Bench {
  mgs_benchmark *b = nullptr;
  ~Bench() { mgs_benchmark_free(b); }
};

} // namespace

TEST_CASE("options start at the documented defaults") {
  mgs_options opt;
  mgs_options_init(&opt);
  CHECK(opt.population == 60);
  CHECK(opt.parents == 15);
  CHECK(opt.generations == 100);
  CHECK(opt.timeout_seconds == 10.0);
  CHECK(opt.mutation_rate < 0.0); // negative selects 1/valid_cells
  CHECK(opt.backend == MGS_BACKEND_BUILTIN);
  CHECK(opt.wiring == MGS_WIRING_SAME_INDEX);
  CHECK(mgs_version() != nullptr);
}

TEST_CASE("parse failures set a status and a message") {
  Bench bench;
  mgs_status st = mgs_benchmark_parse_text("(set-logic LIA", "bad", &bench.b);
  CHECK(st == MGS_ERR_CONFIG);
  CHECK(bench.b == nullptr);
  CHECK(std::strlen(mgs_last_error()) > 0);

  st = mgs_benchmark_parse_file("/no/such/file.sl", &bench.b);
  CHECK(st == MGS_ERR_CONFIG);
}

TEST_CASE("benchmarks round-trip through the boundary") {
  Bench bench;
  REQUIRE(mgs_benchmark_parse_file((kBenchmarks + "/lia_max2.sl").c_str(),
                                   &bench.b) == MGS_OK);
  Text printed;
  REQUIRE(mgs_benchmark_print(bench.b, &printed.p) == MGS_OK);
  CHECK(printed.str().find("(synth-fun max2") != std::string::npos);

  Bench again;
  REQUIRE(mgs_benchmark_parse_text(printed.p, "copy", &again.b) == MGS_OK);
  Text reprinted;
  REQUIRE(mgs_benchmark_print(again.b, &reprinted.p) == MGS_OK);
  CHECK(printed.str() == reprinted.str());
}

TEST_CASE("structure and emission work from the header alone") {
  Bench bench;
  REQUIRE(mgs_benchmark_parse_file((kBenchmarks + "/lia_double.sl").c_str(),
                                   &bench.b) == MGS_OK);
  Text grid;
  REQUIRE(mgs_structure_text(bench.b, MGS_WIRING_SAME_INDEX, &grid.p) == MGS_OK);
  CHECK(grid.str().rfind("rows=4 cols=17 policy=SameIndex", 0) == 0);

  Text emitted;
  REQUIRE(mgs_emit_with_matrix(bench.b, nullptr, MGS_WIRING_SAME_INDEX,
                               &emitted.p) == MGS_OK);
  CHECK(emitted.str().find("(synth-fun double ((a Int)) Int ((Start Int)") !=
        std::string::npos);

  Text category;
  REQUIRE(mgs_category_structure_text((kBenchmarks + "/lia_*.sl").c_str(),
                                      MGS_WIRING_SAME_INDEX,
                                      &category.p) == MGS_OK);
  CHECK(category.str().find("arg0:Int") != std::string::npos);
}

TEST_CASE("solving reports status lines") {
  Bench bench;
  REQUIRE(mgs_benchmark_parse_file((kBenchmarks + "/lia_max2.sl").c_str(),
                                   &bench.b) == MGS_OK);
  mgs_options opt;
  mgs_options_init(&opt);
  Text out;
  REQUIRE(mgs_solve(bench.b, nullptr, &opt, &out.p) == MGS_OK);
  CHECK(out.str().find("status Solved") != std::string::npos);
  CHECK(out.str().find("(define-fun max2") != std::string::npos);
  CHECK(out.str().find("candidates ") != std::string::npos);
}

TEST_CASE("experiments and replays run end to end") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "mgs_capi_exp";
  fs::remove_all(dir);

  mgs_options opt;
  mgs_options_init(&opt);
  opt.population = 3;
  opt.parents = 2;
  opt.generations = 1;
  opt.timeout_seconds = 5.0;
  opt.train_count = 2;
  opt.seed = 3;
  opt.workers = 2;

  Text report;
  REQUIRE(mgs_run_experiment((kBenchmarks + "/lia_m*.sl").c_str(), "toy",
                             dir.string().c_str(), &opt,
                             &report.p) == MGS_OK);
  CHECK(report.str().find("Category: toy") != std::string::npos);
  CHECK(fs::exists(dir / "matrix.txt"));

  Text replay;
  REQUIRE(mgs_eval_matrix((dir / "matrix.txt").string().c_str(),
                          (kBenchmarks + "/lia_m*.sl").c_str(), &opt,
                          &replay.p) == MGS_OK);
  CHECK(replay.str().find("grammar,benchmark,status") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("null handles are rejected, not crashed on") {
  Text out;
  CHECK(mgs_solve(nullptr, nullptr, nullptr, &out.p) == MGS_ERR_CONFIG);
  mgs_benchmark_free(nullptr);
  mgs_string_free(nullptr);
}

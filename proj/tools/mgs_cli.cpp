#include <cstdio>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "mgs.h"

namespace {

int fail(mgs_status st) {
  std::fprintf(stderr, "error: %s\n", mgs_last_error());
  return static_cast<int>(st);
}

bool apply_backend(mgs_options &opt, const std::string &spec,
                   std::string &binary_storage) {
  if (spec == "builtin") {
    opt.backend = MGS_BACKEND_BUILTIN;
    return true;
  }
  if (spec.rfind("external:", 0) == 0 && spec.size() > 9) {
    binary_storage = spec.substr(9);
    opt.backend = MGS_BACKEND_EXTERNAL;
    opt.solver_binary = binary_storage.c_str();
    return true;
  }
  std::fprintf(stderr, "error: --backend must be builtin or external:PATH\n");
  return false;
}

std::string stem_of(const std::string &path) {
  auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = name.find_last_of('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

int print_or_write(const char *text, const std::string &out_path) {
  if (out_path.empty()) {
    std::fputs(text, stdout);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << text;
  if (!out) {
    std::fprintf(stderr, "error: cannot write '%s'\n", out_path.c_str());
    return static_cast<int>(MGS_ERR_INFRASTRUCTURE);
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"metagrammar matrix synthesis toolkit"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::simple);

  mgs_options opt;
  mgs_options_init(&opt);
  std::string corpus, out_dir, wiring = "same-index", backend = "builtin";
  std::string bench_path, matrix_path, binary_storage;

  auto wiring_check = CLI::IsMember({"same-index", "cascade"});

  CLI::App *evolve = app.add_subcommand("evolve", "evolve a category matrix");
  evolve->add_option("--corpus", corpus, "benchmark glob")->required();
  evolve->add_option("--train-count", opt.train_count, "benchmarks that train")
      ->required();
  evolve->add_option("--seed", opt.seed, "split and search seed");
  evolve->add_option("--population", opt.population, "population size");
  evolve->add_option("--parents", opt.parents, "parents per generation");
  evolve->add_option("--generations", opt.generations, "generation count");
  evolve->add_option("--timeout", opt.timeout_seconds, "per-solve seconds (T)");
  evolve->add_option("--mutation-rate", opt.mutation_rate,
                     "per-cell flip probability");
  evolve->add_option("--wiring", wiring, "operand wiring")->check(wiring_check);
  evolve->add_option("--backend", backend, "builtin or external:PATH");
  evolve->add_option("--workers", opt.workers, "parallel fitness workers");
  evolve->add_option("--out", out_dir, "output directory")->required();

  CLI::App *eval = app.add_subcommand("eval", "re-evaluate a saved matrix");
  eval->add_option("matrix", matrix_path, "matrix file")->required();
  eval->add_option("--corpus", corpus, "benchmark glob")->required();
  eval->add_option("--timeout", opt.timeout_seconds, "per-solve seconds");
  eval->add_option("--backend", backend, "builtin or external:PATH");
  eval->add_option("--workers", opt.workers, "parallel workers");

  CLI::App *solve = app.add_subcommand("solve", "run one benchmark");
  solve->add_option("benchmark", bench_path, "SyGuS file")->required();
  solve->add_option("matrix", matrix_path, "matrix restricting the grammar");
  solve->add_option("--timeout", opt.timeout_seconds, "per-solve seconds");
  solve->add_option("--wiring", wiring, "operand wiring")->check(wiring_check);
  solve->add_option("--backend", backend, "builtin or external:PATH");

  CLI::App *emit = app.add_subcommand("emit", "write a grammar-injected file");
  emit->add_option("benchmark", bench_path, "SyGuS file")->required();
  emit->add_option("matrix", matrix_path, "matrix restricting the grammar");
  emit->add_option("--wiring", wiring, "operand wiring")->check(wiring_check);
  emit->add_option("--out", out_dir, "output directory (default stdout)");

  CLI::App *init = app.add_subcommand("init", "print a constructed matrix");
  init->add_option("benchmark", bench_path, "SyGuS file");
  init->add_option("--corpus", corpus, "benchmark glob (category matrix)");
  init->add_option("--wiring", wiring, "operand wiring")->check(wiring_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(MGS_ERR_CONFIG);
  }

  if (!apply_backend(opt, backend, binary_storage))
    return static_cast<int>(MGS_ERR_CONFIG);
  opt.wiring =
      wiring == "cascade" ? MGS_WIRING_CASCADE : MGS_WIRING_SAME_INDEX;

  char *text = nullptr;
  mgs_status st = MGS_OK;

  if (evolve->parsed()) {
    st = mgs_run_experiment(corpus.c_str(), "category", out_dir.c_str(), &opt,
                            &text);
    if (st != MGS_OK)
      return fail(st);
    std::fputs(text, stdout);
    mgs_string_free(text);
    return 0;
  }

  if (eval->parsed()) {
    st = mgs_eval_matrix(matrix_path.c_str(), corpus.c_str(), &opt, &text);
    if (st != MGS_OK)
      return fail(st);
    std::fputs(text, stdout);
    mgs_string_free(text);
    return 0;
  }

  mgs_benchmark *bench = nullptr;
  if (solve->parsed() || emit->parsed() ||
      (init->parsed() && !bench_path.empty())) {
    if (bench_path.empty()) {
      std::fprintf(stderr, "error: a benchmark file is required\n");
      return static_cast<int>(MGS_ERR_CONFIG);
    }
    st = mgs_benchmark_parse_file(bench_path.c_str(), &bench);
    if (st != MGS_OK)
      return fail(st);
  }

  int rc = 0;
  if (solve->parsed()) {
    st = mgs_solve(bench, matrix_path.empty() ? nullptr : matrix_path.c_str(),
                   &opt, &text);
    if (st == MGS_OK) {
      std::fputs(text, stdout);
      mgs_string_free(text);
    }
  } else if (emit->parsed()) {
    st = mgs_emit_with_matrix(
        bench, matrix_path.empty() ? nullptr : matrix_path.c_str(), opt.wiring,
        &text);
    if (st == MGS_OK) {
      std::string out_path;
      if (!out_dir.empty())
        out_path = out_dir + "/" + stem_of(bench_path) + "_grammar.sl";
      rc = print_or_write(text, out_path);
      mgs_string_free(text);
    }
  } else if (init->parsed()) {
    if (!corpus.empty())
      st = mgs_category_structure_text(corpus.c_str(), opt.wiring, &text);
    else if (bench)
      st = mgs_structure_text(bench, opt.wiring, &text);
    else {
      std::fprintf(stderr,
                   "error: init needs a benchmark file or --corpus\n");
      mgs_benchmark_free(bench);
      return static_cast<int>(MGS_ERR_CONFIG);
    }
    if (st == MGS_OK) {
      std::fputs(text, stdout);
      mgs_string_free(text);
    }
  }

  mgs_benchmark_free(bench);
  if (st != MGS_OK)
    return fail(st);
  return rc;
}

#include "mgs.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "core/backend.hpp"
#include "core/errors.hpp"
#include "core/harness.hpp"
#include "core/sygus_parser.hpp"
#include "core/sygus_printer.hpp"

using namespace mgs;

struct mgs_benchmark {
  Benchmark b;
};

namespace {

thread_local std::string g_last_error;

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out)
    std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Exceptions stop at the language boundary and become status codes.
template <typename F> mgs_status guarded(F &&f) {
  try {
    f();
    return MGS_OK;
  } catch (const ParseError &e) {
    g_last_error = e.what();
    return MGS_ERR_CONFIG;
  } catch (const SortError &e) {
    g_last_error = e.what();
    return MGS_ERR_CONFIG;
  } catch (const ConfigError &e) {
    g_last_error = e.what();
    return MGS_ERR_CONFIG;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return MGS_ERR_INFRASTRUCTURE;
  }
}

WiringPolicy wiring_of(int w) {
  if (w != MGS_WIRING_SAME_INDEX && w != MGS_WIRING_CASCADE)
    throw ConfigError("unknown wiring policy code " + std::to_string(w));
  return w == MGS_WIRING_CASCADE ? WiringPolicy::Cascade
                                 : WiringPolicy::SameIndex;
}

BackendConfig backend_of(const mgs_options &opt) {
  BackendConfig cfg;
  switch (opt.backend) {
  case MGS_BACKEND_BUILTIN:
    cfg.kind = BackendConfig::Kind::Builtin;
    break;
  case MGS_BACKEND_EXTERNAL:
    cfg.kind = BackendConfig::Kind::External;
    if (!opt.solver_binary || !*opt.solver_binary)
      throw ConfigError("external backend requires solver_binary");
    cfg.binary = opt.solver_binary;
    if (opt.scratch_dir && *opt.scratch_dir)
      cfg.scratch_dir = opt.scratch_dir;
    break;
  default:
    throw ConfigError("unknown backend code " + std::to_string(opt.backend));
  }
  cfg.timeout_seconds = opt.timeout_seconds;
  return cfg;
}

GAConfig ga_of(const mgs_options &opt) {
  GAConfig ga;
  ga.population_size = opt.population;
  ga.parent_count = opt.parents;
  ga.max_generations = opt.generations;
  ga.timeout_seconds = opt.timeout_seconds;
  ga.mutation_rate = opt.mutation_rate;
  ga.seed = opt.seed;
  ga.parallel_workers = opt.workers ? opt.workers : 1;
  return ga;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// The benchmark's structure and instance: restricted by a saved matrix
// (whose wiring wins, as in eval_matrix) or the full instance.
std::pair<MatrixStructure, MatrixInstance>
structure_for(const Benchmark &b, const char *matrix_path, int wiring) {
  if (matrix_path && *matrix_path) {
    MatrixFile f = deserialize_matrix(read_file(matrix_path));
    MatrixStructure s = build_structure(b, f.policy);
    MatrixInstance m = project_matrix_file(f, b, s, &std::cerr);
    return {std::move(s), std::move(m)};
  }
  MatrixStructure s = build_structure(b, wiring_of(wiring));
  MatrixInstance m = full_instance(s);
  return {std::move(s), std::move(m)};
}

bool all_present(std::initializer_list<const void *> ptrs) {
  for (const void *p : ptrs)
    if (!p) {
      g_last_error = "null argument";
      return false;
    }
  return true;
}

} // namespace

extern "C" {

void mgs_options_init(mgs_options *opt) {
  if (!opt)
    return;
  *opt = mgs_options{};
  GAConfig ga;
  opt->seed = ga.seed;
  opt->population = ga.population_size;
  opt->parents = ga.parent_count;
  opt->generations = ga.max_generations;
  opt->timeout_seconds = ga.timeout_seconds;
  opt->mutation_rate = ga.mutation_rate;
  opt->workers = ga.parallel_workers;
  opt->train_count = 0;
  opt->wiring = MGS_WIRING_SAME_INDEX;
  opt->backend = MGS_BACKEND_BUILTIN;
  opt->solver_binary = nullptr;
  opt->scratch_dir = nullptr;
}

const char *mgs_version(void) { return "0.1.0"; }

const char *mgs_last_error(void) { return g_last_error.c_str(); }

void mgs_string_free(char *s) { std::free(s); }

mgs_status mgs_benchmark_parse_file(const char *path, mgs_benchmark **out) {
  if (!all_present({path, out}))
    return MGS_ERR_CONFIG;
  return guarded([&] {
    auto *h = new mgs_benchmark{parse_benchmark_file(path)};
    *out = h;
  });
}

mgs_status mgs_benchmark_parse_text(const char *text, const char *source_id,
                                    mgs_benchmark **out) {
  if (!all_present({text, out}))
    return MGS_ERR_CONFIG;
  return guarded([&] {
    auto *h = new mgs_benchmark{
        parse_benchmark(text, source_id ? source_id : "<memory>")};
    *out = h;
  });
}

void mgs_benchmark_free(mgs_benchmark *b) { delete b; }

mgs_status mgs_benchmark_print(const mgs_benchmark *b, char **out) {
  if (!all_present({b, out}))
    return MGS_ERR_CONFIG;
  return guarded([&] { *out = dup_string(print_benchmark(b->b)); });
}

mgs_status mgs_structure_text(const mgs_benchmark *b, int wiring, char **out) {
  if (!all_present({b, out}))
    return MGS_ERR_CONFIG;
  return guarded([&] {
    MatrixStructure s = build_structure(b->b, wiring_of(wiring));
    *out = dup_string(serialize_matrix(s, full_instance(s)));
  });
}

mgs_status mgs_category_structure_text(const char *corpus_glob, int wiring,
                                       char **out) {
  if (!all_present({corpus_glob, out}))
    return MGS_ERR_CONFIG;
  return guarded([&] {
    auto corpus = load_corpus(corpus_glob);
    std::vector<const Benchmark *> ptrs;
    for (const auto &b : corpus)
      ptrs.push_back(&b);
    CategoryModel model = CategoryModel::build(ptrs, wiring_of(wiring));
    *out = dup_string(
        serialize_matrix(model.genome, full_instance(model.genome)));
  });
}

mgs_status mgs_emit_with_matrix(const mgs_benchmark *b,
                                const char *matrix_path, int wiring,
                                char **out) {
  if (!all_present({b, out}))
    return MGS_ERR_CONFIG;
  return guarded([&] {
    auto [s, m] = structure_for(b->b, matrix_path, wiring);
    auto pruned = prune(instantiate(s, m));
    if (!pruned)
      throw ConfigError("the matrix leaves an empty grammar for '" +
                        b->b.source_id + "'");
    *out = dup_string(emit_benchmark_with_grammar(b->b, *pruned));
  });
}

mgs_status mgs_solve(const mgs_benchmark *b, const char *matrix_path,
                     const mgs_options *opt, char **out) {
  if (!all_present({b, opt, out}))
    return MGS_ERR_CONFIG;
  return guarded([&] {
    BackendConfig backend = backend_of(*opt);
    check_backend(backend);
    auto [s, m] = structure_for(b->b, matrix_path, opt->wiring);
    std::ostringstream text;
    auto pruned = prune(instantiate(s, m));
    if (!pruned) {
      text << "status Unsolved\ntime " << opt->timeout_seconds
           << "\ndiagnostics empty grammar\n";
    } else {
      SolveResult r = solve(b->b, *pruned, backend);
      text << "status " << status_name(r.status) << "\ntime " << r.wall_time
           << "\ncandidates " << r.candidates_enumerated << "\n";
      if (r.solution)
        text << print_solution(b->b.synth_fun, r.solution) << "\n";
      if (!r.diagnostics.empty())
        text << "diagnostics " << r.diagnostics << "\n";
    }
    *out = dup_string(text.str());
  });
}

mgs_status mgs_run_experiment(const char *corpus_glob,
                              const char *category_label, const char *out_dir,
                              const mgs_options *opt, char **report_out) {
  if (!all_present({corpus_glob, out_dir, opt, report_out}))
    return MGS_ERR_CONFIG;
  return guarded([&] {
    ExperimentConfig cfg;
    cfg.corpus_glob = corpus_glob;
    if (category_label && *category_label)
      cfg.category_label = category_label;
    cfg.train_count = opt->train_count;
    cfg.split_seed = opt->seed;
    cfg.wiring = wiring_of(opt->wiring);
    cfg.ga = ga_of(*opt);
    cfg.backend = backend_of(*opt);
    cfg.out_dir = out_dir && *out_dir ? out_dir : ".";
    ExperimentResult res = run_experiment(cfg, &std::cerr);
    ReportContext ctx;
    ctx.category_label = cfg.category_label;
    ctx.train_size = cfg.train_count;
    ctx.test_size = res.corpus_size - cfg.train_count;
    ctx.timeout_seconds = cfg.ga.timeout_seconds;
    ctx.backend_name =
        cfg.backend.kind == BackendConfig::Kind::Builtin ? "builtin"
                                                         : cfg.backend.binary;
    *report_out =
        dup_string(render_report(ctx, res.default_row, res.evolved_row));
  });
}

mgs_status mgs_eval_matrix(const char *matrix_path, const char *corpus_glob,
                           const mgs_options *opt, char **report_out) {
  if (!all_present({matrix_path, corpus_glob, opt, report_out}))
    return MGS_ERR_CONFIG;
  return guarded([&] {
    MatrixFile f = deserialize_matrix(read_file(matrix_path));
    auto corpus = load_corpus(corpus_glob);
    BackendConfig backend = backend_of(*opt);
    EvalReport rep = eval_matrix(f, corpus, backend,
                                 opt->workers ? opt->workers : 1, &std::cerr);
    std::ostringstream text;
    text << results_csv({{rep.row.label, rep.outcomes}});
    text << report_csv({rep.row});
    *report_out = dup_string(text.str());
  });
}

} // extern "C"

#include "harness.hpp"

#include <glob.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "errors.hpp"
#include "sygus_parser.hpp"

namespace mgs {

std::vector<Benchmark> load_corpus(const std::string &pattern) {
  glob_t g{};
  int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  if (rc == GLOB_NOMATCH) {
    ::globfree(&g);
    throw ConfigError("no benchmarks match '" + pattern + "'");
  }
  if (rc != 0) {
    ::globfree(&g);
    throw InfrastructureError("glob failed for '" + pattern + "'");
  }
  std::vector<std::string> paths(g.gl_pathv, g.gl_pathv + g.gl_pathc);
  ::globfree(&g);
  std::vector<Benchmark> corpus;
  for (const auto &p : paths)
    corpus.push_back(parse_benchmark_file(p));
  return corpus;
}

Split split(const std::vector<Benchmark> &corpus, std::size_t train_count,
            std::uint64_t seed, std::ostream *warnings) {
  if (train_count > corpus.size())
    throw ConfigError("train count " + std::to_string(train_count) +
                      " exceeds corpus size " +
                      std::to_string(corpus.size()));
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  Rng rng = derived_rng(seed, stream::split);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.below(i)]);
  Split s;
  for (std::size_t i = 0; i < order.size(); ++i)
    (i < train_count ? s.train : s.test).push_back(&corpus[order[i]]);
  if (s.test.empty() && warnings)
    *warnings << "warning: empty test set (train count equals corpus size)\n";
  return s;
}

ReportRow make_report_row(const std::string &label,
                          const std::vector<BenchOutcome> &outcomes) {
  ReportRow row;
  row.label = label;
  row.total = outcomes.size();
  double solved_time = 0.0;
  for (const auto &o : outcomes)
    if (o.solved) {
      ++row.solved;
      solved_time += o.time;
    }
  if (row.solved > 0)
    row.avg_time = solved_time / static_cast<double>(row.solved);
  if (row.total > 0)
    row.percent =
        100.0 * static_cast<double>(row.solved) / static_cast<double>(row.total);
  return row;
}

namespace {

std::string fixed(double v, int precision) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << v;
  return out.str();
}

std::string avg_cell(const ReportRow &r, int precision) {
  return r.solved > 0 ? fixed(r.avg_time, precision) : "n/a";
}

std::string percent_cell(const ReportRow &r, int precision) {
  return r.total > 0 ? fixed(r.percent, precision) : "n/a";
}

} // namespace

std::string results_csv(
    const std::vector<std::pair<std::string, std::vector<BenchOutcome>>>
        &sections) {
  std::ostringstream out;
  out << "grammar,benchmark,status,solved,time_seconds,candidates\n";
  for (const auto &[label, outcomes] : sections)
    for (const auto &o : outcomes)
      out << label << ',' << o.id << ',' << status_name(o.status) << ','
          << (o.solved ? 1 : 0) << ',' << fixed(o.time, 6) << ','
          << o.candidates << "\n";
  return out.str();
}

std::string report_csv(const std::vector<ReportRow> &rows) {
  std::ostringstream out;
  out << "grammar,total,solved,avg_time_seconds,percent_solved\n";
  for (const auto &r : rows)
    out << r.label << ',' << r.total << ',' << r.solved << ','
        << avg_cell(r, 6) << ',' << percent_cell(r, 6) << "\n";
  return out.str();
}

std::string render_report(const ReportContext &ctx,
                          const ReportRow &default_row,
                          const ReportRow &evolved_row) {
  std::ostringstream out;
  out << "Category: " << ctx.category_label << "  (train " << ctx.train_size
      << " / test " << ctx.test_size << ", timeout "
      << fixed(ctx.timeout_seconds, 1) << "s, backend " << ctx.backend_name
      << ")\n\n";
  out << std::left << std::setw(14) << "Grammar" << std::right << std::setw(10)
      << "# Solved" << std::setw(15) << "Avg. Time(s)" << std::setw(11)
      << "% Solved" << "\n";
  for (const ReportRow *r : {&default_row, &evolved_row}) {
    std::string solved =
        std::to_string(r->solved) + "/" + std::to_string(r->total);
    out << std::left << std::setw(14) << r->label << std::right
        << std::setw(10) << solved << std::setw(15) << avg_cell(*r, 3)
        << std::setw(11) << percent_cell(*r, 1) << "\n";
  }
  out << "\nImprovement (" << evolved_row.label << " vs " << default_row.label
      << "): ";
  out << (evolved_row.solved >= default_row.solved ? "+" : "")
      << (static_cast<long long>(evolved_row.solved) -
          static_cast<long long>(default_row.solved))
      << " solved";
  if (default_row.solved > 0 && evolved_row.solved > 0 &&
      evolved_row.avg_time > 0.0)
    out << ", avg time x" << fixed(default_row.avg_time / evolved_row.avg_time, 2);
  else
    out << ", avg time n/a";
  if (default_row.total > 0 && evolved_row.total > 0)
    out << ", " << (evolved_row.percent >= default_row.percent ? "+" : "")
        << fixed(evolved_row.percent - default_row.percent, 1) << "% solved";
  else
    out << ", % solved n/a";
  out << "\n";
  return out.str();
}

namespace {

void write_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path);
  if (!out)
    throw InfrastructureError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out)
    throw InfrastructureError("write failed for " + path.string());
}

std::string backend_label(const BackendConfig &b) {
  return b.kind == BackendConfig::Kind::Builtin ? "builtin"
                                                : "external:" + b.binary;
}

std::vector<BenchOutcome> report_outcomes(const FitnessReport &rep) {
  return rep.per_benchmark;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig &cfg,
                                std::ostream *log) {
  std::vector<Benchmark> corpus = load_corpus(cfg.corpus_glob);
  Split sp = split(corpus, cfg.train_count, cfg.split_seed, log);

  ExperimentResult res;
  res.corpus_size = corpus.size();
  res.model = CategoryModel::build(sp.train, cfg.wiring);
  std::vector<EvalTarget> train_targets = res.model.targets_for(sp.train, log);
  res.search = search(cfg.ga, res.model.genome, std::move(train_targets),
                      cfg.backend);

  std::filesystem::create_directories(cfg.out_dir);
  std::filesystem::path out(cfg.out_dir);
  write_file(out / "matrix.txt",
             serialize_matrix(res.model.genome, res.search.best));
  write_file(out / "history.csv", history_csv(res.search.history));

  std::vector<EvalTarget> test_targets = res.model.targets_for(sp.test, log);
  FitnessEvaluator evaluator(std::move(test_targets), cfg.backend, cfg.ga);
  try {
    std::vector<FitnessReport> reps = evaluator.evaluate_all(
        {full_instance(res.model.genome), res.search.best});
    res.default_outcomes = report_outcomes(reps[0]);
    res.evolved_outcomes = report_outcomes(reps[1]);
  } catch (...) {
    // Flush whatever the test phase produced before propagating.
    write_file(out / "results.csv",
               results_csv({{"default", res.default_outcomes},
                            {"metagrammar", res.evolved_outcomes}}));
    throw;
  }
  res.default_row = make_report_row("default", res.default_outcomes);
  res.evolved_row = make_report_row("metagrammar", res.evolved_outcomes);

  write_file(out / "results.csv",
             results_csv({{"default", res.default_outcomes},
                          {"metagrammar", res.evolved_outcomes}}));
  write_file(out / "report.csv", report_csv({res.default_row, res.evolved_row}));
  ReportContext ctx{cfg.category_label, sp.train.size(), sp.test.size(),
                    cfg.ga.timeout_seconds, backend_label(cfg.backend)};
  write_file(out / "report.txt",
             render_report(ctx, res.default_row, res.evolved_row));
  return res;
}

EvalReport eval_matrix(const MatrixFile &f,
                       const std::vector<Benchmark> &corpus,
                       const BackendConfig &backend, std::size_t workers,
                       std::ostream *warnings) {
  check_backend(backend);
  struct Job {
    const Benchmark *bench;
    MatrixStructure structure;
    MatrixInstance instance;
  };
  std::vector<Job> jobs;
  for (const auto &b : corpus) {
    Job j;
    j.bench = &b;
    j.structure = build_structure(b, f.policy);
    j.instance = project_matrix_file(f, b, j.structure, warnings);
    jobs.push_back(std::move(j));
  }

  EvalReport rep;
  rep.outcomes.resize(jobs.size());
  auto run_one = [&](std::size_t i) {
    rep.outcomes[i] =
        evaluate_instance(*jobs[i].bench, jobs[i].structure, jobs[i].instance,
                          backend, backend.timeout_seconds);
  };
  if (workers <= 1 || jobs.size() <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i)
      run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&]() {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= jobs.size())
          return;
        try {
          run_one(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure)
            failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < std::min(workers, jobs.size()); ++w)
      threads.emplace_back(worker);
    for (auto &t : threads)
      t.join();
    if (failure)
      std::rethrow_exception(failure);
  }
  rep.row = make_report_row("matrix", rep.outcomes);
  return rep;
}

} // namespace mgs

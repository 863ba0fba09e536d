#ifndef MGS_CORE_HARNESS_HPP
#define MGS_CORE_HARNESS_HPP

#include <iosfwd>

#include "category.hpp"

namespace mgs {

// Parses every file matching the glob pattern, sorted by path. source_id
// is the path as matched. Errors when nothing matches.
std::vector<Benchmark> load_corpus(const std::string &pattern);

struct Split {
  std::vector<const Benchmark *> train;
  std::vector<const Benchmark *> test;
};

// Seeded uniform shuffle, then the first train_count benchmarks train and
// the rest test. Deterministic per seed; warns when the test set is empty.
Split split(const std::vector<Benchmark> &corpus, std::size_t train_count,
            std::uint64_t seed, std::ostream *warnings);

struct ExperimentConfig {
  std::string corpus_glob;
  std::string category_label = "category";
  std::size_t train_count = 0;
  std::uint64_t split_seed = 0;
  WiringPolicy wiring = WiringPolicy::SameIndex;
  GAConfig ga;
  BackendConfig backend;
  std::string out_dir = ".";
};

struct ReportRow {
  std::string label;
  std::size_t total = 0;
  std::size_t solved = 0;
  double avg_time = 0.0; // over solved benchmarks only; n/a when none
  double percent = 0.0;  // 100 * solved / total; n/a when total is 0
};

ReportRow make_report_row(const std::string &label,
                          const std::vector<BenchOutcome> &outcomes);

// grammar,benchmark,status,solved,time_seconds,candidates rows; report
// arithmetic is re-derivable from this.
std::string results_csv(
    const std::vector<std::pair<std::string, std::vector<BenchOutcome>>>
        &sections);
std::string report_csv(const std::vector<ReportRow> &rows);

struct ReportContext {
  std::string category_label;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  double timeout_seconds = 0.0;
  std::string backend_name;
};

std::string render_report(const ReportContext &ctx,
                          const ReportRow &default_row,
                          const ReportRow &evolved_row);

struct ExperimentResult {
  std::size_t corpus_size = 0;
  CategoryModel model;
  SearchResult search;
  std::vector<BenchOutcome> default_outcomes; // full instance on test set
  std::vector<BenchOutcome> evolved_outcomes; // best instance on test set
  ReportRow default_row;
  ReportRow evolved_row;
};

// Trains on the split's train set, evaluates the best and the full
// instance on the test set through the identical pipeline, and writes
// matrix.txt, history.csv, results.csv, report.csv and report.txt under
// cfg.out_dir. Training artifacts are flushed before test evaluation so an
// infrastructure abort still leaves them behind.
ExperimentResult run_experiment(const ExperimentConfig &cfg,
                                std::ostream *log);

struct EvalReport {
  std::vector<BenchOutcome> outcomes;
  ReportRow row;
};

// Re-evaluates a saved matrix over a corpus, matching rows and columns by
// label (see project_matrix_file); the wiring policy comes from the file.
EvalReport eval_matrix(const MatrixFile &f,
                       const std::vector<Benchmark> &corpus,
                       const BackendConfig &backend, std::size_t workers,
                       std::ostream *warnings);

} // namespace mgs

#endif

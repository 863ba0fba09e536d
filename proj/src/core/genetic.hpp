#ifndef MGS_CORE_GENETIC_HPP
#define MGS_CORE_GENETIC_HPP

#include <functional>
#include <map>
#include <mutex>

#include "backend.hpp"
#include "matrix.hpp"

namespace mgs {

struct GAConfig {
  std::size_t population_size = 60;
  std::size_t parent_count = 15;
  std::size_t max_generations = 100;
  double timeout_seconds = 10.0; // the fitness formula's T
  // probability per valid cell; negative means the default 1/valid_cells
  double mutation_rate = -1.0;
  double init_density = 0.5;
  std::uint64_t seed = 0;
  std::size_t parallel_workers = 1;
};

struct BenchOutcome {
  std::string id;
  bool solved = false;
  double time = 0.0; // clamped to T; equals T when unsolved
  SolveStatus status = SolveStatus::Unsolved;
  std::uint64_t candidates = 0;
  std::string diagnostics;
};

struct FitnessReport {
  MatrixInstance instance;
  double score = 0.0;
  std::size_t solved_count = 0;
  std::size_t total_benchmarks = 0;
  std::vector<BenchOutcome> per_benchmark;
};

// f = n * sum(T - t_i); unsolved benchmarks carry t_i = T and so add zero.
double fitness_score(std::size_t solved_count,
                     const std::vector<double> &times, double timeout);

// One benchmark as seen by the genome: its own structure plus the projection
// from a genome instance onto it. For single-benchmark searches this is the
// identity.
struct EvalTarget {
  const Benchmark *bench = nullptr;
  MatrixStructure structure;
  std::function<MatrixInstance(const MatrixInstance &)> project;
};

std::vector<EvalTarget> identity_targets(const MatrixStructure &s,
                                         const std::vector<Benchmark> &bs);

// Prune-instantiate-solve for one concrete per-benchmark instance; the
// single code path behind fitness, test evaluation, and matrix
// re-evaluation. Unsolved outcomes carry time = timeout.
BenchOutcome evaluate_instance(const Benchmark &b, const MatrixStructure &s,
                               const MatrixInstance &m,
                               const BackendConfig &backend, double timeout);

// Evaluates instances against every target, caching per (benchmark,
// projected bits) for the lifetime of the search. An empty grammar after
// pruning scores unsolved without touching the backend. Infrastructure
// errors from the backend propagate and abort the search.
class FitnessEvaluator {
public:
  FitnessEvaluator(std::vector<EvalTarget> targets, BackendConfig backend,
                   const GAConfig &cfg);

  FitnessReport evaluate(const MatrixInstance &genome);
  // Parallel over instances (cfg.parallel_workers); results in input order.
  std::vector<FitnessReport> evaluate_all(
      const std::vector<MatrixInstance> &pop);

private:
  BenchOutcome outcome_for(std::size_t target_idx, const MatrixInstance &genome);
  BenchOutcome outcome_for_projected(std::size_t target_idx,
                                     const MatrixInstance &projected);

  std::vector<EvalTarget> targets_;
  BackendConfig backend_;
  double timeout_;
  std::size_t workers_;
  std::mutex cache_mu_;
  std::map<std::pair<std::size_t, std::string>, BenchOutcome> cache_;
};

struct CrossoverMask {
  std::vector<std::vector<unsigned char>> bits; // 1 -> take second parent
};

CrossoverMask random_mask(const MatrixStructure &s, Rng &rng);

// Highest-score instances, ties broken by input order.
std::vector<MatrixInstance> best_n(const std::vector<MatrixInstance> &pop,
                                   const std::vector<FitnessReport> &reports,
                                   std::size_t n);

MatrixInstance crossover(const MatrixStructure &s, const MatrixInstance &p1,
                         const MatrixInstance &p2, const CrossoverMask &mask);

// Pairs (0,1),(0,2),...,(1,2),... in rank order, cycling, one child per
// pair visit with a fresh mask, until `limit` children exist.
std::vector<MatrixInstance> crossover_population(
    const MatrixStructure &s, const std::vector<MatrixInstance> &parents,
    std::size_t limit, Rng &rng);

MatrixInstance mutate_with_flips(
    const MatrixStructure &s, const MatrixInstance &m,
    const std::vector<std::pair<std::size_t, std::size_t>> &flips);

// Each valid cell flips independently with probability `rate`.
MatrixInstance mutate(const MatrixStructure &s, const MatrixInstance &m,
                      double rate, Rng &rng);

struct HistoryRow {
  std::size_t generation = 0;
  double best_score = 0.0;
  double mean_score = 0.0;
  std::size_t best_solved_count = 0;
  double best_ever_score = 0.0;
};

std::string history_csv(const std::vector<HistoryRow> &rows);

struct SearchResult {
  MatrixInstance best; // of the final population
  FitnessReport best_report;
  // Mutation can destroy the best individual mid-run, so the best instance
  // ever evaluated is tracked alongside the faithful final-population best.
  MatrixInstance best_ever;
  FitnessReport best_ever_report;
  std::vector<HistoryRow> history; // one row per evaluated generation
};

SearchResult search(const GAConfig &cfg, const MatrixStructure &s,
                    std::vector<EvalTarget> targets,
                    const BackendConfig &backend);

} // namespace mgs

#endif

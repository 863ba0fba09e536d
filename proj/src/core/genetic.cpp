#include "genetic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "errors.hpp"

namespace mgs {

double fitness_score(std::size_t solved_count,
                     const std::vector<double> &times, double timeout) {
  double sum = 0;
  for (double t : times)
    sum += timeout - std::min(t, timeout);
  return static_cast<double>(solved_count) * sum;
}

std::vector<EvalTarget> identity_targets(const MatrixStructure &s,
                                         const std::vector<Benchmark> &bs) {
  std::vector<EvalTarget> targets;
  for (const auto &b : bs)
    targets.push_back(
        {&b, s, [](const MatrixInstance &m) { return m; }});
  return targets;
}

FitnessEvaluator::FitnessEvaluator(std::vector<EvalTarget> targets,
                                   BackendConfig backend, const GAConfig &cfg)
    : targets_(std::move(targets)), backend_(std::move(backend)),
      timeout_(cfg.timeout_seconds),
      workers_(std::max<std::size_t>(1, cfg.parallel_workers)) {
  backend_.timeout_seconds = timeout_;
  check_backend(backend_);
}

BenchOutcome evaluate_instance(const Benchmark &b, const MatrixStructure &s,
                               const MatrixInstance &m,
                               const BackendConfig &backend, double timeout) {
  BenchOutcome out;
  out.id = b.source_id;
  auto pruned = prune(instantiate(s, m));
  if (!pruned) {
    out.time = timeout;
    out.status = SolveStatus::Unsolved;
    out.diagnostics = "empty grammar";
    return out;
  }
  SolveResult r = solve(b, *pruned, backend);
  out.status = r.status;
  out.solved = r.status == SolveStatus::Solved;
  out.time = out.solved ? std::min(r.wall_time, timeout) : timeout;
  out.candidates = r.candidates_enumerated;
  out.diagnostics = r.diagnostics;
  return out;
}

BenchOutcome FitnessEvaluator::outcome_for(std::size_t target_idx,
                                           const MatrixInstance &genome) {
  return outcome_for_projected(target_idx,
                               targets_[target_idx].project(genome));
}

BenchOutcome
FitnessEvaluator::outcome_for_projected(std::size_t target_idx,
                                        const MatrixInstance &projected) {
  const EvalTarget &target = targets_[target_idx];
  auto key = std::make_pair(target_idx, projected.key());
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    if (auto it = cache_.find(key); it != cache_.end())
      return it->second;
  }
  BenchOutcome out =
      evaluate_instance(*target.bench, target.structure, projected, backend_,
                        timeout_);
  std::lock_guard<std::mutex> lock(cache_mu_);
  cache_.emplace(key, out);
  return out;
}

FitnessReport FitnessEvaluator::evaluate(const MatrixInstance &genome) {
  FitnessReport rep;
  rep.instance = genome;
  rep.total_benchmarks = targets_.size();
  std::vector<double> times;
  for (std::size_t i = 0; i < targets_.size(); ++i) {
    BenchOutcome out = outcome_for(i, genome);
    rep.solved_count += out.solved;
    times.push_back(out.time);
    rep.per_benchmark.push_back(std::move(out));
  }
  rep.score = fitness_score(rep.solved_count, times, timeout_);
  return rep;
}

std::vector<FitnessReport> FitnessEvaluator::evaluate_all(
    const std::vector<MatrixInstance> &pop) {
  // Work items are (instance, benchmark) pairs, deduplicated up front by
  // projected bits: a converged population costs one solve per distinct
  // genome, not one per member. Workers race only over distinct jobs, so
  // scheduling cannot change any outcome.
  struct Job {
    std::size_t target;
    MatrixInstance projected;
    BenchOutcome out;
  };
  std::vector<Job> jobs;
  std::map<std::pair<std::size_t, std::string>, std::size_t> job_index;
  std::vector<std::vector<std::size_t>> slot(
      pop.size(), std::vector<std::size_t>(targets_.size()));
  for (std::size_t i = 0; i < pop.size(); ++i)
    for (std::size_t t = 0; t < targets_.size(); ++t) {
      MatrixInstance proj = targets_[t].project(pop[i]);
      auto [it, fresh] =
          job_index.try_emplace(std::make_pair(t, proj.key()), jobs.size());
      if (fresh)
        jobs.push_back(Job{t, std::move(proj), {}});
      slot[i][t] = it->second;
    }

  auto run_job = [&](std::size_t j) {
    jobs[j].out = outcome_for_projected(jobs[j].target, jobs[j].projected);
  };
  if (workers_ <= 1 || jobs.size() <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j)
      run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&]() {
      while (true) {
        std::size_t j = next.fetch_add(1);
        if (j >= jobs.size())
          return;
        try {
          run_job(j);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure)
            failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < std::min(workers_, jobs.size()); ++w)
      threads.emplace_back(worker);
    for (auto &t : threads)
      t.join();
    if (failure)
      std::rethrow_exception(failure);
  }

  std::vector<FitnessReport> reports(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    FitnessReport &rep = reports[i];
    rep.instance = pop[i];
    rep.total_benchmarks = targets_.size();
    std::vector<double> times;
    for (std::size_t t = 0; t < targets_.size(); ++t) {
      const BenchOutcome &out = jobs[slot[i][t]].out;
      rep.solved_count += out.solved;
      times.push_back(out.time);
      rep.per_benchmark.push_back(out);
    }
    rep.score = fitness_score(rep.solved_count, times, timeout_);
  }
  return reports;
}

CrossoverMask random_mask(const MatrixStructure &s, Rng &rng) {
  CrossoverMask mask;
  mask.bits.assign(s.rows.size(),
                   std::vector<unsigned char>(s.cols.size(), 0));
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    for (std::size_t j = 0; j < s.cols.size(); ++j)
      if (s.valid[i][j])
        mask.bits[i][j] = rng.coin() ? 1 : 0;
  return mask;
}

std::vector<MatrixInstance> best_n(const std::vector<MatrixInstance> &pop,
                                   const std::vector<FitnessReport> &reports,
                                   std::size_t n) {
  if (n > pop.size())
    throw ConfigError("cannot select " + std::to_string(n) + " of " +
                      std::to_string(pop.size()) + " instances");
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&reports](std::size_t a, std::size_t b) {
                     return reports[a].score > reports[b].score;
                   });
  std::vector<MatrixInstance> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    out.push_back(pop[order[k]]);
  return out;
}

MatrixInstance crossover(const MatrixStructure &s, const MatrixInstance &p1,
                         const MatrixInstance &p2, const CrossoverMask &mask) {
  if (p1.bits.size() != s.rows.size() || p2.bits.size() != s.rows.size() ||
      mask.bits.size() != s.rows.size())
    throw ConfigError("crossover shape mismatch");
  MatrixInstance child = MatrixInstance::zeros(s);
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    for (std::size_t j = 0; j < s.cols.size(); ++j)
      if (s.valid[i][j])
        child.bits[i][j] = mask.bits[i][j] ? p2.bits[i][j] : p1.bits[i][j];
  return child;
}

std::vector<MatrixInstance> crossover_population(
    const MatrixStructure &s, const std::vector<MatrixInstance> &parents,
    std::size_t limit, Rng &rng) {
  if (parents.size() < 2)
    throw ConfigError("crossover needs at least two parents");
  std::vector<MatrixInstance> children;
  children.reserve(limit);
  std::size_t i = 0, j = 1;
  while (children.size() < limit) {
    CrossoverMask mask = random_mask(s, rng);
    children.push_back(crossover(s, parents[i], parents[j], mask));
    if (++j >= parents.size()) {
      ++i;
      if (i + 1 >= parents.size())
        i = 0;
      j = i + 1;
    }
  }
  return children;
}

MatrixInstance mutate_with_flips(
    const MatrixStructure &s, const MatrixInstance &m,
    const std::vector<std::pair<std::size_t, std::size_t>> &flips) {
  MatrixInstance out = m;
  for (const auto &[i, j] : flips) {
    if (i >= s.rows.size() || j >= s.cols.size() || !s.valid[i][j])
      throw ConfigError("mutation flip at invalid cell (" + std::to_string(i) +
                        ", " + std::to_string(j) + ")");
    out.bits[i][j] ^= 1;
  }
  return out;
}

MatrixInstance mutate(const MatrixStructure &s, const MatrixInstance &m,
                      double rate, Rng &rng) {
  std::vector<std::pair<std::size_t, std::size_t>> flips;
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    for (std::size_t j = 0; j < s.cols.size(); ++j)
      if (s.valid[i][j] && rng.bernoulli(rate))
        flips.emplace_back(i, j);
  return mutate_with_flips(s, m, flips);
}

std::string history_csv(const std::vector<HistoryRow> &rows) {
  std::ostringstream out;
  out << "generation,best_score,mean_score,best_solved_count,best_ever_score\n";
  out.setf(std::ios::fixed);
  out.precision(6);
  for (const auto &r : rows)
    out << r.generation << ',' << r.best_score << ',' << r.mean_score << ','
        << r.best_solved_count << ',' << r.best_ever_score << '\n';
  return out.str();
}

SearchResult search(const GAConfig &cfg, const MatrixStructure &s,
                    std::vector<EvalTarget> targets,
                    const BackendConfig &backend) {
  if (targets.empty())
    throw ConfigError("no benchmarks to search over");
  if (cfg.parent_count > cfg.population_size)
    throw ConfigError("parent_count exceeds population_size");
  if (cfg.parent_count < 2)
    throw ConfigError("parent_count must be at least 2");
  if (cfg.timeout_seconds <= 0)
    throw ConfigError("timeout must be positive");
  const std::size_t cells = s.valid_count();
  if (cells == 0)
    throw ConfigError("matrix structure has no valid cells");
  double rate = cfg.mutation_rate >= 0 ? cfg.mutation_rate
                                       : 1.0 / static_cast<double>(cells);
  if (rate > 1.0)
    throw ConfigError("mutation rate must be in [0, 1]");

  FitnessEvaluator evaluator(std::move(targets), backend, cfg);

  Rng init_rng = derived_rng(cfg.seed, stream::init_population);
  std::vector<MatrixInstance> pop;
  pop.reserve(cfg.population_size);
  for (std::size_t k = 0; k < cfg.population_size; ++k)
    pop.push_back(random_instance(s, init_rng, cfg.init_density));

  SearchResult result;
  bool have_best_ever = false;

  auto evaluate_generation = [&](std::size_t generation) {
    std::vector<FitnessReport> reports = evaluator.evaluate_all(pop);
    std::size_t best_idx = 0;
    double sum = 0;
    for (std::size_t k = 0; k < reports.size(); ++k) {
      sum += reports[k].score;
      if (reports[k].score > reports[best_idx].score)
        best_idx = k;
    }
    if (!have_best_ever ||
        reports[best_idx].score > result.best_ever_report.score) {
      have_best_ever = true;
      result.best_ever = pop[best_idx];
      result.best_ever_report = reports[best_idx];
    }
    result.history.push_back({generation, reports[best_idx].score,
                              sum / static_cast<double>(reports.size()),
                              reports[best_idx].solved_count,
                              result.best_ever_report.score});
    return reports;
  };

  for (std::size_t gen = 0; gen < cfg.max_generations; ++gen) {
    std::vector<FitnessReport> reports = evaluate_generation(gen);
    std::vector<MatrixInstance> parents =
        best_n(pop, reports, cfg.parent_count);
    Rng cross_rng = derived_rng(cfg.seed, stream::crossover, gen);
    std::vector<MatrixInstance> children =
        crossover_population(s, parents, cfg.population_size, cross_rng);
    Rng mut_rng = derived_rng(cfg.seed, stream::mutation, gen);
    pop.clear();
    for (const auto &c : children)
      pop.push_back(mutate(s, c, rate, mut_rng));
  }

  std::vector<FitnessReport> final_reports =
      evaluate_generation(cfg.max_generations);
  std::vector<MatrixInstance> best = best_n(pop, final_reports, 1);
  result.best = best[0];
  for (std::size_t k = 0; k < pop.size(); ++k)
    if (pop[k] == result.best) {
      result.best_report = final_reports[k];
      break;
    }
  return result;
}

} // namespace mgs

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "core/genetic.hpp"
#include "core/sygus_parser.hpp"

using namespace mgs;

namespace {

// 2x4 block mask [v v x x; x x v v], the shape of the worked examples
MatrixStructure tiny_structure() {
  MatrixStructure s;
  s.rows.push_back({"Start", Sort::integer(), 1});
  s.rows.push_back({"N_Bool_1", Sort::boolean(), 1});
  for (int j = 0; j < 2; ++j) {
    ProductionRule r;
    r.label = "i" + std::to_string(j);
    r.result_sort = Sort::integer();
    r.terminal = Term::constant(Value::integer_of(j));
    s.cols.push_back(r);
  }
  for (int j = 0; j < 2; ++j) {
    ProductionRule r;
    r.label = j ? "true" : "false";
    r.result_sort = Sort::boolean();
    r.terminal = Term::constant(Value::boolean_of(j == 1));
    s.cols.push_back(r);
  }
  s.valid = {{true, true, false, false}, {false, false, true, true}};
  return s;
}

MatrixInstance instance_of(const MatrixStructure &s,
                           const std::vector<std::vector<int>> &grid) {
  MatrixInstance m = MatrixInstance::zeros(s);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid[i].size(); ++j)
      m.bits[i][j] = static_cast<unsigned char>(grid[i][j]);
  return m;
}

Benchmark double_bench() {
  return parse_benchmark(
      "(set-logic LIA)(synth-fun double ((a Int)) Int)"
      "(declare-var x Int)(constraint (= (double x) (+ x x)))(check-synth)");
}

} // namespace

TEST_CASE("fitness closed forms") {
  CHECK(fitness_score(0, {10.0, 10.0}, 10.0) == 0.0);
  CHECK(fitness_score(1, {4.0, 10.0}, 10.0) == 6.0);
  CHECK(fitness_score(2, {1.0, 2.0, 10.0}, 10.0) == 34.0);
}

TEST_CASE("fitness matches an independent recomputation on random records") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    double T = 1.0 + static_cast<double>(rng.below(20));
    std::size_t n_total = 1 + rng.below(12);
    std::size_t solved = 0;
    std::vector<double> times;
    double expected_sum = 0.0;
    for (std::size_t i = 0; i < n_total; ++i) {
      if (rng.coin()) {
        double t = rng.real() * T;
        times.push_back(t);
        expected_sum += T - t;
        ++solved;
      } else {
        times.push_back(T);
      }
    }
    double expected = static_cast<double>(solved) * expected_sum;
    CHECK(fitness_score(solved, times, T) == doctest::Approx(expected));
  }
}

TEST_CASE("parent selection keeps rank with input-order ties") {
  MatrixStructure s = tiny_structure();
  std::vector<MatrixInstance> pop = {
      instance_of(s, {{1, 0, 0, 0}, {0, 0, 0, 0}}),
      instance_of(s, {{0, 1, 0, 0}, {0, 0, 0, 0}}),
      instance_of(s, {{0, 0, 0, 0}, {0, 0, 1, 0}})};
  auto report = [](double score) {
    FitnessReport r;
    r.score = score;
    return r;
  };
  std::vector<FitnessReport> reports = {report(5), report(9), report(1)};
  auto top = best_n(pop, reports, 2);
  REQUIRE(top.size() == 2);
  CHECK(top[0] == pop[1]);
  CHECK(top[1] == pop[0]);

  std::vector<FitnessReport> equal = {report(3), report(3), report(3)};
  auto first_two = best_n(pop, equal, 2);
  CHECK(first_two[0] == pop[0]);
  CHECK(first_two[1] == pop[1]);

  auto everyone = best_n(pop, reports, 3);
  CHECK(everyone[0] == pop[1]);
  CHECK(everyone[1] == pop[0]);
  CHECK(everyone[2] == pop[2]);
}

TEST_CASE("scattered crossover reproduces the worked example") {
  MatrixStructure s = tiny_structure();
  MatrixInstance p1 = instance_of(s, {{1, 0, 0, 0}, {0, 0, 1, 0}});
  MatrixInstance p2 = instance_of(s, {{0, 1, 0, 0}, {0, 0, 0, 1}});
  CrossoverMask mask;
  mask.bits = {{1, 0, 1, 1}, {0, 1, 1, 1}};
  MatrixInstance child = crossover(s, p1, p2, mask);
  CHECK(child == instance_of(s, {{0, 0, 0, 0}, {0, 0, 0, 1}}));

  CrossoverMask zero;
  zero.bits = {{0, 0, 0, 0}, {0, 0, 0, 0}};
  CHECK(crossover(s, p1, p2, zero) == p1);
  CrossoverMask one;
  one.bits = {{1, 1, 1, 1}, {1, 1, 1, 1}};
  CHECK(crossover(s, p1, p2, one) == p2);
}

TEST_CASE("crossover population cycles rank-ordered pairs") {
  MatrixStructure s = tiny_structure();
  std::vector<MatrixInstance> two = {
      instance_of(s, {{1, 1, 0, 0}, {0, 0, 1, 1}}),
      instance_of(s, {{0, 0, 0, 0}, {0, 0, 0, 0}})};
  Rng rng(11);
  auto kids = crossover_population(s, two, 3, rng);
  REQUIRE(kids.size() == 3);
  // same pair three times, fresh mask each visit
  bool all_same = kids[0] == kids[1] && kids[1] == kids[2];
  CHECK_FALSE(all_same);
  for (const auto &k : kids)
    for (std::size_t i = 0; i < s.rows.size(); ++i)
      for (std::size_t j = 0; j < s.cols.size(); ++j)
        CHECK((k.bits[i][j] == two[0].bits[i][j] ||
               k.bits[i][j] == two[1].bits[i][j]));

  CHECK(crossover_population(s, two, 0, rng).empty());
}

TEST_CASE("sixty children come from the first sixty of 105 pairs") {
  // parent k owns exactly the k-th valid cell, so any child of pair (i, j)
  // can only carry cells i and j
  Benchmark b = double_bench();
  MatrixStructure s = build_structure(b, WiringPolicy::SameIndex);
  auto cells = s.valid_cells();
  REQUIRE(cells.size() >= 15);
  std::vector<MatrixInstance> parents;
  for (std::size_t k = 0; k < 15; ++k) {
    MatrixInstance m = MatrixInstance::zeros(s);
    m.bits[cells[k].first][cells[k].second] = 1;
    parents.push_back(m);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < 15 && pairs.size() < 60; ++i)
    for (std::size_t j = i + 1; j < 15 && pairs.size() < 60; ++j)
      pairs.emplace_back(i, j);
  REQUIRE(pairs.size() == 60);

  Rng rng(3);
  auto kids = crossover_population(s, parents, 60, rng);
  REQUIRE(kids.size() == 60);
  for (std::size_t c = 0; c < kids.size(); ++c) {
    auto [i, j] = pairs[c];
    for (std::size_t k = 0; k < cells.size(); ++k) {
      bool allowed = k == i || k == j;
      if (!allowed)
        CHECK(kids[c].bits[cells[k].first][cells[k].second] == 0);
    }
  }
}

TEST_CASE("mutation reproduces the worked flip and honors rates") {
  MatrixStructure s = tiny_structure();
  MatrixInstance g1 = instance_of(s, {{1, 0, 0, 0}, {0, 0, 1, 0}});
  MatrixInstance g2 = mutate_with_flips(s, g1, {{0, 1}});
  CHECK(g2 == instance_of(s, {{1, 1, 0, 0}, {0, 0, 1, 0}}));

  Rng rng(17);
  CHECK(mutate(s, g1, 0.0, rng) == g1);
  MatrixInstance flipped = mutate(s, g1, 1.0, rng);
  CHECK(flipped == instance_of(s, {{0, 1, 0, 0}, {0, 0, 0, 1}}));

  Rng a(123), b(123);
  CHECK(mutate(s, g1, 0.5, a) == mutate(s, g1, 0.5, b));
}

TEST_CASE("history csv is exact and stable") {
  std::vector<HistoryRow> rows = {{0, 1.5, 0.25, 3, 1.5},
                                  {1, 2.0, 1.0, 4, 2.0}};
  CHECK(history_csv(rows) ==
        "generation,best_score,mean_score,best_solved_count,best_ever_score\n"
        "0,1.500000,0.250000,3,1.500000\n"
        "1,2.000000,1.000000,4,2.000000\n");
}

TEST_CASE("evaluator caches and parallel evaluation preserves order") {
  Benchmark b = double_bench();
  MatrixStructure s = build_structure(b, WiringPolicy::SameIndex);
  std::vector<Benchmark> corpus = {b};
  GAConfig cfg;
  cfg.timeout_seconds = 2.0;
  cfg.parallel_workers = 3;
  BackendConfig backend;
  backend.timeout_seconds = cfg.timeout_seconds;
  FitnessEvaluator ev(identity_targets(s, corpus), backend, cfg);

  MatrixInstance full = full_instance(s);
  FitnessReport r1 = ev.evaluate(full);
  FitnessReport r2 = ev.evaluate(full);
  CHECK(r1.solved_count == 1);
  CHECK(r1.score == r2.score);
  CHECK(r1.per_benchmark[0].time == r2.per_benchmark[0].time);

  MatrixInstance empty = MatrixInstance::zeros(s);
  std::vector<MatrixInstance> pop = {empty, full, empty};
  auto reports = ev.evaluate_all(pop);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].score == 0.0);
  CHECK(reports[1].score == r1.score);
  CHECK(reports[2].score == 0.0);
  CHECK(reports[0].per_benchmark[0].diagnostics.find("empty") !=
        std::string::npos);
}

TEST_CASE("search is deterministic and tracks best-ever") {
  Benchmark b = double_bench();
  MatrixStructure s = build_structure(b, WiringPolicy::SameIndex);
  std::vector<Benchmark> corpus = {b};
  GAConfig cfg;
  cfg.population_size = 4;
  cfg.parent_count = 2;
  cfg.max_generations = 2;
  cfg.timeout_seconds = 1.0;
  cfg.seed = 9;
  BackendConfig backend;
  backend.timeout_seconds = cfg.timeout_seconds;

  SearchResult r1 = search(cfg, s, identity_targets(s, corpus), backend);
  SearchResult r2 = search(cfg, s, identity_targets(s, corpus), backend);
  CHECK(r1.best == r2.best);
  CHECK(history_csv(r1.history) == history_csv(r2.history));
  REQUIRE(r1.history.size() == 3); // initial population plus one per generation

  double prev = 0.0;
  for (const auto &row : r1.history) {
    CHECK(row.best_ever_score >= prev);
    CHECK(row.best_ever_score >= row.best_score - 1e-12);
    prev = row.best_ever_score;
  }
  CHECK(r1.best_ever_report.score >= r1.best_report.score);
}

TEST_CASE("zero generations returns the best of the initial population") {
  Benchmark b = double_bench();
  MatrixStructure s = build_structure(b, WiringPolicy::SameIndex);
  std::vector<Benchmark> corpus = {b};
  GAConfig cfg;
  cfg.population_size = 3;
  cfg.parent_count = 2;
  cfg.max_generations = 0;
  cfg.timeout_seconds = 1.0;
  cfg.seed = 4;
  BackendConfig backend;
  backend.timeout_seconds = cfg.timeout_seconds;
  SearchResult r = search(cfg, s, identity_targets(s, corpus), backend);
  REQUIRE(r.history.size() == 1);
  CHECK(r.history[0].generation == 0);
  CHECK(r.best_report.score == r.history[0].best_score);
  CHECK(r.best_ever_report.score == r.history[0].best_score);
}

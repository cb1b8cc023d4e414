#include <benchmark/benchmark.h>

#include <vector>

#include "treeembed/analysis.hpp"
#include "treeembed/bounds.hpp"
#include "treeembed/graph_gen.hpp"
#include "treeembed/harness.hpp"

using namespace treeembed;

namespace {

const Graph& plane() {
  static const Graph g = projective_plane_graph(31);
  return g;
}

const Graph& sparse_random() {
  static const Graph g = gnp_graph({3000, 0.01, 5});
  return g;
}

void BM_GirthSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::girth(plane()));
}
void BM_GirthParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(girth(plane()));
}

PropertyOptions property_options(bool parallel) {
  PropertyOptions o;
  o.exhaustive_pair_budget = 0;
  o.sample = 2000;
  o.seed = 3;
  o.parallel = parallel;
  return o;
}

void BM_PropertySerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::check_property(sparse_random(), 10, 2, 100, property_options(false)));
}
void BM_PropertyParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_property(sparse_random(), 10, 2, 100, property_options(true)));
}

ExperimentConfig trial_config() {
  ExperimentConfig c;
  c.graph.family = "pp";
  c.graph.q = 31;
  c.tree.model = "random";
  c.tree.size = 1000;
  c.tree.max_degree = 20;
  c.trials = 32;
  c.base_seed = 1;
  c.collect_occupancy = true;
  return c;
}

void BM_TrialsSerial(benchmark::State& state) {
  const ExperimentConfig c = trial_config();
  for (auto _ : state) benchmark::DoNotOptimize(serial::run_experiment(c).successes);
}
void BM_TrialsParallel(benchmark::State& state) {
  const ExperimentConfig c = trial_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c).successes);
}

const std::vector<double>& tail_means() {
  static const std::vector<double> means(200, 0.05);
  return means;
}

void BM_TailSerial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(serial::simulate_supermartingale_tail(tail_means(), 0.5, 20000, 9).exceedances);
}
void BM_TailParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_supermartingale_tail(tail_means(), 0.5, 20000, 9).exceedances);
}

}  // namespace

BENCHMARK(BM_GirthSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GirthParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PropertySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PropertyParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TailSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TailParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#ifndef TREEEMBED_HARNESS_HPP
#define TREEEMBED_HARNESS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "treeembed/analysis.hpp"
#include "treeembed/bounds.hpp"
#include "treeembed/embedder.hpp"
#include "treeembed/graph.hpp"
#include "treeembed/tree.hpp"

namespace treeembed {

struct GraphSource {
  std::string family = "pp";  // pp | gnp | cycle | path | complete | kst | file
  std::uint32_t q = 2;
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::size_t a = 0, b = 0;  // sides of the kst fixture
  std::string file;
};

Graph build_graph(const GraphSource& source);

struct TreeSource {
  std::string model = "random";  // random | prufer | adversarial | path | star | file
  std::size_t size = 1;
  std::size_t max_degree = 2;
  double eps = 0.0;  // adversarial
  std::size_t d = 0;  // adversarial
  std::string file;
  /// One tree for every trial instead of a fresh tree per trial.
  bool fixed = false;
  std::optional<std::uint64_t> seed;  // tree seed when fixed
};

/// Flat key=value experiment description. Recognized keys:
///
///   graph.family graph.q graph.n graph.p graph.seed graph.a graph.b graph.file
///   tree.model tree.size tree.max_degree tree.eps tree.d tree.file tree.fixed tree.seed
///   embed.variant embed.cap embed.cap_random embed.warmup embed.start
///   trials base_seed threads
///   theorem (c4 | girth | kst | kst_strong | pseudo)
///   theorem.d theorem.eps theorem.k theorem.s theorem.t theorem.delta
///   collect.occupancy collect.depletion collect.traces
///
/// Blank lines and lines starting with '#' are ignored.
struct ExperimentConfig {
  GraphSource graph;
  TreeSource tree;
  Variant variant = Variant::A1;
  std::size_t cap = 0;  // 0: the resolved d for A2/A3
  bool cap_random = false;
  std::size_t warmup = 0;
  std::optional<Vertex> start;
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
  unsigned threads = 0;  // 0: OpenMP default; not part of the result

  std::optional<std::string> theorem;
  std::optional<std::size_t> theorem_d;  // default: measured minimum degree
  double theorem_eps = 0.0;
  std::size_t theorem_k = 2;
  std::size_t theorem_s = 2;
  std::optional<std::size_t> theorem_t;  // pseudo default: n / 2
  double theorem_delta = 0.0;

  bool collect_occupancy = true;
  bool collect_depletion = true;
  bool collect_traces = false;

  /// Canonical key=value form (threads excluded).
  std::map<std::string, std::string> to_key_values() const;
};

/// Throws std::invalid_argument on unknown keys, malformed values, or a
/// theorem binding that already fails with the given theorem.d.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

struct TrialResult {
  std::uint64_t seed = 0;
  bool success = false;
  std::optional<TreeVertex> failed_at;
  std::size_t tree_size = 0;
  std::size_t tree_degree = 0;
  std::size_t occupancy_peak = 0;  // max_v X_v
  std::size_t min_available = 0;   // over all child placements (and the failing step)
  std::optional<std::size_t> special_available;  // adversarial trees: candidates at z
  double wall_ms = 0.0;
};

struct ExperimentReport {
  std::map<std::string, std::string> config;
  std::optional<ThresholdSet> thresholds;
  std::size_t host_vertices = 0;
  std::size_t host_edges = 0;
  std::size_t host_min_degree = 0;
  std::size_t resolved_d = 0;

  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t failures = 0;
  double success_rate = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  // exact 95% Clopper-Pearson

  std::map<std::size_t, std::size_t> occupancy_histogram;  // max_v X_v -> trials
  double occupancy_mean = 0.0;
  std::size_t occupancy_max = 0;
  std::optional<double> occupancy_ok_fraction;  // needs thresholds

  std::map<std::size_t, std::size_t> min_available_histogram;
  double min_available_mean = 0.0;
  std::optional<double> special_available_mean;

  std::vector<TrialResult> outcomes;

  double total_ms = 0.0;
  double mean_ms_per_trial = 0.0;
};

/// Runs config.trials independent embeddings. Trial i uses
/// seed_i = mix_seed(base_seed, i), embeds with mix_seed(seed_i, 0), and
/// draws its tree from mix_seed(seed_i, 1). Every successful embedding is
/// verified. Configuration problems are raised before any trial runs.
ExperimentReport run_experiment(const ExperimentConfig& config);

namespace serial {
ExperimentReport run_experiment(const ExperimentConfig& config);
}

struct ConfidenceInterval {
  double lo = 0.0, hi = 1.0;
};
/// Exact two-sided binomial interval at the given confidence.
ConfidenceInterval clopper_pearson(std::size_t successes, std::size_t trials, double confidence = 0.95);

/// Unoccupied neighbors of f(z) right before the special vertex z of the
/// adversarial tree would place its children.
struct DepletionReport {
  std::size_t d = 0;
  double eps = 0.0;
  double expected = 0.0;  // (1 - eps) d
  std::size_t trials = 0;
  std::size_t completed = 0;  // runs that reached z
  double mean_available = 0.0;
  std::size_t min_available = 0;
  std::size_t max_available = 0;
  std::map<std::size_t, std::size_t> histogram;
  std::vector<std::size_t> samples;  // per completed trial, in trial order

  double relative_error() const { return expected > 0 ? std::abs(mean_available - expected) / expected : 0.0; }
};

/// Embeds (A1) the adversarial tree for (d, eps) without z's children and
/// counts the free neighbors of f(z). g must be d-regular; eps in [0, 1/2).
DepletionReport depletion_probe(const Graph& g, std::size_t d, double eps, std::size_t trials,
                                std::uint64_t base_seed);

nlohmann::json to_json(const ExperimentReport& report, bool include_timing = true);
nlohmann::json to_json(const DepletionReport& report);
nlohmann::json to_json(const ThresholdSet& thresholds);
nlohmann::json to_json(const EmbedTrace& trace);
nlohmann::json to_json(const PropertyReport& report);

inline constexpr const char* kCsvHeader =
    "theorem_tag,d,k,eps,tree_size,tree_degree,trials,successes,rate,ci_lo,ci_hi,occupancy_ok_fraction";
std::string to_csv(const ExperimentReport& report);

enum class ResultFormat { json, csv };
void emit_results(const ExperimentReport& report, ResultFormat format, const std::string& path,
                  bool include_timing = true);

}  // namespace treeembed

#endif  // TREEEMBED_HARNESS_HPP

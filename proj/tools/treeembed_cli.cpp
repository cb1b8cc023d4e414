// treeembed: generate hosts and patterns, run embeddings, certify path-count
// properties, and drive Monte Carlo experiments.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "treeembed/analysis.hpp"
#include "treeembed/bounds.hpp"
#include "treeembed/embedder.hpp"
#include "treeembed/graph.hpp"
#include "treeembed/graph_gen.hpp"
#include "treeembed/harness.hpp"
#include "treeembed/tree.hpp"

using namespace treeembed;

namespace {

void write_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

// Accepts plain numbers and simple fractions such as 1/16.
const CLI::Validator kFraction(
    [](std::string& value) -> std::string {
      const auto slash = value.find('/');
      if (slash == std::string::npos) return {};
      try {
        std::size_t used_a = 0, used_b = 0;
        const std::string a = value.substr(0, slash), b = value.substr(slash + 1);
        const double num = std::stod(a, &used_a), den = std::stod(b, &used_b);
        if (used_a != a.size() || used_b != b.size() || den == 0.0) return "malformed fraction " + value;
        std::ostringstream out;
        out << std::setprecision(17) << num / den;
        value = out.str();
      } catch (const std::exception&) {
        return "malformed fraction " + value;
      }
      return {};
    },
    "NUMBER or A/B");

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized tree embedding toolkit"};
  app.require_subcommand(1);

  // gen-graph
  GraphSource gsrc;
  std::string graph_out;
  auto* gen_graph = app.add_subcommand("gen-graph", "Generate a host graph in edge-list format");
  gen_graph->add_option("--family", gsrc.family, "pp | gnp | cycle | path | complete | kst")
      ->required()
      ->check(CLI::IsMember({"pp", "gnp", "cycle", "path", "complete", "kst"}));
  gen_graph->add_option("--q", gsrc.q, "Prime order of the projective plane");
  gen_graph->add_option("--n", gsrc.n, "Vertex count");
  gen_graph->add_option("--p", gsrc.p, "Edge probability")->transform(kFraction);
  gen_graph->add_option("--seed", gsrc.seed, "Generator seed");
  gen_graph->add_option("--a", gsrc.a, "K_{a,b}: first side");
  gen_graph->add_option("--b", gsrc.b, "K_{a,b}: second side");
  gen_graph->add_option("--out", graph_out, "Output file")->required();

  // gen-tree
  std::string tree_model = "random", tree_out;
  std::size_t tree_n = 1, tree_max_deg = 2, tree_d = 0;
  double tree_eps = 0.0;
  std::uint64_t tree_seed = 0;
  auto* gen_tree = app.add_subcommand("gen-tree", "Generate a rooted tree pattern");
  gen_tree->add_option("--model", tree_model, "random | prufer | adversarial | path | star")
      ->check(CLI::IsMember({"random", "prufer", "adversarial", "path", "star"}));
  gen_tree->add_option("--n,--size", tree_n, "Vertex count (random, prufer, path, star)");
  gen_tree->add_option("--max-deg,--max-degree", tree_max_deg, "Maximum degree (random, prufer)");
  gen_tree->add_option("--d", tree_d, "Host degree (adversarial)");
  gen_tree->add_option("--eps", tree_eps, "Epsilon (adversarial)")->transform(kFraction);
  gen_tree->add_option("--seed", tree_seed, "Seed");
  gen_tree->add_option("--out", tree_out, "Output file")->required();

  // embed
  std::string embed_graph, embed_tree, embed_variant = "a1", trace_out;
  std::size_t embed_cap = 0, embed_warmup = 0;
  bool cap_random = false;
  std::uint64_t embed_seed = 0, cap_seed = 0;
  std::optional<Vertex> embed_root;
  auto* embed_cmd = app.add_subcommand("embed", "Run one randomized embedding");
  embed_cmd->add_option("--graph", embed_graph, "Host edge list")->required()->check(CLI::ExistingFile);
  embed_cmd->add_option("--tree", embed_tree, "Tree file")->required()->check(CLI::ExistingFile);
  embed_cmd->add_option("--variant", embed_variant, "a1 | a2 | a3 | a4")->required();
  embed_cmd->add_option("--cap", embed_cap, "Neighbor cap size (a2, a3)");
  embed_cmd->add_flag("--cap-random", cap_random, "Seeded random cap instead of the smallest-index neighbors");
  embed_cmd->add_option("--cap-seed", cap_seed, "Seed for --cap-random");
  embed_cmd->add_option("--warmup", embed_warmup, "Warmup moves (a3, a4)");
  embed_cmd->add_option("--seed", embed_seed, "Seed")->required();
  embed_cmd->add_option("--root", embed_root, "Pin the root image (a1, a2) or walk start (a3, a4)");
  embed_cmd->add_option("--trace", trace_out, "Write the run trace as JSON");

  // check-property
  std::string prop_graph, prop_out;
  std::size_t prop_d = 1, prop_k = 1, prop_t = 1;
  PropertyOptions prop_options;
  std::optional<std::size_t> prop_sample;
  std::optional<double> cond2_limit;
  auto* check_cmd = app.add_subcommand("check-property", "Certify the path-count property P(d,k,t)");
  check_cmd->add_option("--graph", prop_graph, "Host edge list")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--d", prop_d, "Minimum degree")->required();
  check_cmd->add_option("--k", prop_k, "Path length k")->required();
  check_cmd->add_option("--t", prop_t, "Parameter t")->required();
  check_cmd->add_option("--sample", prop_sample, "Pairs to sample; forces sampled mode");
  check_cmd->add_option("--seed", prop_options.seed, "Sampling seed");
  check_cmd->add_option("--max-path-length", prop_options.max_path_length, "Path length cap (default 6)");
  check_cmd->add_option("--cond2-limit", cond2_limit, "Replace d^{1/4} in condition 2");
  check_cmd->add_option("--out", prop_out, "Output JSON (default stdout)");

  // thresholds
  std::string theorem;
  std::size_t th_d = 0, th_k = 2, th_s = 2, th_t = 2;
  double th_eps = 0.0, th_delta = 0.0;
  bool th_strong = false;
  auto* thresholds_cmd = app.add_subcommand("thresholds", "Tree size/degree limits of an embedding theorem");
  thresholds_cmd->add_option("--theorem", theorem, "c4 | girth | kst | pseudo")
      ->required()
      ->check(CLI::IsMember({"c4", "girth", "kst", "pseudo"}));
  thresholds_cmd->add_option("--d", th_d, "Minimum degree")->required();
  thresholds_cmd->add_option("--eps", th_eps, "Epsilon")->transform(kFraction);
  thresholds_cmd->add_option("--k", th_k, "k (girth, pseudo)");
  thresholds_cmd->add_option("--s", th_s, "s (kst)");
  thresholds_cmd->add_option("--t", th_t, "t (kst, pseudo)");
  thresholds_cmd->add_option("--delta", th_delta, "Delta (pseudo)")->transform(kFraction);
  thresholds_cmd->add_flag("--strong", th_strong, "Use the d/256 degree bound (kst)");

  // experiment
  std::string config_path, results_out, csv_out;
  unsigned threads = 0;
  bool no_timing = false;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a Monte Carlo experiment from a key=value config");
  experiment_cmd->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  experiment_cmd->add_option("--out", results_out, "JSON results")->required();
  experiment_cmd->add_option("--csv", csv_out, "CSV summary");
  experiment_cmd->add_option("--threads", threads, "OpenMP threads (0: default)");
  experiment_cmd->add_flag("--no-timing", no_timing, "Omit wall-clock fields");

  // depletion
  std::string dep_graph;
  std::uint32_t dep_q = 0;
  double dep_eps = 0.2;
  std::size_t dep_trials = 100;
  std::uint64_t dep_seed = 0;
  auto* depletion_cmd = app.add_subcommand("depletion", "Free candidates at the adversarial tree's special vertex");
  depletion_cmd->add_option("--q", dep_q, "Projective plane order");
  depletion_cmd->add_option("--graph", dep_graph, "Regular host edge list")->check(CLI::ExistingFile);
  depletion_cmd->add_option("--eps", dep_eps, "Epsilon")->transform(kFraction);
  depletion_cmd->add_option("--trials", dep_trials, "Trials");
  depletion_cmd->add_option("--seed", dep_seed, "Base seed");

  // select-k
  std::size_t sk_n = 0;
  double sk_p = 0.0;
  auto* select_cmd = app.add_subcommand("select-k", "Path length k for G(n,p)");
  select_cmd->add_option("--n", sk_n, "Order")->required();
  select_cmd->add_option("--p", sk_p, "Edge probability")->required()->transform(kFraction);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_graph) {
      const Graph g = build_graph(gsrc);
      save_edge_list(graph_out, g);
      std::cerr << "wrote " << g.vertex_count() << " vertices, " << g.edge_count() << " edges to " << graph_out << '\n';
    } else if (*gen_tree) {
      RootedTree t;
      if (tree_model == "random") t = random_tree(tree_n, tree_max_deg, tree_seed);
      else if (tree_model == "prufer") t = random_prufer_tree(tree_n, tree_max_deg, tree_seed);
      else if (tree_model == "adversarial") t = adversarial_tree(tree_d, tree_eps).tree;
      else if (tree_model == "path") t = path_tree(tree_n);
      else t = star_tree(tree_n > 0 ? tree_n - 1 : 0);
      save_tree(tree_out, t);
      std::cerr << "wrote tree with " << t.vertex_count() << " vertices, max degree " << t.max_degree() << '\n';
    } else if (*embed_cmd) {
      const Graph g = load_edge_list(embed_graph);
      const RootedTree t = load_tree(embed_tree);
      EmbedParams params;
      params.variant = parse_variant(embed_variant);
      std::optional<NeighborCap> cap;
      if (uses_cap(params.variant)) {
        const std::size_t size = embed_cap != 0 ? embed_cap : min_degree(g);
        cap = cap_random ? make_random_neighbor_cap(g, size, cap_seed) : make_neighbor_cap(g, size);
        params.cap = &*cap;
      }
      params.warmup_k = embed_warmup;
      params.seed = embed_seed;
      params.record_trace = !trace_out.empty();
      params.start_vertex = embed_root;
      const EmbedOutcome out = embed(g, t, params);
      nlohmann::json summary = {{"success", out.success()}, {"failed_at", nullptr}};
      if (out.trace.failed_at) summary["failed_at"] = *out.trace.failed_at;
      if (out.success()) {
        summary["verified"] = verify_embedding(g, t, out.embedding);
        summary["assignment"] = out.embedding.assignment;
      }
      if (!trace_out.empty()) write_json(to_json(out.trace), trace_out);
      std::cout << summary.dump() << '\n';
      return out.success() ? 0 : 2;
    } else if (*check_cmd) {
      const Graph g = load_edge_list(prop_graph);
      if (prop_sample) {
        prop_options.sample = *prop_sample;
        prop_options.exhaustive_pair_budget = 0;
      }
      prop_options.cond2_limit = cond2_limit;
      if (prop_options.max_path_length > kDefaultPathLengthCap)
        std::cerr << "warning: path length cap raised to " << prop_options.max_path_length
                  << "; cost grows as d^k\n";
      write_json(to_json(check_property(g, prop_d, prop_k, prop_t, prop_options)), prop_out);
    } else if (*thresholds_cmd) {
      ThresholdSet ts;
      if (theorem == "c4") ts = thresholds_c4(th_d, th_eps);
      else if (theorem == "girth") ts = thresholds_girth(th_d, th_k, th_eps);
      else if (theorem == "kst") ts = thresholds_kst(th_d, th_s, th_t, th_strong);
      else ts = thresholds_pseudo(th_d, th_t, th_k, th_eps, th_delta);
      write_json(to_json(ts), "-");
    } else if (*experiment_cmd) {
      ExperimentConfig config = load_config(config_path);
      if (threads != 0) config.threads = threads;
      const ExperimentReport report = run_experiment(config);
      emit_results(report, ResultFormat::json, results_out, !no_timing);
      if (!csv_out.empty()) emit_results(report, ResultFormat::csv, csv_out);
      std::cerr << report.successes << "/" << report.trials << " successful, rate " << report.success_rate << " [95% CI "
                << report.ci_lo << ", " << report.ci_hi << "]\n";
    } else if (*depletion_cmd) {
      Graph g;
      if (!dep_graph.empty()) g = load_edge_list(dep_graph);
      else if (dep_q != 0) g = projective_plane_graph(dep_q);
      else throw std::invalid_argument("depletion: give --q or --graph");
      write_json(to_json(depletion_probe(g, min_degree(g), dep_eps, dep_trials, dep_seed)), "-");
    } else if (*select_cmd) {
      std::cout << select_k(sk_n, sk_p) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

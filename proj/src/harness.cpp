#include "treeembed/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "treeembed/graph_gen.hpp"
#include "treeembed/random.hpp"

namespace treeembed {

// ---------------------------------------------------------------- config ---

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <class Int>
Int parse_int(const std::string& key, const std::string& value) {
  Int out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw std::invalid_argument("config: " + key + " expects an integer, got '" + value + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    // Allow simple fractions such as 1/16.
    const auto slash = value.find('/');
    if (slash != std::string::npos)
      return parse_double(key, value.substr(0, slash)) / parse_double(key, value.substr(slash + 1));
    throw std::invalid_argument("config: " + key + " expects a number, got '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("config: " + key + " expects a boolean, got '" + value + "'");
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void apply_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
  using Setter = std::function<void(ExperimentConfig&, const std::string&)>;
  static const std::map<std::string, Setter> setters = {
      {"graph.family", [](auto& c, auto& v) { c.graph.family = v; }},
      {"graph.q", [](auto& c, auto& v) { c.graph.q = parse_int<std::uint32_t>("graph.q", v); }},
      {"graph.n", [](auto& c, auto& v) { c.graph.n = parse_int<std::size_t>("graph.n", v); }},
      {"graph.p", [](auto& c, auto& v) { c.graph.p = parse_double("graph.p", v); }},
      {"graph.seed", [](auto& c, auto& v) { c.graph.seed = parse_int<std::uint64_t>("graph.seed", v); }},
      {"graph.a", [](auto& c, auto& v) { c.graph.a = parse_int<std::size_t>("graph.a", v); }},
      {"graph.b", [](auto& c, auto& v) { c.graph.b = parse_int<std::size_t>("graph.b", v); }},
      {"graph.file", [](auto& c, auto& v) { c.graph.file = v; }},
      {"tree.model", [](auto& c, auto& v) { c.tree.model = v; }},
      {"tree.size", [](auto& c, auto& v) { c.tree.size = parse_int<std::size_t>("tree.size", v); }},
      {"tree.max_degree", [](auto& c, auto& v) { c.tree.max_degree = parse_int<std::size_t>("tree.max_degree", v); }},
      {"tree.eps", [](auto& c, auto& v) { c.tree.eps = parse_double("tree.eps", v); }},
      {"tree.d", [](auto& c, auto& v) { c.tree.d = parse_int<std::size_t>("tree.d", v); }},
      {"tree.file", [](auto& c, auto& v) { c.tree.file = v; }},
      {"tree.fixed", [](auto& c, auto& v) { c.tree.fixed = parse_bool("tree.fixed", v); }},
      {"tree.seed", [](auto& c, auto& v) { c.tree.seed = parse_int<std::uint64_t>("tree.seed", v); }},
      {"embed.variant", [](auto& c, auto& v) { c.variant = parse_variant(v); }},
      {"embed.cap", [](auto& c, auto& v) { c.cap = parse_int<std::size_t>("embed.cap", v); }},
      {"embed.cap_random", [](auto& c, auto& v) { c.cap_random = parse_bool("embed.cap_random", v); }},
      {"embed.warmup", [](auto& c, auto& v) { c.warmup = parse_int<std::size_t>("embed.warmup", v); }},
      {"embed.start", [](auto& c, auto& v) { c.start = parse_int<Vertex>("embed.start", v); }},
      {"trials", [](auto& c, auto& v) { c.trials = parse_int<std::size_t>("trials", v); }},
      {"base_seed", [](auto& c, auto& v) { c.base_seed = parse_int<std::uint64_t>("base_seed", v); }},
      {"threads", [](auto& c, auto& v) { c.threads = parse_int<unsigned>("threads", v); }},
      {"theorem", [](auto& c, auto& v) { c.theorem = v; }},
      {"theorem.d", [](auto& c, auto& v) { c.theorem_d = parse_int<std::size_t>("theorem.d", v); }},
      {"theorem.eps", [](auto& c, auto& v) { c.theorem_eps = parse_double("theorem.eps", v); }},
      {"theorem.k", [](auto& c, auto& v) { c.theorem_k = parse_int<std::size_t>("theorem.k", v); }},
      {"theorem.s", [](auto& c, auto& v) { c.theorem_s = parse_int<std::size_t>("theorem.s", v); }},
      {"theorem.t", [](auto& c, auto& v) { c.theorem_t = parse_int<std::size_t>("theorem.t", v); }},
      {"theorem.delta", [](auto& c, auto& v) { c.theorem_delta = parse_double("theorem.delta", v); }},
      {"collect.occupancy", [](auto& c, auto& v) { c.collect_occupancy = parse_bool("collect.occupancy", v); }},
      {"collect.depletion", [](auto& c, auto& v) { c.collect_depletion = parse_bool("collect.depletion", v); }},
      {"collect.traces", [](auto& c, auto& v) { c.collect_traces = parse_bool("collect.traces", v); }},
  };
  auto it = setters.find(key);
  if (it == setters.end()) throw std::invalid_argument("config: unknown key '" + key + "'");
  it->second(c, value);
}

struct TreeDraw {
  RootedTree tree;
  std::optional<TreeVertex> special;
};

TreeDraw draw_tree(const TreeSource& src, std::uint64_t seed) {
  if (src.model == "random") return {random_tree(src.size, src.max_degree, seed), std::nullopt};
  if (src.model == "prufer") return {random_prufer_tree(src.size, src.max_degree, seed), std::nullopt};
  if (src.model == "path") return {path_tree(src.size), std::nullopt};
  if (src.model == "star") return {star_tree(src.size > 0 ? src.size - 1 : 0), std::nullopt};
  if (src.model == "file") return {load_tree(src.file), std::nullopt};
  if (src.model == "adversarial") {
    auto adv = adversarial_tree(src.d, src.eps);
    return {std::move(adv.tree), adv.special};
  }
  throw std::invalid_argument("config: unknown tree.model '" + src.model + "'");
}

bool tree_is_random(const TreeSource& src) { return src.model == "random" || src.model == "prufer"; }

// Size and maximum degree every tree drawn from `src` stays within.
std::pair<std::size_t, std::size_t> tree_limits(const TreeSource& src) {
  if (tree_is_random(src)) return {src.size, std::min(src.max_degree, src.size > 0 ? src.size - 1 : 0)};
  auto draw = draw_tree(src, 0);
  return {draw.tree.vertex_count(), draw.tree.max_degree()};
}

ThresholdSet resolve_thresholds(const ExperimentConfig& c, std::size_t d, std::optional<std::size_t> host_n) {
  const std::string& tag = *c.theorem;
  if (tag == "c4") return thresholds_c4(d, c.theorem_eps);
  if (tag == "girth") return thresholds_girth(d, c.theorem_k, c.theorem_eps);
  if (tag == "kst" || tag == "kst_strong") {
    if (!c.theorem_t) throw std::invalid_argument("config: theorem " + tag + " needs theorem.t");
    return thresholds_kst(d, c.theorem_s, *c.theorem_t, tag == "kst_strong");
  }
  if (tag == "pseudo") {
    std::size_t t = 0;
    if (c.theorem_t) t = *c.theorem_t;
    else if (host_n) t = *host_n / 2;
    else throw std::logic_error("pseudo thresholds need theorem.t or the host order");
    return thresholds_pseudo(d, t, c.theorem_k, c.theorem_eps, c.theorem_delta);
  }
  throw std::invalid_argument("config: unknown theorem '" + tag + "'");
}

void check_tree_against(const ThresholdSet& ts, const TreeSource& src) {
  auto [size, degree] = tree_limits(src);
  if (size > ts.max_tree_size)
    throw std::invalid_argument("config: tree size " + std::to_string(size) + " exceeds " + ts.theorem_tag +
                                " limit " + std::to_string(ts.max_tree_size));
  if (degree > ts.max_tree_degree)
    throw std::invalid_argument("config: tree degree " + std::to_string(degree) + " exceeds " + ts.theorem_tag +
                                " limit " + std::to_string(ts.max_tree_degree));
}

void validate_shape(const ExperimentConfig& c) {
  if (c.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (!uses_cap(c.variant) && (c.cap != 0 || c.cap_random))
    throw std::invalid_argument("config: embed.cap is only meaningful for a2/a3");
  if (!uses_warmup(c.variant) && c.warmup != 0)
    throw std::invalid_argument("config: embed.warmup is only meaningful for a3/a4");
  if (c.theorem) {
    static const char* kTags[] = {"c4", "girth", "kst", "kst_strong", "pseudo"};
    if (std::find(std::begin(kTags), std::end(kTags), *c.theorem) == std::end(kTags))
      throw std::invalid_argument("config: unknown theorem '" + *c.theorem + "'");
    const bool t_known = *c.theorem != "pseudo" || c.theorem_t.has_value();
    if (c.theorem_d && t_known) check_tree_against(resolve_thresholds(c, *c.theorem_d, std::nullopt), c.tree);
  }
}

}  // namespace

Graph build_graph(const GraphSource& s) {
  if (s.family == "pp") return projective_plane_graph(s.q);
  if (s.family == "gnp") return gnp_graph({s.n, s.p, s.seed});
  if (s.family == "cycle") return cycle_graph(s.n);
  if (s.family == "path") return path_graph(s.n);
  if (s.family == "complete") return complete_graph(s.n);
  if (s.family == "kst") return complete_bipartite_graph(s.a, s.b);
  if (s.family == "file") return load_edge_list(s.file);
  throw std::invalid_argument("unknown graph family '" + s.family + "'");
}

std::map<std::string, std::string> ExperimentConfig::to_key_values() const {
  std::map<std::string, std::string> kv;
  kv["graph.family"] = graph.family;
  if (graph.family == "pp") kv["graph.q"] = std::to_string(graph.q);
  if (graph.family == "gnp") {
    kv["graph.p"] = format_double(graph.p);
    kv["graph.seed"] = std::to_string(graph.seed);
  }
  if (graph.family == "gnp" || graph.family == "cycle" || graph.family == "path" || graph.family == "complete")
    kv["graph.n"] = std::to_string(graph.n);
  if (graph.family == "kst") {
    kv["graph.a"] = std::to_string(graph.a);
    kv["graph.b"] = std::to_string(graph.b);
  }
  if (graph.family == "file") kv["graph.file"] = graph.file;

  kv["tree.model"] = tree.model;
  if (tree.model == "adversarial") {
    kv["tree.d"] = std::to_string(tree.d);
    kv["tree.eps"] = format_double(tree.eps);
  } else if (tree.model == "file") {
    kv["tree.file"] = tree.file;
  } else {
    kv["tree.size"] = std::to_string(tree.size);
    if (tree_is_random(tree)) kv["tree.max_degree"] = std::to_string(tree.max_degree);
  }
  if (tree_is_random(tree)) kv["tree.fixed"] = tree.fixed ? "true" : "false";
  if (tree.seed) kv["tree.seed"] = std::to_string(*tree.seed);

  kv["embed.variant"] = std::string(to_string(variant));
  if (uses_cap(variant)) {
    kv["embed.cap"] = std::to_string(cap);
    kv["embed.cap_random"] = cap_random ? "true" : "false";
  }
  if (uses_warmup(variant)) kv["embed.warmup"] = std::to_string(warmup);
  if (start) kv["embed.start"] = std::to_string(*start);
  kv["trials"] = std::to_string(trials);
  kv["base_seed"] = std::to_string(base_seed);
  if (theorem) {
    kv["theorem"] = *theorem;
    if (theorem_d) kv["theorem.d"] = std::to_string(*theorem_d);
    kv["theorem.eps"] = format_double(theorem_eps);
    kv["theorem.k"] = std::to_string(theorem_k);
    kv["theorem.s"] = std::to_string(theorem_s);
    if (theorem_t) kv["theorem.t"] = std::to_string(*theorem_t);
    kv["theorem.delta"] = format_double(theorem_delta);
  }
  kv["collect.occupancy"] = collect_occupancy ? "true" : "false";
  kv["collect.depletion"] = collect_depletion ? "true" : "false";
  kv["collect.traces"] = collect_traces ? "true" : "false";
  return kv;
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    apply_key(c, trim(std::string_view(text).substr(0, eq)), trim(std::string_view(text).substr(eq + 1)));
  }
  validate_shape(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_config(in);
}

// ------------------------------------------------------------ experiment ---

ConfidenceInterval clopper_pearson(std::size_t successes, std::size_t trials, double confidence) {
  if (trials == 0) throw std::invalid_argument("clopper_pearson requires trials >= 1");
  const double alpha = 1.0 - confidence;
  const auto x = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  ConfidenceInterval ci;
  ci.lo = successes == 0 ? 0.0 : boost::math::ibeta_inv(x, n - x + 1.0, alpha / 2.0);
  ci.hi = successes == trials ? 1.0 : boost::math::ibeta_inv(x + 1.0, n - x, 1.0 - alpha / 2.0);
  return ci;
}

namespace {

struct Prepared {
  Graph graph;
  std::optional<NeighborCap> cap;
  std::optional<TreeDraw> fixed_tree;
  std::optional<ThresholdSet> thresholds;
  std::size_t d = 0;
};

Prepared prepare(const ExperimentConfig& c) {
  validate_shape(c);
  Prepared p;
  p.graph = build_graph(c.graph);
  const std::size_t measured = min_degree(p.graph);
  p.d = c.theorem_d.value_or(measured);
  if (c.theorem) {
    p.thresholds = resolve_thresholds(c, p.d, p.graph.vertex_count());
    check_tree_against(*p.thresholds, c.tree);
  }
  if (uses_cap(c.variant)) {
    const std::size_t cap_size = c.cap != 0 ? c.cap : p.d;
    p.cap = c.cap_random ? make_random_neighbor_cap(p.graph, cap_size, mix_seed(c.base_seed, 0xCA9ULL))
                         : make_neighbor_cap(p.graph, cap_size);
  }
  if (!tree_is_random(c.tree) || c.tree.fixed) {
    const std::uint64_t seed = c.tree.seed.value_or(mix_seed(c.base_seed, 0x7EEULL));
    p.fixed_tree = draw_tree(c.tree, seed);
  }
  const std::size_t largest = p.fixed_tree ? p.fixed_tree->tree.vertex_count() : c.tree.size;
  if (largest > p.graph.vertex_count())
    throw std::invalid_argument("config: tree has more vertices than the host graph");
  if (c.start && *c.start >= p.graph.vertex_count()) throw std::invalid_argument("config: embed.start out of range");
  return p;
}

struct TrialRecord {
  TrialResult result;
  std::optional<EmbedTrace> trace;
};

TrialRecord run_trial(const ExperimentConfig& c, const Prepared& p, std::size_t index) {
  const auto started = std::chrono::steady_clock::now();
  TrialRecord rec;
  TrialResult& r = rec.result;
  r.seed = mix_seed(c.base_seed, index);

  std::optional<TreeDraw> fresh;
  if (!p.fixed_tree) fresh = draw_tree(c.tree, mix_seed(r.seed, 1));
  const TreeDraw& draw = p.fixed_tree ? *p.fixed_tree : *fresh;
  const RootedTree& tree = draw.tree;

  EmbedParams params;
  params.variant = c.variant;
  params.cap = p.cap ? &*p.cap : nullptr;
  params.warmup_k = c.warmup;
  params.seed = mix_seed(r.seed, 0);
  params.record_trace = c.collect_occupancy || c.collect_depletion || c.collect_traces;
  params.start_vertex = c.start;
  EmbedOutcome out = embed(p.graph, tree, params);

  r.success = out.success();
  r.failed_at = out.trace.failed_at;
  r.tree_size = tree.vertex_count();
  r.tree_degree = tree.max_degree();
  if (r.success && !verify_embedding(p.graph, tree, out.embedding))
    throw std::logic_error("embedder reported success on an invalid embedding");

  r.occupancy_peak = out.trace.occupancy_peak;
  const auto& avail = out.trace.available_choices;
  std::size_t min_avail = avail.size() > 1 ? *std::min_element(avail.begin() + 1, avail.end()) : 0;
  if (r.failed_at) min_avail = avail.size() > 1 ? std::min(min_avail, out.trace.failed_available) : out.trace.failed_available;
  r.min_available = min_avail;

  if (draw.special && params.record_trace) {
    const TreeVertex z = *draw.special;
    if (r.failed_at == z) {
      r.special_available = out.trace.failed_available;
    } else if (!tree.children(z).empty()) {
      const TreeVertex first = tree.children(z).front();
      const auto& order = out.trace.placement_order;
      const auto it = std::find(order.begin(), order.end(), first);
      if (it != order.end()) r.special_available = avail[static_cast<std::size_t>(it - order.begin())];
    }
  }
  if (c.collect_traces) rec.trace = std::move(out.trace);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return rec;
}

ExperimentReport aggregate(const ExperimentConfig& c, const Prepared& p, std::vector<TrialRecord> records,
                           double total_ms) {
  ExperimentReport rep;
  rep.config = c.to_key_values();
  rep.thresholds = p.thresholds;
  rep.host_vertices = p.graph.vertex_count();
  rep.host_edges = p.graph.edge_count();
  rep.host_min_degree = min_degree(p.graph);
  rep.resolved_d = p.d;
  rep.trials = records.size();

  std::size_t occupancy_ok = 0, special_count = 0;
  double occupancy_sum = 0.0, min_avail_sum = 0.0, special_sum = 0.0;
  for (auto& rec : records) {
    const TrialResult& r = rec.result;
    rep.successes += r.success ? 1 : 0;
    if (c.collect_occupancy) {
      ++rep.occupancy_histogram[r.occupancy_peak];
      occupancy_sum += static_cast<double>(r.occupancy_peak);
      rep.occupancy_max = std::max(rep.occupancy_max, r.occupancy_peak);
      if (p.thresholds && static_cast<double>(r.occupancy_peak) <= p.thresholds->occupancy_limit) ++occupancy_ok;
    }
    if (c.collect_depletion) {
      ++rep.min_available_histogram[r.min_available];
      min_avail_sum += static_cast<double>(r.min_available);
      if (r.special_available) {
        special_sum += static_cast<double>(*r.special_available);
        ++special_count;
      }
    }
    rep.outcomes.push_back(r);
  }
  const auto n = static_cast<double>(rep.trials);
  rep.failures = rep.trials - rep.successes;
  rep.success_rate = static_cast<double>(rep.successes) / n;
  const auto ci = clopper_pearson(rep.successes, rep.trials);
  rep.ci_lo = ci.lo;
  rep.ci_hi = ci.hi;
  if (c.collect_occupancy) {
    rep.occupancy_mean = occupancy_sum / n;
    if (p.thresholds) rep.occupancy_ok_fraction = static_cast<double>(occupancy_ok) / n;
  }
  if (c.collect_depletion) {
    rep.min_available_mean = min_avail_sum / n;
    if (special_count > 0) rep.special_available_mean = special_sum / static_cast<double>(special_count);
  }
  rep.total_ms = total_ms;
  rep.mean_ms_per_trial = total_ms / n;
  return rep;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

// Runs body(i) for i in [0, count) on OpenMP threads, rethrowing the first
// exception after the loop.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  std::exception_ptr error;
#ifdef _OPENMP
  const int team = threads > 0 ? static_cast<int>(threads) : omp_get_max_threads();
#else
  (void)threads;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(team)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(treeembed_harness_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

ExperimentReport serial::run_experiment(const ExperimentConfig& config) {
  const Prepared p = prepare(config);
  const auto started = std::chrono::steady_clock::now();
  std::vector<TrialRecord> records;
  records.reserve(config.trials);
  for (std::size_t i = 0; i < config.trials; ++i) records.push_back(run_trial(config, p, i));
  return aggregate(config, p, std::move(records), elapsed_ms(started));
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const Prepared p = prepare(config);
  const auto started = std::chrono::steady_clock::now();
  std::vector<TrialRecord> records(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t i) { records[i] = run_trial(config, p, i); });
  return aggregate(config, p, std::move(records), elapsed_ms(started));
}

DepletionReport depletion_probe(const Graph& g, std::size_t d, double eps, std::size_t trials,
                                std::uint64_t base_seed) {
  if (trials == 0) throw std::invalid_argument("depletion_probe requires trials >= 1");
  if (!(eps >= 0.0 && eps < 0.5)) throw std::invalid_argument("depletion_probe requires 0 <= eps < 1/2");
  if (g.vertex_count() == 0 || min_degree(g) != d || max_degree(g) != d)
    throw std::invalid_argument("depletion_probe requires a d-regular host");

  const AdversarialTree adv = adversarial_tree_relaxed(d, eps);
  // z's children are the last vertices in BFS order; dropping them leaves
  // exactly the state in which z's children would be placed.
  const RootedTree probe = adv.tree.bfs_prefix(adv.tree.vertex_count() - adv.tree.child_count(adv.special));
  const TreeVertex z = adv.special;  // labels follow BFS order, so z keeps its label
  if (probe.vertex_count() > g.vertex_count()) throw std::invalid_argument("adversarial tree larger than host");

  std::vector<std::optional<std::size_t>> available(trials);
  parallel_for(trials, 0, [&](std::size_t i) {
    EmbedParams params;
    params.variant = Variant::A1;
    params.seed = mix_seed(base_seed, i);
    const EmbedOutcome out = embed(g, probe, params);
    if (!out.success()) return;
    if (!verify_embedding(g, probe, out.embedding))
      throw std::logic_error("embedder reported success on an invalid embedding");
    std::vector<char> used(g.vertex_count(), 0);
    for (Vertex v : out.embedding.assignment) used[v] = 1;
    std::size_t free = 0;
    for (Vertex w : g.neighbors(out.embedding.assignment[z])) free += used[w] ? 0 : 1;
    available[i] = free;
  });

  DepletionReport rep;
  rep.d = d;
  rep.eps = eps;
  rep.expected = (1.0 - eps) * static_cast<double>(d);
  rep.trials = trials;
  double sum = 0.0;
  rep.min_available = d;
  for (const auto& a : available) {
    if (!a) continue;
    ++rep.completed;
    rep.samples.push_back(*a);
    ++rep.histogram[*a];
    sum += static_cast<double>(*a);
    rep.min_available = std::min(rep.min_available, *a);
    rep.max_available = std::max(rep.max_available, *a);
  }
  if (rep.completed > 0) rep.mean_available = sum / static_cast<double>(rep.completed);
  else rep.min_available = 0;
  return rep;
}

// ---------------------------------------------------------------- output ---

namespace {

template <class Map>
nlohmann::json histogram_json(const Map& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string csv_double(double x) { return format_double(x); }

}  // namespace

nlohmann::json to_json(const ThresholdSet& ts) {
  return {{"theorem_tag", ts.theorem_tag},
          {"max_tree_size", ts.max_tree_size},
          {"max_tree_degree", ts.max_tree_degree},
          {"occupancy_limit", ts.occupancy_limit},
          {"inputs", ts.inputs}};
}

nlohmann::json to_json(const EmbedTrace& tr) {
  nlohmann::json occ = nlohmann::json::array();
  for (auto [v, m] : tr.occupancy_max) occ.push_back({v, m});
  return {{"success", tr.success},
          {"failed_at", optional_json(tr.failed_at)},
          {"failed_available", tr.failed_available},
          {"placement_order", tr.placement_order},
          {"available_choices", tr.available_choices},
          {"occupancy_max", occ},
          {"occupancy_peak", tr.occupancy_peak},
          {"walk_prefix", tr.walk_prefix}};
}

nlohmann::json to_json(const PropertyReport& r) {
  const auto pair = [](VertexPair p) { return nlohmann::json::array({p.u, p.v}); };
  return {{"d", r.d},
          {"k", r.k},
          {"t", r.t},
          {"measured_min_degree", r.measured_min_degree},
          {"min_degree_ok", r.min_degree_ok},
          {"max_Pk", r.max_pk},
          {"max_Pk_pair", pair(r.max_pk_pair)},
          {"max_Pk1", r.max_pk1},
          {"max_Pk1_pair", pair(r.max_pk1_pair)},
          {"cond2_ok", r.cond2_ok},
          {"cond3_ok", r.cond3_ok},
          {"cond2_limit", optional_json(r.cond2_limit)},
          {"exhaustive", r.exhaustive},
          {"sampled_pairs", r.sampled_pairs},
          {"verdict", r.verdict()}};
}

nlohmann::json to_json(const ExperimentReport& rep, bool include_timing) {
  nlohmann::json outcomes = nlohmann::json::array();
  for (const auto& r : rep.outcomes) {
    nlohmann::json o = {{"seed", r.seed},
                        {"success", r.success},
                        {"failed_at", optional_json(r.failed_at)},
                        {"tree_size", r.tree_size},
                        {"tree_degree", r.tree_degree},
                        {"occupancy_peak", r.occupancy_peak},
                        {"min_available", r.min_available},
                        {"special_available", optional_json(r.special_available)}};
    if (include_timing) o["wall_ms"] = r.wall_ms;
    outcomes.push_back(std::move(o));
  }
  nlohmann::json j = {
      {"config", rep.config},
      {"thresholds", rep.thresholds ? to_json(*rep.thresholds) : nlohmann::json(nullptr)},
      {"host", {{"vertices", rep.host_vertices}, {"edges", rep.host_edges}, {"min_degree", rep.host_min_degree}}},
      {"resolved_d", rep.resolved_d},
      {"trials", rep.trials},
      {"successes", rep.successes},
      {"failures", rep.failures},
      {"success_rate", rep.success_rate},
      {"ci95", {rep.ci_lo, rep.ci_hi}},
      {"occupancy",
       {{"histogram", histogram_json(rep.occupancy_histogram)},
        {"mean", rep.occupancy_mean},
        {"max", rep.occupancy_max},
        {"ok_fraction", optional_json(rep.occupancy_ok_fraction)}}},
      {"depletion",
       {{"min_available_histogram", histogram_json(rep.min_available_histogram)},
        {"min_available_mean", rep.min_available_mean},
        {"special_available_mean", optional_json(rep.special_available_mean)}}},
      {"outcomes", outcomes},
  };
  if (include_timing) j["timing"] = {{"total_ms", rep.total_ms}, {"mean_ms_per_trial", rep.mean_ms_per_trial}};
  return j;
}

nlohmann::json to_json(const DepletionReport& rep) {
  return {{"d", rep.d},
          {"eps", rep.eps},
          {"expected", rep.expected},
          {"trials", rep.trials},
          {"completed", rep.completed},
          {"mean_available", rep.mean_available},
          {"min_available", rep.min_available},
          {"max_available", rep.max_available},
          {"relative_error", rep.relative_error()},
          {"histogram", histogram_json(rep.histogram)}};
}

std::string to_csv(const ExperimentReport& rep) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  const auto get = [&](const char* key) {
    auto it = rep.config.find(key);
    return it == rep.config.end() ? std::string() : it->second;
  };
  std::size_t tree_size = 0, tree_degree = 0;
  for (const auto& r : rep.outcomes) {
    tree_size = std::max(tree_size, r.tree_size);
    tree_degree = std::max(tree_degree, r.tree_degree);
  }
  out << get("theorem") << ',' << rep.resolved_d << ',' << get("theorem.k") << ',' << get("theorem.eps") << ','
      << tree_size << ',' << tree_degree << ',' << rep.trials << ',' << rep.successes << ','
      << csv_double(rep.success_rate) << ',' << csv_double(rep.ci_lo) << ',' << csv_double(rep.ci_hi) << ','
      << (rep.occupancy_ok_fraction ? csv_double(*rep.occupancy_ok_fraction) : std::string()) << '\n';
  return out.str();
}

void emit_results(const ExperimentReport& report, ResultFormat format, const std::string& path, bool include_timing) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (format == ResultFormat::json)
    out << to_json(report, include_timing).dump(2) << '\n';
  else
    out << to_csv(report);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace treeembed

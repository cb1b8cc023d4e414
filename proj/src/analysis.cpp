#include "treeembed/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "treeembed/random.hpp"

namespace treeembed {

namespace {

constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

// BFS from `root`, returning min(bound, shortest cycle closed by a non-tree
// edge seen from this root). Scratch arrays are restored before returning.
class GirthScanner {
 public:
  explicit GirthScanner(const Graph& g) : g_(g), dist_(g.vertex_count(), kInfinite), parent_(g.vertex_count()) {}

  std::size_t scan(Vertex root, std::size_t bound) {
    queue_.clear();
    queue_.push_back(root);
    dist_[root] = 0;
    parent_[root] = root;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Vertex x = queue_[head];
      if (2 * dist_[x] >= bound) break;  // no shorter cycle can close from here on
      for (Vertex y : g_.neighbors(x)) {
        if (dist_[y] == kInfinite) {
          dist_[y] = dist_[x] + 1;
          parent_[y] = x;
          queue_.push_back(y);
        } else if (y != parent_[x]) {
          bound = std::min(bound, dist_[x] + dist_[y] + 1);
        }
      }
    }
    for (Vertex v : queue_) dist_[v] = kInfinite;
    return bound;
  }

 private:
  const Graph& g_;
  std::vector<std::size_t> dist_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> queue_;
};

std::optional<std::size_t> as_girth(std::size_t best) {
  if (best == kInfinite) return std::nullopt;
  return best;
}

unsigned __int128 saturating_mul(unsigned __int128 a, unsigned __int128 b) {
  constexpr auto kMax = ~static_cast<unsigned __int128>(0);
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

unsigned __int128 saturating_pow(std::uint64_t base, std::size_t exponent) {
  unsigned __int128 result = 1;
  for (std::size_t i = 0; i < exponent; ++i) result = saturating_mul(result, base);
  return result;
}

// Largest value, ties broken by the smallest index so the reduction is
// independent of how work was split between threads.
struct Best {
  std::uint64_t value = 0;
  std::uint64_t index = std::numeric_limits<std::uint64_t>::max();
  VertexPair pair;

  void offer(std::uint64_t v, std::uint64_t i, VertexPair p) {
    if (v > value || (v == value && i < index)) {
      value = v;
      index = i;
      pair = p;
    }
  }
  void merge(const Best& other) { offer(other.value, other.index, other.pair); }
};

void check_property_args(const Graph& g, std::size_t d, std::size_t k, std::size_t t, const PropertyOptions& options) {
  if (d == 0 || k == 0 || t == 0) throw std::invalid_argument("check_property requires d, k, t >= 1");
  if (k + 1 > options.max_path_length) throw std::invalid_argument("path length cap exceeded");
  if (g.vertex_count() < 2) throw std::invalid_argument("check_property requires at least two vertices");
}

PropertyReport start_report(const Graph& g, std::size_t d, std::size_t k, std::size_t t, const PropertyOptions& options) {
  PropertyReport r;
  r.d = d;
  r.k = k;
  r.t = t;
  r.measured_min_degree = min_degree(g);
  r.min_degree_ok = r.measured_min_degree >= d;
  r.cond2_limit = options.cond2_limit;
  const auto n = static_cast<std::uint64_t>(g.vertex_count());
  r.exhaustive = n * n <= options.exhaustive_pair_budget;
  return r;
}

void finish_report(PropertyReport& r, const Best& pk, const Best& pk1) {
  r.max_pk = pk.value;
  r.max_pk_pair = pk.pair;
  r.max_pk1 = pk1.value;
  r.max_pk1_pair = pk1.pair;
  r.cond2_ok = property_cond2(r.max_pk, r.d, r.cond2_limit);
  r.cond3_ok = property_cond3(r.max_pk1, r.d, r.k, r.t);
}

std::vector<VertexPair> draw_pairs(std::size_t n, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<VertexPair> pairs(count);
  for (auto& p : pairs) {
    p.u = static_cast<Vertex>(rng.below(n));
    auto v = static_cast<Vertex>(rng.below(n - 1));
    p.v = v >= p.u ? v + 1 : v;
  }
  return pairs;
}

// Per-source spreading: all (source, x) path counts of length k and k+1 for
// x > source.
void scan_source(PathCounter& counter, Vertex u, std::size_t k, std::size_t n,
                 std::vector<std::vector<std::uint64_t>>& by_length, Best& pk, Best& pk1) {
  counter.count_from(u, by_length);
  for (std::size_t x = u + 1; x < n; ++x) {
    const VertexPair p{u, static_cast<Vertex>(x)};
    const std::uint64_t index = static_cast<std::uint64_t>(u) * n + x;
    pk.offer(by_length[k][x], index, p);
    pk1.offer(by_length[k + 1][x], index, p);
  }
  for (auto& row : by_length) std::fill(row.begin(), row.end(), 0);
}

}  // namespace

std::optional<std::size_t> serial::girth(const Graph& g) {
  GirthScanner scanner(g);
  std::size_t best = kInfinite;
  for (Vertex r = 0; r < g.vertex_count(); ++r) best = scanner.scan(r, best);
  return as_girth(best);
}

std::optional<std::size_t> girth(const Graph& g) {
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  std::size_t best = kInfinite;
#pragma omp parallel
  {
    GirthScanner scanner(g);
    std::size_t local = kInfinite;
#pragma omp for schedule(dynamic, 32) nowait
    for (std::int64_t r = 0; r < n; ++r) local = scanner.scan(static_cast<Vertex>(r), local);
#pragma omp critical(treeembed_girth)
    best = std::min(best, local);
  }
  return as_girth(best);
}

PathCounter::PathCounter(const Graph& g, std::size_t max_length)
    : g_(g), max_length_(max_length), on_path_(g.vertex_count(), 0), target_(g.vertex_count(), 0) {}

std::uint64_t PathCounter::count(Vertex u, Vertex v, std::size_t k) {
  if (u >= g_.vertex_count() || v >= g_.vertex_count()) throw std::invalid_argument("vertex out of range");
  if (u == v) throw std::invalid_argument("count_paths requires distinct endpoints");
  if (k == 0) throw std::invalid_argument("count_paths requires k >= 1");
  if (k > max_length_) throw std::invalid_argument("path length cap exceeded");
  if (k == 1) return g_.has_edge(u, v) ? 1 : 0;

  for (Vertex x : g_.neighbors(v)) target_[x] = 1;
  on_path_[u] = on_path_[v] = 1;
  const std::uint64_t total = extend(u, k - 1);
  on_path_[u] = on_path_[v] = 0;
  for (Vertex x : g_.neighbors(v)) target_[x] = 0;
  return total;
}

// Paths continuing from x with `remaining` more edges that end on a marked
// neighbor of the target.
std::uint64_t PathCounter::extend(Vertex x, std::size_t remaining) {
  std::uint64_t total = 0;
  if (remaining == 1) {
    for (Vertex y : g_.neighbors(x)) total += static_cast<std::uint64_t>(target_[y] && !on_path_[y]);
    return total;
  }
  for (Vertex y : g_.neighbors(x)) {
    if (on_path_[y]) continue;
    on_path_[y] = 1;
    total += extend(y, remaining - 1);
    on_path_[y] = 0;
  }
  return total;
}

void PathCounter::count_from(Vertex source, std::vector<std::vector<std::uint64_t>>& by_length) {
  if (by_length.size() < 2) return;
  if (by_length.size() - 1 > max_length_) throw std::invalid_argument("path length cap exceeded");
  on_path_[source] = 1;
  spread(source, 0, by_length);
  on_path_[source] = 0;
}

void PathCounter::spread(Vertex x, std::size_t depth, std::vector<std::vector<std::uint64_t>>& by_length) {
  const std::size_t next = depth + 1;
  for (Vertex y : g_.neighbors(x)) {
    if (on_path_[y]) continue;
    ++by_length[next][y];
    if (next + 1 < by_length.size()) {
      on_path_[y] = 1;
      spread(y, next, by_length);
      on_path_[y] = 0;
    }
  }
}

std::uint64_t count_paths(const Graph& g, Vertex u, Vertex v, std::size_t k, std::size_t max_length) {
  PathCounter counter(g, max_length);
  return counter.count(u, v, k);
}

bool property_cond2(std::uint64_t max_pk, std::size_t d, std::optional<double> limit) {
  if (limit) return static_cast<double>(max_pk) <= *limit;
  return saturating_pow(max_pk, 4) <= static_cast<unsigned __int128>(d);
}

bool property_cond3(std::uint64_t max_pk1, std::size_t d, std::size_t k, std::size_t t) {
  return saturating_mul(max_pk1, t) <= saturating_pow(d, k + 1);
}

std::string PropertyReport::verdict() const {
  if (!passed()) return "fail";
  return exhaustive ? "pass" : "no violation found in sample";
}

PropertyReport serial::check_property(const Graph& g, std::size_t d, std::size_t k, std::size_t t,
                                      PropertyOptions options) {
  check_property_args(g, d, k, t, options);
  PropertyReport r = start_report(g, d, k, t, options);
  const std::size_t n = g.vertex_count();
  PathCounter counter(g, options.max_path_length);
  Best pk, pk1;
  if (r.exhaustive) {
    std::vector<std::vector<std::uint64_t>> by_length(k + 2, std::vector<std::uint64_t>(n, 0));
    for (Vertex u = 0; u < n; ++u) scan_source(counter, u, k, n, by_length, pk, pk1);
    r.sampled_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  } else {
    const auto pairs = draw_pairs(n, options.sample, options.seed);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      pk.offer(counter.count(pairs[i].u, pairs[i].v, k), i, pairs[i]);
      pk1.offer(counter.count(pairs[i].u, pairs[i].v, k + 1), i, pairs[i]);
    }
    r.sampled_pairs = pairs.size();
  }
  finish_report(r, pk, pk1);
  return r;
}

PropertyReport check_property(const Graph& g, std::size_t d, std::size_t k, std::size_t t,
                              const PropertyOptions& options) {
  if (!options.parallel) return serial::check_property(g, d, k, t, options);
  check_property_args(g, d, k, t, options);
  PropertyReport r = start_report(g, d, k, t, options);
  const std::size_t n = g.vertex_count();
  Best pk, pk1;
  std::vector<VertexPair> pairs;
  if (!r.exhaustive) pairs = draw_pairs(n, options.sample, options.seed);

#pragma omp parallel
  {
    PathCounter counter(g, options.max_path_length);
    Best local_pk, local_pk1;
    if (r.exhaustive) {
      std::vector<std::vector<std::uint64_t>> by_length(k + 2, std::vector<std::uint64_t>(n, 0));
#pragma omp for schedule(dynamic, 16) nowait
      for (std::int64_t u = 0; u < static_cast<std::int64_t>(n); ++u)
        scan_source(counter, static_cast<Vertex>(u), k, n, by_length, local_pk, local_pk1);
    } else {
#pragma omp for schedule(dynamic, 64) nowait
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(pairs.size()); ++i) {
        const auto& p = pairs[static_cast<std::size_t>(i)];
        local_pk.offer(counter.count(p.u, p.v, k), static_cast<std::uint64_t>(i), p);
        local_pk1.offer(counter.count(p.u, p.v, k + 1), static_cast<std::uint64_t>(i), p);
      }
    }
#pragma omp critical(treeembed_property)
    {
      pk.merge(local_pk);
      pk1.merge(local_pk1);
    }
  }
  r.sampled_pairs = r.exhaustive ? static_cast<std::uint64_t>(n) * (n - 1) / 2 : pairs.size();
  finish_report(r, pk, pk1);
  return r;
}

bool kst_free(const Graph& g, std::size_t s, std::size_t t, double work_budget) {
  if (t < 2 || s < t) throw std::invalid_argument("kst_free requires s >= t >= 2");
  if (t > 3) throw std::invalid_argument("exhaustive K_{s,t} check infeasible");
  double work = 0.0;
  for (Vertex w = 0; w < g.vertex_count(); ++w) work += std::pow(static_cast<double>(g.degree(w)), static_cast<double>(t));
  if (work > work_budget) throw std::invalid_argument("exhaustive K_{s,t} check infeasible");

  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> codegree(n, 0), triple(n, 0);
  std::vector<Vertex> touched, touched3, common;
  for (Vertex a = 0; a < n; ++a) {
    touched.clear();
    for (Vertex w : g.neighbors(a))
      for (Vertex b : g.neighbors(w)) {
        if (b <= a) continue;
        if (codegree[b]++ == 0) touched.push_back(b);
      }
    bool found = false;
    for (Vertex b : touched) {
      if (codegree[b] < s) continue;
      if (t == 2) {
        found = true;
        break;
      }
      // t == 3: extend the pair (a, b) by a third vertex c > b.
      common.clear();
      std::set_intersection(g.neighbors(a).begin(), g.neighbors(a).end(), g.neighbors(b).begin(),
                            g.neighbors(b).end(), std::back_inserter(common));
      touched3.clear();
      for (Vertex w : common)
        for (Vertex c : g.neighbors(w)) {
          if (c <= b) continue;
          if (triple[c]++ == 0) touched3.push_back(c);
          if (triple[c] >= s) found = true;
        }
      for (Vertex c : touched3) triple[c] = 0;
      if (found) break;
    }
    for (Vertex b : touched) codegree[b] = 0;
    if (found) return false;
  }
  return true;
}

double common_neighbor_threshold(std::size_t s, std::size_t t, std::size_t d) {
  if (t < 2) throw std::invalid_argument("common_neighbor_threshold requires t >= 2");
  const double e = 1.0 / static_cast<double>(t - 1);
  return 2.0 * std::pow(static_cast<double>(s), e) * std::pow(static_cast<double>(d), static_cast<double>(t - 2) * e);
}

CommonNeighborStats common_neighbor_stats(const Graph& g, const NeighborCap& cap, std::size_t threshold,
                                          std::optional<std::size_t> sample, std::uint64_t seed) {
  if (cap.vertex_count() != g.vertex_count()) throw std::invalid_argument("neighbor cap was built for a different graph");
  const std::size_t n = g.vertex_count();
  CommonNeighborStats stats;
  stats.threshold = threshold;
  if (sample && *sample < n) {
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    Rng rng(seed);
    for (std::size_t i = 0; i < *sample; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
    stats.vertices.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(*sample));
    std::sort(stats.vertices.begin(), stats.vertices.end());
  } else {
    stats.vertices.resize(n);
    for (Vertex v = 0; v < n; ++v) stats.vertices[v] = v;
  }

  const std::size_t bins = cap.cap_size() + 1;
  stats.histogram.assign(bins, 0);
  stats.per_vertex.assign(stats.vertices.size(), std::vector<std::uint64_t>(bins, 0));
  stats.heavy_counts.assign(stats.vertices.size(), 0);
  std::vector<std::uint32_t> shared(n, 0);
  std::vector<Vertex> touched;
  for (std::size_t i = 0; i < stats.vertices.size(); ++i) {
    const Vertex v = stats.vertices[i];
    touched.clear();
    for (Vertex x : cap.selected(v))
      for (Vertex w : cap.selectors(x)) {
        if (w == v) continue;
        if (shared[w]++ == 0) touched.push_back(w);
      }
    auto& hist = stats.per_vertex[i];
    hist[0] = (n - 1) - touched.size();
    for (Vertex w : touched) {
      ++hist[shared[w]];
      if (shared[w] > threshold) ++stats.heavy_counts[i];
      stats.max_intersection = std::max<std::size_t>(stats.max_intersection, shared[w]);
      shared[w] = 0;
    }
    for (std::size_t b = 0; b < bins; ++b) stats.histogram[b] += hist[b];
  }
  return stats;
}

}  // namespace treeembed

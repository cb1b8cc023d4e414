#ifndef TREEEMBED_ANALYSIS_HPP
#define TREEEMBED_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treeembed/graph.hpp"

namespace treeembed {

/// Length of the shortest cycle, or nullopt for a forest.
///
/// BFS from every vertex; a non-tree edge (x, y) closes a cycle of length at
/// most dist(x) + dist(y) + 1, and the minimum over all roots is exact.
/// Roots are distributed over OpenMP threads.
std::optional<std::size_t> girth(const Graph& g);

inline constexpr std::size_t kDefaultPathLengthCap = 6;

/// Counts vertex-simple paths with a fixed number of edges between two
/// vertices. Keeps O(n) scratch, so reuse one instance per thread.
class PathCounter {
 public:
  explicit PathCounter(const Graph& g, std::size_t max_length = kDefaultPathLengthCap);

  /// Throws std::invalid_argument if u == v, k == 0, or
  /// k > max_length ("path length cap exceeded").
  std::uint64_t count(Vertex u, Vertex v, std::size_t k);

  /// Adds, for every vertex x, the number of simple paths from `source` to x
  /// with exactly j edges into by_length[j][x] for j = 1 .. by_length.size()-1.
  void count_from(Vertex source, std::vector<std::vector<std::uint64_t>>& by_length);

 private:
  std::uint64_t extend(Vertex x, std::size_t remaining);
  void spread(Vertex x, std::size_t depth, std::vector<std::vector<std::uint64_t>>& by_length);

  const Graph& g_;
  std::size_t max_length_;
  std::vector<char> on_path_;
  std::vector<char> target_;
};

std::uint64_t count_paths(const Graph& g, Vertex u, Vertex v, std::size_t k,
                          std::size_t max_length = kDefaultPathLengthCap);

struct VertexPair {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const VertexPair&, const VertexPair&) = default;
};

struct PropertyOptions {
  /// Above this many ordered pairs (|V|^2) only a sample of pairs is checked.
  std::uint64_t exhaustive_pair_budget = 100'000'000;
  /// Pairs drawn in sampled mode.
  std::size_t sample = 10'000;
  std::uint64_t seed = 0;
  std::size_t max_path_length = kDefaultPathLengthCap;
  /// Replaces d^{1/4} in condition 2 when set.
  std::optional<double> cond2_limit;
  bool parallel = true;
};

/// Certification of the path-count property P(d, k, t):
///   1. minimum degree >= d
///   2. P_k(u, v) <= d^{1/4} for all pairs
///   3. P_{k+1}(u, v) <= d^{k+1} / t for all pairs
struct PropertyReport {
  std::size_t d = 0, k = 0, t = 0;
  std::size_t measured_min_degree = 0;
  bool min_degree_ok = false;
  std::uint64_t max_pk = 0;
  VertexPair max_pk_pair;
  std::uint64_t max_pk1 = 0;
  VertexPair max_pk1_pair;
  bool cond2_ok = false;
  bool cond3_ok = false;
  bool exhaustive = false;
  /// Unordered pairs evaluated; all of them when exhaustive.
  std::uint64_t sampled_pairs = 0;
  std::optional<double> cond2_limit;

  bool passed() const { return min_degree_ok && cond2_ok && cond3_ok; }
  /// "pass", "fail", or "no violation found in sample". A sampled check
  /// never certifies the property.
  std::string verdict() const;
};

/// Exhaustive (per-source path spreading) when |V|^2 fits the budget,
/// otherwise options.sample uniform pairs u != v.
PropertyReport check_property(const Graph& g, std::size_t d, std::size_t k, std::size_t t,
                              const PropertyOptions& options = {});

/// cond2: max_pk^4 <= d, cond3: max_pk1 * t <= d^{k+1}, in exact integer
/// arithmetic (or against cond2_limit when given).
bool property_cond2(std::uint64_t max_pk, std::size_t d, std::optional<double> limit);
bool property_cond3(std::uint64_t max_pk1, std::size_t d, std::size_t k, std::size_t t);

/// True iff no t-set of vertices has s or more common neighbors. Only t in
/// {2, 3} is supported; throws std::invalid_argument("exhaustive K_{s,t} check
/// infeasible") for larger t or when sum_w deg(w)^t exceeds work_budget.
bool kst_free(const Graph& g, std::size_t s, std::size_t t, double work_budget = 2e9);

/// Distribution of |N_+(v) ∩ N_+(w)| over w != v.
struct CommonNeighborStats {
  std::size_t threshold = 0;
  std::vector<Vertex> vertices;                              // the v examined
  std::vector<std::vector<std::uint64_t>> per_vertex;        // [i][s]: #w with |∩| = s
  std::vector<std::size_t> heavy_counts;                     // |M_v| (intersection > threshold)
  std::vector<std::uint64_t> histogram;                      // sum over examined v
  std::size_t max_intersection = 0;
};

/// All vertices, or `sample` seeded vertices without replacement.
CommonNeighborStats common_neighbor_stats(const Graph& g, const NeighborCap& cap, std::size_t threshold,
                                          std::optional<std::size_t> sample = std::nullopt,
                                          std::uint64_t seed = 0);

/// 2 s^{1/(t-1)} d^{(t-2)/(t-1)}: split point between L_v and M_v.
double common_neighbor_threshold(std::size_t s, std::size_t t, std::size_t d);

namespace serial {
// Single-threaded reference kernels; the parallel versions must agree exactly.
std::optional<std::size_t> girth(const Graph& g);
PropertyReport check_property(const Graph& g, std::size_t d, std::size_t k, std::size_t t,
                              PropertyOptions options = {});
}  // namespace serial

}  // namespace treeembed

#endif  // TREEEMBED_ANALYSIS_HPP

#ifndef TREEEMBED_GRAPH_HPP
#define TREEEMBED_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace treeembed {

/// Dense 0-based vertex index.
using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Neighbor lists are sorted and duplicate-free; the adjacency is symmetric.
/// All mutation happens before construction (see from_edges and the
/// generators in graph_gen.hpp).
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Builds a graph from an unordered edge list. Edge orientation is
  /// irrelevant. Throws std::invalid_argument on self-loops, duplicate edges
  /// or endpoints out of range.
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  /// O(log deg) membership test on the sorted neighbor list.
  bool has_edge(Vertex u, Vertex v) const noexcept;

  /// Canonical edge list: u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  /// Full scan of the representation invariants (sorted, no loops,
  /// symmetric). Used by tests; construction already guarantees them.
  bool is_consistent() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
};

/// Minimum vertex degree. Throws std::invalid_argument("empty graph") when
/// the graph has no vertices.
std::size_t min_degree(const Graph& g);
std::size_t max_degree(const Graph& g);

/// Fixed per-vertex subset of exactly `cap_size` neighbors, N_+(v).
///
/// Also stores the reverse relation (which vertices selected w), needed to
/// update occupancy counts when w gets occupied.
class NeighborCap {
 public:
  NeighborCap() = default;

  std::size_t cap_size() const noexcept { return cap_size_; }
  std::size_t vertex_count() const noexcept { return selectors_offsets_.empty() ? 0 : selectors_offsets_.size() - 1; }

  std::span<const Vertex> selected(Vertex v) const noexcept {
    return {selected_.data() + v * cap_size_, cap_size_};
  }
  /// All v with w in selected(v), sorted.
  std::span<const Vertex> selectors(Vertex w) const noexcept {
    return {selectors_.data() + selectors_offsets_[w], selectors_.data() + selectors_offsets_[w + 1]};
  }

  friend bool operator==(const NeighborCap&, const NeighborCap&) = default;

 private:
  friend NeighborCap make_neighbor_cap(const Graph&, std::size_t);
  friend NeighborCap make_random_neighbor_cap(const Graph&, std::size_t, std::uint64_t);
  static NeighborCap from_selection(std::size_t vertex_count, std::size_t cap_size,
                                    std::vector<Vertex> selected);

  std::size_t cap_size_ = 0;
  std::vector<Vertex> selected_;  // vertex_count * cap_size, row-major
  std::vector<std::size_t> selectors_offsets_;
  std::vector<Vertex> selectors_;
};

/// selected(v) = the d smallest-index neighbors of v.
/// Throws std::invalid_argument("cap exceeds minimum degree") if d > min degree,
/// and on d == 0.
NeighborCap make_neighbor_cap(const Graph& g, std::size_t d);

/// selected(v) = a seeded uniform d-subset of N(v) (partial Fisher-Yates), sorted.
NeighborCap make_random_neighbor_cap(const Graph& g, std::size_t d, std::uint64_t seed);

// Edge-list text format:
//   n m
//   u v        (m lines, 0 <= u < v < n, sorted)
// Reading accepts edges in any order or orientation; writing is canonical.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
Graph load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const Graph& g);

}  // namespace treeembed

#endif  // TREEEMBED_GRAPH_HPP

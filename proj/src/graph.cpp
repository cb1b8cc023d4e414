#include "treeembed/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "treeembed/random.hpp"

namespace treeembed {

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
  std::vector<std::size_t> degree(vertex_count, 0);
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    ++degree[u];
    ++degree[v];
  }

  Graph g;
  g.offsets_.assign(vertex_count + 1, 0);
  for (std::size_t v = 0; v < vertex_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_.back());

  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : edges) {
    g.adjacency_[cursor[u]++] = v;
    g.adjacency_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last)
      throw std::invalid_argument("duplicate edge at vertex " + std::to_string(v));
  }
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
  if (u >= vertex_count() || v >= vertex_count()) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool Graph::is_consistent() const {
  if (adjacency_.size() % 2 != 0) return false;
  for (Vertex v = 0; v < vertex_count(); ++v) {
    auto nb = neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] >= vertex_count() || nb[i] == v) return false;
      if (i > 0 && nb[i - 1] >= nb[i]) return false;
      if (!has_edge(nb[i], v)) return false;
    }
  }
  return true;
}

std::size_t min_degree(const Graph& g) {
  if (g.vertex_count() == 0) throw std::invalid_argument("empty graph");
  std::size_t best = g.degree(0);
  for (Vertex v = 1; v < g.vertex_count(); ++v) best = std::min(best, g.degree(v));
  return best;
}

std::size_t max_degree(const Graph& g) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) best = std::max(best, g.degree(v));
  return best;
}

NeighborCap NeighborCap::from_selection(std::size_t vertex_count, std::size_t cap_size,
                                        std::vector<Vertex> selected) {
  NeighborCap cap;
  cap.cap_size_ = cap_size;
  cap.selected_ = std::move(selected);

  std::vector<std::size_t> in_degree(vertex_count, 0);
  for (Vertex w : cap.selected_) ++in_degree[w];
  cap.selectors_offsets_.assign(vertex_count + 1, 0);
  for (std::size_t w = 0; w < vertex_count; ++w)
    cap.selectors_offsets_[w + 1] = cap.selectors_offsets_[w] + in_degree[w];
  cap.selectors_.resize(cap.selected_.size());
  std::vector<std::size_t> cursor(cap.selectors_offsets_.begin(), cap.selectors_offsets_.end() - 1);
  // v increases monotonically, so each selectors list comes out sorted.
  for (std::size_t v = 0; v < vertex_count; ++v)
    for (Vertex w : cap.selected(static_cast<Vertex>(v)))
      cap.selectors_[cursor[w]++] = static_cast<Vertex>(v);
  return cap;
}

namespace {

void check_cap_size(const Graph& g, std::size_t d) {
  if (d == 0) throw std::invalid_argument("cap size must be positive");
  if (d > min_degree(g)) throw std::invalid_argument("cap exceeds minimum degree");
}

}  // namespace

NeighborCap make_neighbor_cap(const Graph& g, std::size_t d) {
  check_cap_size(g, d);
  std::vector<Vertex> selected;
  selected.reserve(g.vertex_count() * d);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto nb = g.neighbors(v);
    selected.insert(selected.end(), nb.begin(), nb.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return NeighborCap::from_selection(g.vertex_count(), d, std::move(selected));
}

NeighborCap make_random_neighbor_cap(const Graph& g, std::size_t d, std::uint64_t seed) {
  check_cap_size(g, d);
  Rng rng(seed);
  std::vector<Vertex> selected;
  selected.reserve(g.vertex_count() * d);
  std::vector<Vertex> scratch;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto nb = g.neighbors(v);
    scratch.assign(nb.begin(), nb.end());
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t j = i + rng.below(scratch.size() - i);
      std::swap(scratch[i], scratch[j]);
    }
    std::sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(d));
    selected.insert(selected.end(), scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return NeighborCap::from_selection(g.vertex_count(), d, std::move(selected));
}

Graph read_edge_list(std::istream& in) {
  std::size_t n = 0, m = 0;
  if (!(in >> n >> m)) throw std::runtime_error("edge list: missing \"n m\" header");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw std::runtime_error("edge list: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    if (u < 0 || v < 0) throw std::runtime_error("edge list: negative vertex index");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  std::string trailing;
  if (in >> trailing) throw std::runtime_error("edge list: trailing data after " + std::to_string(m) + " edges");
  return Graph::from_edges(n, edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_edge_list(out, g);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace treeembed

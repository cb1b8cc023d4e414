#ifndef TREEEMBED_GRAPH_GEN_HPP
#define TREEEMBED_GRAPH_GEN_HPP

#include <cstdint>

#include "treeembed/graph.hpp"

namespace treeembed {

/// Incidence graph of the projective plane PG(2, q) for prime q.
///
/// Points and lines are the normalized nonzero triples over Z/q (first
/// nonzero coordinate equal to 1), enumerated lexicographically. Vertices
/// 0 .. q^2+q are points, the next q^2+q+1 vertices are lines; a point is
/// adjacent to a line iff their dot product vanishes mod q.
/// The result is bipartite, (q+1)-regular and has girth 6.
/// Throws std::invalid_argument("q must be prime") otherwise.
Graph projective_plane_graph(std::uint32_t q);

/// Number of points (equivalently lines) of PG(2, q).
constexpr std::size_t projective_plane_points(std::uint32_t q) { return std::size_t{q} * q + q + 1; }

bool is_prime(std::uint64_t x);

struct GnpSpec {
  std::size_t n = 1;
  double p = 0.0;
  std::uint64_t seed = 0;
};

/// Erdos-Renyi G(n, p).
///
/// Unordered pairs {u < v} are indexed lexicographically (0,1), (0,2), ...,
/// (n-2,n-1). Starting before index 0, each step skips ahead by
/// 1 + floor(ln(U) / ln(1 - p)) with U uniform in (0, 1] drawn from
/// Rng(seed).open_unit(); every index landed on is an edge. This samples each
/// pair independently with probability p in O(n + m) expected time.
Graph gnp_graph(const GnpSpec& spec);

Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);
/// K_{a,b}: vertices 0..a-1 on one side, a..a+b-1 on the other.
Graph complete_bipartite_graph(std::size_t a, std::size_t b);
/// Star K_{1,leaves} with center 0.
Graph star_graph(std::size_t leaves);

}  // namespace treeembed

#endif  // TREEEMBED_GRAPH_GEN_HPP

#include "treeembed/graph_gen.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "treeembed/random.hpp"

namespace treeembed {

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t f = 2; f * f <= x; ++f)
    if (x % f == 0) return false;
  return true;
}

namespace {

using Triple = std::array<std::uint32_t, 3>;

// Position of a normalized triple in lexicographic order:
// (0,0,1) < (0,1,*) < (1,*,*).
std::size_t triple_index(const Triple& x, std::uint32_t q) {
  if (x[0] == 1) return 1 + q + std::size_t{x[1]} * q + x[2];
  if (x[1] == 1) return 1 + std::size_t{x[2]};
  return 0;
}

Triple triple_at(std::size_t index, std::uint32_t q) {
  if (index == 0) return {0, 0, 1};
  if (index <= q) return {0, 1, static_cast<std::uint32_t>(index - 1)};
  index -= 1 + q;
  return {1, static_cast<std::uint32_t>(index / q), static_cast<std::uint32_t>(index % q)};
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t q) {
  // Fermat: a^(q-2) mod q.
  std::uint64_t result = 1, base = a % q;
  for (std::uint32_t e = q - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % q;
    base = base * base % q;
  }
  return static_cast<std::uint32_t>(result);
}

Triple normalize(Triple x, std::uint32_t q) {
  std::size_t lead = 0;
  while (x[lead] == 0) ++lead;
  const std::uint64_t inv = inverse_mod(x[lead], q);
  for (auto& c : x) c = static_cast<std::uint32_t>(c * inv % q);
  return x;
}

}  // namespace

Graph projective_plane_graph(std::uint32_t q) {
  if (!is_prime(q)) throw std::invalid_argument("q must be prime");
  const std::size_t count = projective_plane_points(q);
  const auto neg = [q](std::uint32_t a) { return (q - a % q) % q; };

  std::vector<Edge> edges;
  edges.reserve(count * (q + 1));
  for (std::size_t li = 0; li < count; ++li) {
    const Triple line = triple_at(li, q);
    // Basis {u, w} of the plane orthogonal to `line`; its q+1 projective
    // points are u and w + s*u for s in Z/q.
    Triple u, w;
    if (line[0] == 1) {
      u = {neg(line[1]), 1, 0};
      w = {neg(line[2]), 0, 1};
    } else if (line[1] == 1) {
      u = {1, 0, 0};
      w = {0, neg(line[2]), 1};
    } else {
      u = {1, 0, 0};
      w = {0, 1, 0};
    }
    const auto line_vertex = static_cast<Vertex>(count + li);
    edges.emplace_back(static_cast<Vertex>(triple_index(normalize(u, q), q)), line_vertex);
    for (std::uint32_t s = 0; s < q; ++s) {
      Triple x;
      for (int c = 0; c < 3; ++c) x[c] = static_cast<std::uint32_t>((w[c] + std::uint64_t{s} * u[c]) % q);
      edges.emplace_back(static_cast<Vertex>(triple_index(normalize(x, q), q)), line_vertex);
    }
  }
  return Graph::from_edges(2 * count, edges);
}

Graph gnp_graph(const GnpSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("G(n,p) requires n >= 1");
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw std::invalid_argument("G(n,p) requires 0 <= p <= 1");

  const std::size_t n = spec.n;
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::vector<Edge> edges;
  if (spec.p == 0.0 || pairs == 0) return Graph::from_edges(n, edges);

  if (spec.p == 1.0) {
    edges.reserve(pairs);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
  }

  edges.reserve(static_cast<std::size_t>(static_cast<double>(pairs) * spec.p * 1.1) + 16);
  Rng rng(spec.seed);
  const double log_q = std::log1p(-spec.p);
  // Row u covers pair indices [row_start, row_start + n-1-u).
  std::uint64_t u = 0, row_start = 0, row_len = n - 1;
  std::uint64_t index = 0;
  bool first = true;
  for (;;) {
    const double skip = std::floor(std::log(rng.open_unit()) / log_q);
    if (skip >= static_cast<double>(pairs)) break;
    index += static_cast<std::uint64_t>(skip) + (first ? 0 : 1);
    first = false;
    if (index >= pairs) break;
    while (index >= row_start + row_len) {
      row_start += row_len;
      ++u;
      --row_len;
    }
    const std::uint64_t v = u + 1 + (index - row_start);
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle requires n >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
  if (n < 1) throw std::invalid_argument("path requires n >= 1");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

Graph complete_graph(std::size_t n) {
  if (n < 1) throw std::invalid_argument("complete graph requires n >= 1");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
  if (a < 1 || b < 1) throw std::invalid_argument("complete bipartite graph requires both sides >= 1");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < a; ++u)
    for (std::size_t v = 0; v < b; ++v) edges.emplace_back(u, static_cast<Vertex>(a + v));
  return Graph::from_edges(a + b, edges);
}

Graph star_graph(std::size_t leaves) {
  if (leaves < 1) throw std::invalid_argument("star requires at least one leaf");
  return complete_bipartite_graph(1, leaves);
}

}  // namespace treeembed

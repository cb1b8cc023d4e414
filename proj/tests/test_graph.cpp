#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "treeembed/graph.hpp"
#include "treeembed/graph_gen.hpp"

using namespace treeembed;

TEST_CASE("min_degree") {
  CHECK(min_degree(complete_graph(5)) == 4);
  CHECK(min_degree(cycle_graph(5)) == 2);
  CHECK(min_degree(projective_plane_graph(2)) == 3);
  CHECK_THROWS_WITH_AS(min_degree(Graph{}), "empty graph", std::invalid_argument);
}

TEST_CASE("from_edges rejects non-simple input") {
  const std::vector<Edge> loop{{0, 0}};
  CHECK_THROWS_AS(Graph::from_edges(2, loop), std::invalid_argument);
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(Graph::from_edges(2, dup), std::invalid_argument);
  const std::vector<Edge> range{{0, 5}};
  CHECK_THROWS_AS(Graph::from_edges(3, range), std::invalid_argument);
}

TEST_CASE("adjacency is symmetric and sorted for every constructor") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gnp_graph({60, 0.1, seed});
    CHECK(g.is_consistent());
    std::size_t total = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) total += g.degree(v);
    CHECK(total == 2 * g.edge_count());
  }
  CHECK(projective_plane_graph(7).is_consistent());
  CHECK(complete_bipartite_graph(3, 4).is_consistent());
  CHECK(path_graph(1).edge_count() == 0);
}

TEST_CASE("make_neighbor_cap") {
  SUBCASE("regular graph with cap d selects the full neighborhood") {
    const Graph g = projective_plane_graph(3);
    const NeighborCap cap = make_neighbor_cap(g, 4);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      auto s = cap.selected(v);
      auto n = g.neighbors(v);
      CHECK(std::equal(s.begin(), s.end(), n.begin(), n.end()));
    }
  }
  SUBCASE("smallest-index rule") {
    const Graph star = star_graph(5);
    const NeighborCap cap = make_neighbor_cap(star, 1);
    REQUIRE(cap.selected(0).size() == 1);
    CHECK(cap.selected(0)[0] == 1);
    CHECK(cap.selected(3)[0] == 0);
  }
  SUBCASE("cap above minimum degree") {
    CHECK_THROWS_WITH_AS(make_neighbor_cap(cycle_graph(6), 3), "cap exceeds minimum degree", std::invalid_argument);
    CHECK_THROWS_AS(make_neighbor_cap(cycle_graph(6), 0), std::invalid_argument);
  }
  SUBCASE("deterministic") {
    const Graph g = gnp_graph({80, 0.2, 3});
    const std::size_t d = min_degree(g);
    CHECK(make_neighbor_cap(g, d) == make_neighbor_cap(g, d));
    CHECK(make_random_neighbor_cap(g, d, 9) == make_random_neighbor_cap(g, d, 9));
  }
  SUBCASE("selectors invert selected") {
    const Graph g = gnp_graph({50, 0.3, 11});
    const std::size_t d = min_degree(g) / 2 + 1;
    const NeighborCap cap = make_random_neighbor_cap(g, d, 4);
    std::size_t total = 0;
    for (Vertex w = 0; w < g.vertex_count(); ++w) {
      for (Vertex v : cap.selectors(w)) {
        auto s = cap.selected(v);
        CHECK(std::binary_search(s.begin(), s.end(), w));
      }
      total += cap.selectors(w).size();
    }
    CHECK(total == d * g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      auto s = cap.selected(v);
      CHECK(std::is_sorted(s.begin(), s.end()));
      CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
      for (Vertex w : s) CHECK(g.has_edge(v, w));
    }
  }
}

TEST_CASE("edge list round trip is byte-exact") {
  const Graph g = gnp_graph({40, 0.15, 7});
  std::ostringstream first;
  write_edge_list(first, g);
  std::istringstream in(first.str());
  const Graph back = read_edge_list(in);
  CHECK(back == g);
  std::ostringstream second;
  write_edge_list(second, back);
  CHECK(second.str() == first.str());
}

TEST_CASE("edge list reader canonicalizes and validates") {
  std::istringstream shuffled("4 3\n3 2\n0 1\n2 0\n");
  std::ostringstream out;
  write_edge_list(out, read_edge_list(shuffled));
  CHECK(out.str() == "4 3\n0 1\n0 2\n2 3\n");

  std::istringstream truncated("3 2\n0 1\n");
  CHECK_THROWS(read_edge_list(truncated));
  std::istringstream loop("3 1\n1 1\n");
  CHECK_THROWS(read_edge_list(loop));
  std::istringstream extra("3 1\n0 1\n1 2\n");
  CHECK_THROWS(read_edge_list(extra));
}

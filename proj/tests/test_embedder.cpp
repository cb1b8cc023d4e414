#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "treeembed/embedder.hpp"
#include "treeembed/graph_gen.hpp"
#include "treeembed/random.hpp"

using namespace treeembed;

namespace {

EmbedOutcome run(const Graph& g, const RootedTree& t, Variant v, std::uint64_t seed,
                 const NeighborCap* cap = nullptr, std::size_t warmup = 0) {
  EmbedParams p;
  p.variant = v;
  p.cap = cap;
  p.warmup_k = warmup;
  p.seed = seed;
  p.record_trace = true;
  return embed(g, t, p);
}

}  // namespace

TEST_CASE("complete host always succeeds") {
  const Graph k8 = complete_graph(8);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const RootedTree t = random_tree(8, 7, s);
    const auto out = run(k8, t, Variant::A1, s);
    REQUIRE(out.success());
    CHECK(verify_embedding(k8, t, out.embedding));
  }
}

TEST_CASE("path into C5 always succeeds") {
  const Graph c5 = cycle_graph(5);
  const RootedTree p5 = path_tree(5);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto out = run(c5, p5, Variant::A1, s);
    REQUIRE(out.success());
    CHECK(verify_embedding(c5, p5, out.embedding));
  }
}

TEST_CASE("4-vertex path into K_{1,3} always fails") {
  const Graph star = star_graph(3);
  const RootedTree p4 = path_tree(4);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto out = run(star, p4, Variant::A1, s);
    CHECK_FALSE(out.success());
    CHECK(out.trace.failed_at.has_value());
    CHECK_FALSE(out.embedding.complete());
  }
}

TEST_CASE("tree larger than host is an error, not a failure") {
  CHECK_THROWS_AS(run(complete_graph(3), path_tree(4), Variant::A1, 0), std::invalid_argument);
}

TEST_CASE("parameter consistency") {
  const Graph g = complete_graph(5);
  const NeighborCap cap = make_neighbor_cap(g, 3);
  const RootedTree t = path_tree(3);
  CHECK_THROWS_AS(run(g, t, Variant::A2, 0), std::invalid_argument);
  CHECK_THROWS_AS(run(g, t, Variant::A3, 0), std::invalid_argument);
  CHECK_THROWS_AS(run(g, t, Variant::A1, 0, &cap), std::invalid_argument);
  CHECK_THROWS_AS(run(g, t, Variant::A4, 0, &cap), std::invalid_argument);
  CHECK_THROWS_AS(run(g, t, Variant::A1, 0, nullptr, 2), std::invalid_argument);
  const NeighborCap other = make_neighbor_cap(complete_graph(6), 3);
  CHECK_THROWS_AS(run(g, t, Variant::A2, 0, &other), std::invalid_argument);
  CHECK_NOTHROW(run(g, t, Variant::A3, 0, &cap, 4));
  CHECK(parse_variant("A3") == Variant::A3);
  CHECK_THROWS(parse_variant("a5"));
}

TEST_CASE("verify_embedding") {
  const Graph g = path_graph(3);
  const RootedTree t = path_tree(3);
  CHECK(verify_embedding(g, t, Embedding{{0, 1, 2}}));
  CHECK(verify_embedding(g, t, Embedding{{2, 1, 0}}));
  CHECK_FALSE(verify_embedding(g, t, Embedding{{0, 1, 0}}));
  CHECK_FALSE(verify_embedding(g, t, Embedding{{1, 0, 2}}));
  CHECK_THROWS_WITH_AS(verify_embedding(g, t, Embedding{{0, 1, kUnassigned}}), "embedding incomplete",
                       std::invalid_argument);
}

TEST_CASE("uniform choice on K3 with a fixed root image") {
  const Graph k3 = complete_graph(3);
  const RootedTree edge = path_tree(2);
  constexpr int runs = 100000;
  int to_one = 0;
  for (int s = 0; s < runs; ++s) {
    EmbedParams p;
    p.seed = static_cast<std::uint64_t>(s);
    p.start_vertex = 0;
    const auto out = embed(k3, edge, p);
    REQUIRE(out.success());
    REQUIRE(out.embedding.assignment[0] == 0);
    if (out.embedding.assignment[1] == 1) ++to_one;
  }
  CHECK(std::abs(to_one / static_cast<double>(runs) - 0.5) <= 0.02);
}

TEST_CASE("root image is uniform for A1") {
  const Graph g = complete_graph(5);
  const RootedTree t = path_tree(1);
  std::vector<int> hits(5, 0);
  constexpr int runs = 50000;
  for (int s = 0; s < runs; ++s) ++hits[run(g, t, Variant::A1, static_cast<std::uint64_t>(s)).embedding.assignment[0]];
  for (int h : hits) CHECK(std::abs(h / static_cast<double>(runs) - 0.2) <= 0.01);
}

TEST_CASE("determinism including trace") {
  const Graph g = projective_plane_graph(7);
  const NeighborCap cap = make_neighbor_cap(g, 6);
  const RootedTree t = random_tree(40, 5, 3);
  for (Variant v : {Variant::A1, Variant::A2, Variant::A3, Variant::A4}) {
    const NeighborCap* c = uses_cap(v) ? &cap : nullptr;
    const std::size_t k = uses_warmup(v) ? 3 : 0;
    const auto a = run(g, t, v, 99, c, k);
    const auto b = run(g, t, v, 99, c, k);
    CHECK(a.embedding.assignment == b.embedding.assignment);
    CHECK(a.trace.available_choices == b.trace.available_choices);
    CHECK(a.trace.occupancy_max == b.trace.occupancy_max);
    CHECK(a.trace.walk_prefix == b.trace.walk_prefix);
  }
}

TEST_CASE("soundness and occupancy replay across variants") {
  const Graph g = projective_plane_graph(5);
  const NeighborCap cap = make_random_neighbor_cap(g, 4, 17);
  std::size_t successes = 0, failures = 0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    const RootedTree t = random_tree(8 + s % 30, 2 + s % 5, s);
    for (Variant v : {Variant::A1, Variant::A2, Variant::A3, Variant::A4}) {
      CAPTURE(s);
      const NeighborCap* c = uses_cap(v) ? &cap : nullptr;
      const auto out = run(g, t, v, mix_seed(s, static_cast<std::uint64_t>(v)), c, uses_warmup(v) ? 5 : 0);
      if (out.success()) {
        ++successes;
        CHECK(verify_embedding(g, t, out.embedding));
        CHECK(out.trace.placement_order.size() == t.vertex_count());
        for (auto a : out.trace.available_choices) CHECK(a >= 1);
      } else {
        ++failures;
        const TreeVertex u = *out.trace.failed_at;
        CHECK(out.trace.failed_available < t.child_count(u));
      }
      CHECK(out.trace.occupancy_max == oracle::replay_occupancy(g, t, out.trace, out.embedding, c));
      std::size_t peak = 0;
      for (auto [_, m] : out.trace.occupancy_max) peak = std::max(peak, m);
      CHECK(out.trace.occupancy_peak == peak);
    }
  }
  CHECK(successes > 0);
  CHECK(failures > 0);
}

TEST_CASE("child choices stay inside the candidate set") {
  const Graph g = gnp_graph({60, 0.3, 2});
  const NeighborCap cap = make_random_neighbor_cap(g, 5, 3);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const RootedTree t = random_tree(20, 4, s);
    const auto out = run(g, t, Variant::A2, s, &cap);
    for (TreeVertex y : out.trace.placement_order) {
      const TreeVertex py = t.parent(y);
      if (py == kNoParent) continue;
      auto sel = cap.selected(out.embedding.assignment[py]);
      CHECK(std::binary_search(sel.begin(), sel.end(), out.embedding.assignment[y]));
    }
  }
}

TEST_CASE("prefix monotonicity of failure") {
  const Graph g = projective_plane_graph(3);
  std::size_t checked = 0;
  for (std::uint64_t s = 0; s < 500 && checked < 50; ++s) {
    const RootedTree t = random_tree(24, 4, s);
    const auto out = run(g, t, Variant::A1, s);
    if (out.success()) continue;
    ++checked;
    const std::size_t placed = out.trace.placement_order.size();
    // placement follows BFS order, and failure happens before any child of u lands
    for (std::size_t i = 0; i < placed; ++i) CHECK(out.trace.placement_order[i] == t.order()[i]);
    const RootedTree prefix = t.bfs_prefix(placed);
    const auto again = run(g, prefix, Variant::A1, s);
    REQUIRE(again.success());
    for (std::size_t i = 0; i < placed; ++i)
      CHECK(again.embedding.assignment[i] == out.embedding.assignment[t.order()[i]]);
  }
  CHECK(checked >= 10);
}

TEST_CASE("warmup walks") {
  const Graph g = projective_plane_graph(5);
  const NeighborCap cap = make_random_neighbor_cap(g, 3, 5);
  const RootedTree t = random_tree(10, 3, 1);
  for (std::uint64_t s = 0; s < 100; ++s) {
    SUBCASE("A3 moves inside the cap") {
      const auto out = run(g, t, Variant::A3, s, &cap, 6);
      const auto& w = out.trace.walk_prefix;
      REQUIRE(w.size() == 7);
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        auto sel = cap.selected(w[i]);
        CHECK(std::binary_search(sel.begin(), sel.end(), w[i + 1]));
      }
      CHECK(out.embedding.assignment[t.root()] == w.back());
      CHECK(out.trace.available_choices.front() == 1);
    }
    SUBCASE("A4 moves in G") {
      const auto out = run(g, t, Variant::A4, s, nullptr, 4);
      const auto& w = out.trace.walk_prefix;
      REQUIRE(w.size() == 5);
      for (std::size_t i = 0; i + 1 < w.size(); ++i) CHECK(g.has_edge(w[i], w[i + 1]));
      CHECK(out.embedding.assignment[t.root()] == w.back());
    }
    SUBCASE("zero moves") {
      EmbedParams p;
      p.variant = Variant::A4;
      p.seed = s;
      p.start_vertex = 7;
      p.record_trace = true;
      const auto out = embed(g, t, p);
      CHECK(out.trace.walk_prefix == std::vector<Vertex>{7});
      CHECK(out.embedding.assignment[t.root()] == 7);
    }
  }
}

TEST_CASE("warmup endpoint after two moves in the Heawood graph") {
  // From a point, two uniform moves land on the start with probability 1/3,
  // and on each of the 6 other points with probability 1/9.
  const Graph g = projective_plane_graph(2);
  const RootedTree t = path_tree(1);
  std::map<Vertex, int> hits;
  constexpr int runs = 90000;
  for (int s = 0; s < runs; ++s) {
    EmbedParams p;
    p.variant = Variant::A4;
    p.warmup_k = 2;
    p.start_vertex = 0;
    p.seed = static_cast<std::uint64_t>(s);
    ++hits[embed(g, t, p).embedding.assignment[0]];
  }
  CHECK(hits.size() == 7);
  for (auto [v, c] : hits) {
    CHECK(v < 7);
    const double expect = v == 0 ? 1.0 / 3 : 1.0 / 9;
    CHECK(std::abs(c / static_cast<double>(runs) - expect) <= 0.01);
  }
}

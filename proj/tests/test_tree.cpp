#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "treeembed/tree.hpp"

using namespace treeembed;

TEST_CASE("from_parents validation") {
  CHECK_NOTHROW(RootedTree::from_parents({kNoParent}));
  CHECK_THROWS_AS(RootedTree::from_parents({}), std::invalid_argument);
  CHECK_THROWS_AS(RootedTree::from_parents({kNoParent, kNoParent}), std::invalid_argument);
  CHECK_THROWS_AS(RootedTree::from_parents({1, 2, 0}), std::invalid_argument);       // no root
  CHECK_THROWS_AS(RootedTree::from_parents({kNoParent, 2, 1}), std::invalid_argument);  // detached cycle
  CHECK_THROWS_AS(RootedTree::from_parents({kNoParent, 7}), std::invalid_argument);
}

TEST_CASE("order is BFS with sorted children") {
  const RootedTree t = RootedTree::from_parents({kNoParent, 0, 0, 1, 2, 1});
  const std::vector<TreeVertex> expected{0, 1, 2, 3, 5, 4};
  CHECK(std::vector<TreeVertex>(t.order().begin(), t.order().end()) == expected);
  CHECK(t.depth(5) == 2);
  CHECK(t.height() == 2);
  CHECK(t.degree(0) == 2);
  CHECK(t.degree(1) == 3);
  CHECK(t.max_degree() == 3);
}

TEST_CASE("random_tree respects size and degree") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (std::size_t dmax : {2u, 3u, 5u, 40u}) {
      const RootedTree t = random_tree(300, dmax, seed);
      CHECK(t.vertex_count() == 300);
      CHECK(t.max_degree() <= dmax);
      CHECK(t.root() == 0);
    }
  }
  CHECK(random_tree(1, 0, 0).vertex_count() == 1);
  CHECK(random_tree(2, 1, 0).vertex_count() == 2);
  CHECK_THROWS(random_tree(3, 1, 0));
  CHECK(random_tree(500, 7, 4) == random_tree(500, 7, 4));
}

TEST_CASE("random_prufer_tree respects degree") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const RootedTree t = random_prufer_tree(40, 4, seed);
    CHECK(t.vertex_count() == 40);
    CHECK(t.max_degree() <= 4);
  }
  CHECK(random_prufer_tree(2, 1, 0).vertex_count() == 2);
}

TEST_CASE("random_prufer_tree is uniform over labeled trees on 4 vertices") {
  // 16 labeled trees; count each parent array.
  std::map<std::vector<TreeVertex>, int> seen;
  constexpr int runs = 32000;
  for (int s = 0; s < runs; ++s) {
    const RootedTree t = random_prufer_tree(4, 3, static_cast<std::uint64_t>(s));
    ++seen[std::vector<TreeVertex>(t.parents().begin(), t.parents().end())];
  }
  CHECK(seen.size() == 16);
  const double expect = runs / 16.0;
  for (const auto& [_, c] : seen) CHECK(std::abs(c - expect) <= 4.5 * std::sqrt(expect));
}

TEST_CASE("path and star") {
  const RootedTree p = path_tree(5);
  CHECK(p.height() == 4);
  CHECK(p.max_degree() == 2);
  const RootedTree s = star_tree(6);
  CHECK(s.vertex_count() == 7);
  CHECK(s.max_degree() == 6);
  CHECK(s.height() == 1);
}

TEST_CASE("adversarial tree d=100 eps=0.2") {
  const AdversarialTree a = adversarial_tree(100, 0.2);
  const RootedTree& t = a.tree;
  CHECK(t.vertex_count() == 1871);
  CHECK(t.child_count(t.root()) == 10);
  std::size_t level2 = 0;
  for (TreeVertex u = 0; u < t.vertex_count(); ++u) {
    if (t.depth(u) == 1) CHECK(t.child_count(u) == 9);
    if (t.depth(u) == 2) {
      ++level2;
      CHECK(t.child_count(u) == (u == a.special ? 79u : 19u));
    }
    CHECK(t.depth(u) <= 3);
  }
  CHECK(level2 == 90);
  CHECK(t.depth(a.special) == 2);
  CHECK(t.max_degree() == 80);
  // labels follow BFS order and z is the last level-2 vertex
  for (std::size_t i = 0; i < t.vertex_count(); ++i) CHECK(t.order()[i] == i);
  for (TreeVertex u = a.special + 1; u < t.vertex_count(); ++u) CHECK(t.depth(u) == 3);
}

TEST_CASE("adversarial tree preconditions") {
  CHECK_THROWS(adversarial_tree(15, 0.2));
  CHECK_THROWS(adversarial_tree(100, 0.5));
  CHECK_THROWS(adversarial_tree(100, 0.0));
  CHECK_THROWS(adversarial_tree(20, 0.05));
  CHECK_NOTHROW(adversarial_tree_relaxed(100, 0.0));
  const AdversarialTree r = adversarial_tree_relaxed(100, 0.0);
  CHECK(r.tree.child_count(r.special) == 99);
}

TEST_CASE("bfs_prefix") {
  const RootedTree t = random_tree(200, 4, 12);
  for (std::size_t m : {1u, 2u, 17u, 200u}) {
    const RootedTree p = t.bfs_prefix(m);
    CHECK(p.vertex_count() == m);
    for (std::size_t i = 0; i < m; ++i) CHECK(p.order()[i] == i);
    // position i in p corresponds to order()[i] in t
    for (std::size_t i = 1; i < m; ++i) {
      const TreeVertex orig_parent = t.parent(t.order()[i]);
      CHECK(t.order()[p.parent(static_cast<TreeVertex>(i))] == orig_parent);
    }
  }
  CHECK_THROWS(t.bfs_prefix(0));
  CHECK_THROWS(t.bfs_prefix(201));
}

TEST_CASE("descendants_at_depth matches naive walk") {
  const RootedTree t = random_tree(400, 5, 8);
  for (TreeVertex x = 0; x < t.vertex_count(); x += 7)
    for (std::size_t dd = 0; dd <= 3; ++dd) {
      const auto got = descendants_at_depth(t, x, dd);
      const std::set<TreeVertex> as_set(got.begin(), got.end());
      CHECK(as_set.size() == got.size());
      CHECK(as_set == oracle::subtree_level(t, x, dd));
    }
}

TEST_CASE("level_partition") {
  const RootedTree t = path_tree(7);
  const auto w = level_partition(t, 3);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == std::vector<TreeVertex>{0, 3, 6});
  CHECK(w[1] == std::vector<TreeVertex>{1, 4});
  CHECK(w[2] == std::vector<TreeVertex>{2, 5});
  const RootedTree r = random_tree(300, 6, 1);
  const auto blocks = level_partition(r, 4);
  std::size_t total = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    total += blocks[i].size();
    for (TreeVertex u : blocks[i]) CHECK(r.depth(u) % 4 == i);
  }
  CHECK(total == 300);
}

TEST_CASE("tree I/O round trip") {
  const RootedTree t = random_tree(150, 5, 21);
  std::ostringstream a;
  write_tree(a, t);
  std::istringstream in(a.str());
  const RootedTree back = read_tree(in);
  CHECK(back == t);
  std::ostringstream b;
  write_tree(b, back);
  CHECK(b.str() == a.str());

  std::istringstream bad("3 0\n1 0\n");
  CHECK_THROWS(read_tree(bad));
}

TEST_CASE("floor_tolerant") {
  CHECK(floor_tolerant(0.2 * 100) == 20);
  CHECK(floor_tolerant((1 - 0.2) * 100) == 80);
  CHECK(floor_tolerant(2.999) == 2);
}

#include "treeembed/tree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <utility>

#include "treeembed/random.hpp"

namespace treeembed {

std::size_t floor_tolerant(double x) {
  if (x <= 0.0) return 0;
  return static_cast<std::size_t>(std::floor(x + 1e-9));
}

RootedTree RootedTree::from_parents(std::vector<TreeVertex> parent) {
  const std::size_t n = parent.size();
  if (n == 0) throw std::invalid_argument("tree must have at least one vertex");

  RootedTree t;
  std::size_t roots = 0;
  std::vector<std::size_t> child_count(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    if (parent[u] == kNoParent) {
      ++roots;
      t.root_ = static_cast<TreeVertex>(u);
    } else if (parent[u] >= n || parent[u] == u) {
      throw std::invalid_argument("invalid parent for tree vertex " + std::to_string(u));
    } else {
      ++child_count[parent[u]];
    }
  }
  if (roots != 1) throw std::invalid_argument("tree must have exactly one root");

  t.child_offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) t.child_offsets_[u + 1] = t.child_offsets_[u] + child_count[u];
  t.children_.resize(n - 1);
  std::vector<std::size_t> cursor(t.child_offsets_.begin(), t.child_offsets_.end() - 1);
  for (std::size_t u = 0; u < n; ++u)
    if (parent[u] != kNoParent) t.children_[cursor[parent[u]]++] = static_cast<TreeVertex>(u);

  t.depth_.assign(n, 0);
  t.order_.reserve(n);
  t.order_.push_back(t.root_);
  for (std::size_t head = 0; head < t.order_.size(); ++head) {
    const TreeVertex u = t.order_[head];
    for (std::size_t i = t.child_offsets_[u]; i < t.child_offsets_[u + 1]; ++i) {
      const TreeVertex c = t.children_[i];
      t.depth_[c] = t.depth_[u] + 1;
      t.order_.push_back(c);
    }
  }
  if (t.order_.size() != n) throw std::invalid_argument("parent array contains a cycle");

  t.parent_ = std::move(parent);
  for (std::size_t u = 0; u < n; ++u)
    t.max_degree_ = std::max(t.max_degree_, t.degree(static_cast<TreeVertex>(u)));
  return t;
}

std::size_t RootedTree::height() const noexcept {
  return order_.empty() ? 0 : depth_[order_.back()];
}

RootedTree RootedTree::bfs_prefix(std::size_t count) const {
  if (count == 0 || count > vertex_count()) throw std::invalid_argument("bfs_prefix: count out of range");
  std::vector<TreeVertex> position(vertex_count(), kNoParent);
  for (std::size_t i = 0; i < count; ++i) position[order_[i]] = static_cast<TreeVertex>(i);
  std::vector<TreeVertex> parent(count, kNoParent);
  for (std::size_t i = 1; i < count; ++i) parent[i] = position[parent_[order_[i]]];
  return from_parents(std::move(parent));
}

RootedTree random_tree(std::size_t n, std::size_t max_deg, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_tree requires n >= 1");
  if ((n >= 3 && max_deg < 2) || (n == 2 && max_deg < 1))
    throw std::invalid_argument("random_tree: no tree on " + std::to_string(n) + " vertices has maximum degree " +
                                std::to_string(max_deg));
  Rng rng(seed);
  std::vector<TreeVertex> parent(n, kNoParent);
  // Vertices with spare degree capacity; swap-removal keeps this O(1).
  std::vector<TreeVertex> open{0};
  std::vector<std::size_t> capacity(n, 0);
  capacity[0] = max_deg;
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t slot = rng.below(open.size());
    const TreeVertex p = open[slot];
    parent[v] = p;
    if (--capacity[p] == 0) {
      open[slot] = open.back();
      open.pop_back();
    }
    capacity[v] = max_deg - 1;
    if (capacity[v] > 0) open.push_back(static_cast<TreeVertex>(v));
  }
  return RootedTree::from_parents(std::move(parent));
}

namespace {

RootedTree orient_from_zero(std::size_t n, const std::vector<std::pair<TreeVertex, TreeVertex>>& edges) {
  std::vector<std::vector<TreeVertex>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<TreeVertex> parent(n, kNoParent);
  std::vector<char> seen(n, 0);
  std::vector<TreeVertex> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (TreeVertex w : adj[queue[head]]) {
      if (seen[w]) continue;
      seen[w] = 1;
      parent[w] = queue[head];
      queue.push_back(w);
    }
  }
  return RootedTree::from_parents(std::move(parent));
}

}  // namespace

RootedTree random_prufer_tree(std::size_t n, std::size_t max_deg, std::uint64_t seed, std::size_t max_attempts) {
  if (n <= 2) return random_tree(n, max_deg, seed);
  if (max_deg < 2) throw std::invalid_argument("random_prufer_tree: max_deg must be >= 2");
  Rng rng(seed);
  std::vector<TreeVertex> code(n - 2);
  std::vector<std::size_t> degree(n);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::fill(degree.begin(), degree.end(), 1);
    for (auto& c : code) {
      c = static_cast<TreeVertex>(rng.below(n));
      ++degree[c];
    }
    if (*std::max_element(degree.begin(), degree.end()) > max_deg) continue;

    std::priority_queue<TreeVertex, std::vector<TreeVertex>, std::greater<>> leaves;
    for (std::size_t v = 0; v < n; ++v)
      if (degree[v] == 1) leaves.push(static_cast<TreeVertex>(v));
    std::vector<std::pair<TreeVertex, TreeVertex>> edges;
    edges.reserve(n - 1);
    for (TreeVertex c : code) {
      const TreeVertex leaf = leaves.top();
      leaves.pop();
      edges.emplace_back(leaf, c);
      if (--degree[c] == 1) leaves.push(c);
    }
    const TreeVertex a = leaves.top();
    leaves.pop();
    edges.emplace_back(a, leaves.top());
    return orient_from_zero(n, edges);
  }
  throw std::runtime_error("random_prufer_tree: degree cap rejected every sample");
}

RootedTree path_tree(std::size_t n) {
  if (n == 0) throw std::invalid_argument("path_tree requires n >= 1");
  std::vector<TreeVertex> parent(n, kNoParent);
  for (std::size_t v = 1; v < n; ++v) parent[v] = static_cast<TreeVertex>(v - 1);
  return RootedTree::from_parents(std::move(parent));
}

RootedTree star_tree(std::size_t leaves) {
  std::vector<TreeVertex> parent(leaves + 1, 0);
  parent[0] = kNoParent;
  return RootedTree::from_parents(std::move(parent));
}

AdversarialTree adversarial_tree_relaxed(std::size_t d, double eps) {
  const std::size_t s = floor_tolerant(std::sqrt(static_cast<double>(d)));
  if (s < 2) throw std::invalid_argument("adversarial_tree: floor(sqrt(d)) must be >= 2");
  if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("adversarial_tree: eps out of range");
  const std::size_t regular = floor_tolerant(eps * static_cast<double>(d));
  const std::size_t special = floor_tolerant((1.0 - eps) * static_cast<double>(d));
  const std::size_t regular_children = regular > 0 ? regular - 1 : 0;
  const std::size_t special_children = special > 0 ? special - 1 : 0;

  std::vector<TreeVertex> parent{kNoParent};
  for (std::size_t i = 0; i < s; ++i) parent.push_back(0);
  std::vector<TreeVertex> level2;
  for (TreeVertex l1 = 1; l1 <= s; ++l1) {
    for (std::size_t i = 0; i + 1 < s; ++i) {
      level2.push_back(static_cast<TreeVertex>(parent.size()));
      parent.push_back(l1);
    }
  }
  const TreeVertex z = level2.back();
  for (TreeVertex x : level2) {
    const std::size_t count = x == z ? special_children : regular_children;
    for (std::size_t i = 0; i < count; ++i) parent.push_back(x);
  }
  return {RootedTree::from_parents(std::move(parent)), z};
}

AdversarialTree adversarial_tree(std::size_t d, double eps) {
  if (d < 16) throw std::invalid_argument("adversarial_tree requires d >= 16");
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("adversarial_tree requires 0 < eps < 1/2");
  if (floor_tolerant(eps * static_cast<double>(d)) < 2)
    throw std::invalid_argument("adversarial_tree requires floor(eps*d) >= 2");
  return adversarial_tree_relaxed(d, eps);
}

std::vector<TreeVertex> descendants_at_depth(const RootedTree& t, TreeVertex x, std::size_t depth) {
  if (x >= t.vertex_count()) throw std::invalid_argument("descendants_at_depth: vertex out of range");
  std::vector<TreeVertex> level{x};
  std::vector<TreeVertex> next;
  for (std::size_t j = 0; j < depth && !level.empty(); ++j) {
    next.clear();
    for (TreeVertex u : level)
      for (TreeVertex c : t.children(u)) next.push_back(c);
    level.swap(next);
  }
  return level;
}

std::vector<std::vector<TreeVertex>> level_partition(const RootedTree& t, std::size_t k) {
  if (k == 0) throw std::invalid_argument("level_partition requires k >= 1");
  std::vector<std::vector<TreeVertex>> blocks(k);
  for (TreeVertex u : t.order()) blocks[(t.depth(u) + k) % k].push_back(u);
  return blocks;
}

RootedTree read_tree(std::istream& in) {
  std::size_t n = 0;
  long long root = 0;
  if (!(in >> n >> root)) throw std::runtime_error("tree file: missing \"n root\" header");
  if (n == 0 || root < 0 || static_cast<std::size_t>(root) >= n) throw std::runtime_error("tree file: bad header");
  std::vector<TreeVertex> parent(n, kNoParent);
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    long long child = 0, par = 0;
    if (!(in >> child >> par)) throw std::runtime_error("tree file: expected " + std::to_string(n - 1) + " edges");
    if (child < 0 || par < 0 || static_cast<std::size_t>(child) >= n || static_cast<std::size_t>(par) >= n)
      throw std::runtime_error("tree file: vertex out of range");
    if (child == root || seen[child]) throw std::runtime_error("tree file: vertex " + std::to_string(child) + " has two parents");
    seen[child] = 1;
    parent[child] = static_cast<TreeVertex>(par);
  }
  std::string trailing;
  if (in >> trailing) throw std::runtime_error("tree file: trailing data");
  return RootedTree::from_parents(std::move(parent));
}

void write_tree(std::ostream& out, const RootedTree& t) {
  out << t.vertex_count() << ' ' << t.root() << '\n';
  for (TreeVertex u = 0; u < t.vertex_count(); ++u)
    if (u != t.root()) out << u << ' ' << t.parent(u) << '\n';
}

RootedTree load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_tree(in);
}

void save_tree(const std::string& path, const RootedTree& t) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_tree(out, t);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace treeembed

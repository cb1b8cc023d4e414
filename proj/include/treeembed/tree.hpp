#ifndef TREEEMBED_TREE_HPP
#define TREEEMBED_TREE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace treeembed {

using TreeVertex = std::uint32_t;
inline constexpr TreeVertex kNoParent = std::numeric_limits<TreeVertex>::max();

/// Rooted tree pattern. Size |T| is the vertex count throughout this library.
///
/// Children lists are sorted by label; `order()` is the BFS order obtained by
/// visiting children in that sequence, so every vertex comes after its parent.
class RootedTree {
 public:
  RootedTree() = default;

  /// parent[root] == kNoParent for exactly one vertex. Throws
  /// std::invalid_argument if the array does not describe a tree.
  static RootedTree from_parents(std::vector<TreeVertex> parent);

  std::size_t vertex_count() const noexcept { return parent_.size(); }
  std::size_t edge_count() const noexcept { return parent_.empty() ? 0 : parent_.size() - 1; }
  TreeVertex root() const noexcept { return root_; }
  TreeVertex parent(TreeVertex u) const noexcept { return parent_[u]; }
  std::span<const TreeVertex> parents() const noexcept { return parent_; }
  std::span<const TreeVertex> children(TreeVertex u) const noexcept {
    return {children_.data() + child_offsets_[u], children_.data() + child_offsets_[u + 1]};
  }
  std::size_t child_count(TreeVertex u) const noexcept { return child_offsets_[u + 1] - child_offsets_[u]; }
  /// Undirected degree: children, plus one for the parent edge.
  std::size_t degree(TreeVertex u) const noexcept { return child_count(u) + (u == root_ ? 0 : 1); }
  std::size_t max_degree() const noexcept { return max_degree_; }
  std::size_t depth(TreeVertex u) const noexcept { return depth_[u]; }
  std::size_t height() const noexcept;
  std::span<const TreeVertex> order() const noexcept { return order_; }

  /// Subtree induced by the first `count` vertices of order(), relabeled by
  /// BFS position. Processing order and child order are preserved.
  RootedTree bfs_prefix(std::size_t count) const;

  friend bool operator==(const RootedTree& a, const RootedTree& b) { return a.parent_ == b.parent_; }

 private:
  std::vector<TreeVertex> parent_;
  TreeVertex root_ = 0;
  std::vector<std::size_t> child_offsets_;
  std::vector<TreeVertex> children_;
  std::vector<TreeVertex> order_;
  std::vector<std::size_t> depth_;
  std::size_t max_degree_ = 0;
};

/// Uniform attachment with a degree cap: vertex i (i >= 1) attaches to a
/// parent drawn uniformly among earlier vertices whose degree is below
/// max_deg. Root is vertex 0.
RootedTree random_tree(std::size_t n, std::size_t max_deg, std::uint64_t seed);

/// Uniform labeled tree via a random Prüfer sequence, rejected until its
/// maximum degree is at most max_deg. Root is vertex 0. Intended for small n;
/// throws std::runtime_error after `max_attempts` rejections.
RootedTree random_prufer_tree(std::size_t n, std::size_t max_deg, std::uint64_t seed,
                              std::size_t max_attempts = 100000);

/// Path on n vertices rooted at an endpoint (vertex 0).
RootedTree path_tree(std::size_t n);
/// Star with `leaves` leaves rooted at the center (vertex 0).
RootedTree star_tree(std::size_t leaves);

/// Depth-3 tree that starves the last level-2 vertex of candidates.
///
/// With s = floor(sqrt(d)): root has s children, each level-1 vertex s-1
/// children, each level-2 vertex floor(eps*d)-1 leaf children except the
/// special vertex z, which is the last level-2 vertex in BFS order and has
/// floor((1-eps)*d)-1 children. Labels follow BFS order.
struct AdversarialTree {
  RootedTree tree;
  TreeVertex special = 0;
};
/// Requires d >= 16, 0 < eps < 1/2 and floor(eps*d) >= 2.
AdversarialTree adversarial_tree(std::size_t d, double eps);
/// Same shape without the range checks on eps; allows eps == 0 (level-2
/// vertices other than z become leaves). Used by the depletion probe.
AdversarialTree adversarial_tree_relaxed(std::size_t d, double eps);

/// L_depth(x): vertices exactly `depth` levels below x in x's subtree.
std::vector<TreeVertex> descendants_at_depth(const RootedTree& t, TreeVertex x, std::size_t depth);

/// W_0 .. W_{k-1}: vertex u goes to block (depth(u) + k) mod k, i.e. levels
/// grouped by residue as if a k-path were attached above the root.
std::vector<std::vector<TreeVertex>> level_partition(const RootedTree& t, std::size_t k);

// Tree file format:
//   n root
//   child parent   (n-1 lines, sorted by child)
RootedTree read_tree(std::istream& in);
void write_tree(std::ostream& out, const RootedTree& t);
RootedTree load_tree(const std::string& path);
void save_tree(const std::string& path, const RootedTree& t);

/// floor(x) that tolerates representation error just below an integer,
/// e.g. 0.2 * 100 or (1 - 0.2) * 100.
std::size_t floor_tolerant(double x);

}  // namespace treeembed

#endif  // TREEEMBED_TREE_HPP
